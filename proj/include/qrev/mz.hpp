#pragma once

// Mabuchi-Zoller three-outcome measurement on two truncated bosonic modes a
// and b. Joint Fock states are ordered row-major, |n_a> (x) |n_b> at index
// n_a * (cutoff + 1) + n_b.

#include <cstdint>
#include <string>
#include <vector>

#include "qrev/channels.hpp"
#include "qrev/reversal.hpp"

namespace qrev::mz {

struct Params {
    double delta = 0.1;
    std::size_t cutoff = 2;
    /// Dimensionless Hamiltonian on the joint space; empty means zero.
    ComplexMatrix hamiltonian;

    /// Checks 0 < delta, delta * 2 * cutoff <= 1 and a Hermitian
    /// Hamiltonian of the joint dimension. Throws Error(Parameter).
    void validate() const;
    std::size_t joint_dim() const noexcept { return (cutoff + 1) * (cutoff + 1); }
    std::size_t index(std::size_t na, std::size_t nb) const noexcept { return na * (cutoff + 1) + nb; }
};

/// a|n> = sqrt(n)|n-1> on the Fock states 0..cutoff.
ComplexMatrix annihilation_matrix(std::size_t cutoff);

/// Outcomes "1", "2", "3":
///   A1 = sqrt(delta/2)(a + b)
///   A2 = sqrt(delta/2)(a - b)
///   A3 = exp(-i h delta) sqrt(I - delta(a^dagger a + b^dagger b))
/// The square-root form of A3 keeps the set exactly complete.
Measurement build_measurement(const Params& p);

/// span{|2,0>, |0,2>} in that order. Throws Error(Parameter) if cutoff < 2.
Subspace reversible_subspace(const Params& p);

struct DemoReport {
    std::string outcome;
    std::size_t outcomeIndex = 0;
    std::vector<double> probabilities;
    double fidelityBeforeReversal = 0.0;
    double fidelityAfterReversal = 0.0;
    ComplexMatrix reversingUnitary;
};

/// Measures alpha|2,0> + beta|0,2> with a sampled outcome, then undoes the
/// state change with the certified reversing unitary for that outcome.
DemoReport demo_reverse(const Params& p, Complex alpha, Complex beta, std::uint64_t seed);

/// Same as demo_reverse with the outcome fixed instead of sampled.
DemoReport demo_reverse_outcome(const Params& p, Complex alpha, Complex beta, std::size_t outcomeIndex);

}  // namespace qrev::mz
