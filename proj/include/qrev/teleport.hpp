#pragma once

// Teleportation schemes of the Bennett type.
//
// Three d-dimensional systems: Alice holds the input (system 1) and one half
// of the resource (system 2); Bob holds system 3. Composite kets use the
// product basis |x1>|x2>|x3> at index (x1 * d + x2) * d + x3. Systems 1 and
// 3 are identified through their computational bases, so "the same state"
// on 1 and 3 has identical coordinates.
//
// Alice measures 1 (x) 2 with operators sqrt(gamma_i) |P_i><P_i|. The state
// left on 3 after outcome i is A_i rho A_i^dagger with
//     A_i = sqrt(gamma_i) <P_i|_{12} U_13 |s~>_{12},
// where U_13 swaps systems 1 and 3 and |s~> is the resource moved onto
// systems 1,2. Bob can undo A_i with a unitary iff A_i^dagger A_i is a
// multiple of the identity.

#include <cstdint>
#include <string>
#include <vector>

#include "qrev/channels.hpp"
#include "qrev/qmat.hpp"

namespace qrev::teleport {

struct WeightedVector {
    double gamma = 1.0;
    StateVector vector;
};

class TeleportationScheme {
public:
    /// Validates dimensions, 0 < gamma <= 1 and sum_i gamma_i |P_i><P_i| = I
    /// within 1e-8. Throws Error(Shape/Parameter/Domain).
    TeleportationScheme(std::size_t d, StateVector resource, std::vector<WeightedVector> measurement);

    std::size_t d() const noexcept { return d_; }
    /// |s> on systems 2 (x) 3.
    const StateVector& resource() const noexcept { return resource_; }
    /// |P_i> on systems 1 (x) 2.
    const std::vector<WeightedVector>& measurement() const noexcept { return measurement_; }
    std::size_t outcomes() const noexcept { return measurement_.size(); }

    /// Max-norm deviation of sum_i gamma_i |P_i><P_i| from the identity.
    double completeness_residual() const;

private:
    std::size_t d_;
    StateVector resource_;
    std::vector<WeightedVector> measurement_;
};

struct Violation {
    /// "pr-spread", "resource-schmidt", "measurement-schmidt",
    /// "probability-law" or "bab".
    std::string kind;
    /// Outcome index, or -1 for properties of the resource.
    long outcome = -1;
    double value = 0.0;
};

struct SchemeVerdict {
    bool valid = false;
    /// p_i; when invalid, the average tr(A_i^dagger A_i) / d.
    std::vector<double> probabilities;
    /// U_i in outcome order; empty unless valid.
    std::vector<ComplexMatrix> corrections;
    std::vector<Violation> violations;
};

struct Characterization {
    bool valid = false;
    std::vector<double> resourceSchmidt;
    std::vector<std::vector<double>> measurementSchmidt;
    /// p_i / gamma_i read off B_i A^2 B_i^dagger.
    std::vector<double> ratios;
    std::vector<double> babResiduals;
    /// 1 / tr(A^-2); zero when the resource has a zero Schmidt coefficient.
    double k = 0.0;
    std::vector<Violation> violations;
};

/// d^3 x d^3 permutation with U|a>|b>|c> = |c>|b>|a>.
ComplexMatrix swap_operator(std::size_t d);

/// Moves a vector on 2 (x) 3 onto 1 (x) 2: sum a_bc |b>|c> -> sum a_bc |c>|b>.
ComplexVector to_alice_side(const ComplexVector& v23, std::size_t d);

/// A_i on system 3. Throws Error(Index) for an out-of-range outcome.
IdealOperation induced_ideal_operation(const TeleportationScheme& s, std::size_t outcome);

/// Operation induced on system 3 by a mixed resource on 2 (x) 3 and a general
/// measurement outcome on 1 (x) 2. Built from the eigen-decomposition of the
/// resource and the computational basis of 1 (x) 2, then reduced to a minimal
/// Kraus set through its Choi matrix.
QuantumOperation induced_general_operation(const DensityMatrix& resource,
                                           const QuantumOperation& measurementOutcome);

/// Per-outcome check that A_i^dagger A_i is a multiple of I. Outcomes are
/// independent and are evaluated concurrently; results are merged in
/// outcome order.
SchemeVerdict verify_scheme(const TeleportationScheme& s, double tol = 1e-8);

/// Schmidt spectra of the resource and every measurement vector, the
/// probability law p_i = gamma_i / d^2 and the B_i A^2 B_i^dagger test.
Characterization characterize_scheme(const TeleportationScheme& s, double tol = 1e-8);

/// d = 2, resource (|01> + |10>)/sqrt2, Bell measurement
/// (phi+, phi-, psi+, psi-) with gamma = 1.
TeleportationScheme build_bell_scheme();

/// Resource sum_j |j>|j> / sqrt d and generalized Bell vectors
/// sum_j w^{aj} |j+b>|j> / sqrt d, w = exp(2 pi i / d), ordered
/// lexicographically in (a, b).
TeleportationScheme build_general_scheme(std::size_t d);

/// n > d^2 maximally entangled vectors, rotated by a random unitary on
/// system 1. For d = 2 the vectors come from a harmonic frame of unit
/// quaternions and all share gamma = 4 / n. For d > 2 each block
/// span{|j+b>|j>} carries k_b >= d flat vectors
/// sum_j exp(2 pi i m j / k_b + i phi_j) |j+b>|j> / sqrt d with weight
/// d / k_b, so gamma_i < 1 for every i once n >= d(d + 1).
TeleportationScheme build_overcomplete_scheme(std::size_t d, std::size_t n, std::uint64_t seed);

/// Unnormalized state of system 3 after outcome i, computed by simulating all
/// three systems: tr_12[(Pi_i (x) I) (rho (x) sigma) (Pi_i (x) I)] * gamma_i.
ComplexMatrix simulate_outcome(const TeleportationScheme& s, std::size_t outcome, const ComplexMatrix& rho);

}  // namespace qrev::teleport
