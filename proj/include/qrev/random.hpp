#pragma once

#include <cstdint>
#include <random>

#include "qrev/qmat.hpp"

namespace qrev {

/// Seedable, portable generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; uniform and normal variates are derived
/// here rather than through <random> distributions, which are
/// implementation-defined. The same seed therefore yields the same stream on
/// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Standard normal via Box-Muller (the second variate is discarded).
    double normal();
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

/// Uniformly (Haar) distributed unit vector.
StateVector random_state(std::size_t dim, Rng& rng);
/// Haar-random unitary via QR of a complex Ginibre matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// Matrix with independent complex Gaussian entries.
ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Random full-rank density matrix (normalized Wishart).
ComplexMatrix random_density(std::size_t dim, Rng& rng);

}  // namespace qrev
