#pragma once

// Quantum operations in Kraus form, generalized measurements and POVMs.

#include <cstdint>
#include <string>
#include <vector>

#include "qrev/qmat.hpp"
#include "qrev/random.hpp"

namespace qrev {

/// Outcomes whose weight is at or below this are treated as impossible.
inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kCompletenessTol = 1e-8;

/// Positive, unit-trace operator.
class DensityMatrix {
public:
    /// Validates Hermiticity (1e-9), positivity (eigenvalues >= -1e-10) and
    /// unit trace (1e-10). Throws Error(Shape/Domain/NotPsd).
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix pure(const StateVector& psi);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return m_; }

private:
    ComplexMatrix m_;
};

/// E(rho) = sum_j A_j rho A_j^dagger with sum_j A_j^dagger A_j <= I.
class QuantumOperation {
public:
    explicit QuantumOperation(std::vector<ComplexMatrix> kraus);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(kraus_.front().rows()); }
    const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

private:
    std::vector<ComplexMatrix> kraus_;
};

/// Single-Kraus operation E(rho) = A rho A^dagger.
class IdealOperation {
public:
    explicit IdealOperation(ComplexMatrix a);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(a_.rows()); }
    const ComplexMatrix& op() const noexcept { return a_; }
    QuantumOperation as_operation() const { return QuantumOperation({a_}); }

private:
    ComplexMatrix a_;
};

struct MeasurementOutcome {
    std::string label;
    QuantumOperation op;
};

/// Collection of outcomes satisfying sum_ij A_ij^dagger A_ij = I (1e-8).
class Measurement {
public:
    explicit Measurement(std::vector<MeasurementOutcome> outcomes);

    std::size_t dim() const noexcept { return outcomes_.front().op.dim(); }
    std::size_t size() const noexcept { return outcomes_.size(); }
    const std::vector<MeasurementOutcome>& outcomes() const noexcept { return outcomes_; }
    const MeasurementOutcome& operator[](std::size_t i) const { return outcomes_.at(i); }

private:
    std::vector<MeasurementOutcome> outcomes_;
};

/// Hermitian PSD operator with E <= I.
class PovmElement {
public:
    explicit PovmElement(ComplexMatrix e);
    const ComplexMatrix& matrix() const noexcept { return e_; }

private:
    ComplexMatrix e_;
};

struct AppliedOperation {
    ComplexMatrix unnormalized;
    double weight = 0.0;
};

AppliedOperation apply(const QuantumOperation& op, const DensityMatrix& rho);

/// E(rho) / tr E(rho). Throws Error(ZeroProbability) when the weight is at
/// or below kZeroProbability.
DensityMatrix apply_normalized(const QuantumOperation& op, const DensityMatrix& rho);

bool is_deterministic(const QuantumOperation& op);

/// sum_kl |k><l| (x) E(|k><l|)
ComplexMatrix choi_matrix(const QuantumOperation& op);
bool is_completely_positive(const QuantumOperation& op);
/// Checks an externally supplied Choi matrix for positivity within 1e-8.
bool is_completely_positive_choi(const ComplexMatrix& choi);

PovmElement povm_element(const QuantumOperation& op);

std::vector<double> outcome_probabilities(const Measurement& m, const DensityMatrix& rho);

struct SampledOutcome {
    std::size_t index = 0;
    std::string label;
    DensityMatrix posterior;
};

/// Draws one outcome with the given generator. Outcomes with probability
/// below kZeroProbability are never selected; throws
/// Error(DegenerateMeasurement) when every outcome is that small.
SampledOutcome sample_outcome(const Measurement& m, const DensityMatrix& rho, Rng& rng);
SampledOutcome sample_outcome(const Measurement& m, const DensityMatrix& rho, std::uint64_t seed);

/// <psi| rho |psi>
double fidelity(const StateVector& psi, const ComplexMatrix& rho);
/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Eigenvalues of
/// rho below 1e-12 are dropped so that exactly low-rank inputs do not pick up
/// square-root noise.
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

}  // namespace qrev
