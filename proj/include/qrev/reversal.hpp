#pragma once

// Unitary reversibility of ideal operations on a subspace M.
//
// For an ideal operation A and a subspace M with projector P, the following
// are equivalent:
//   (1) some unitary U restores every state supported on M,
//   (2) P A^dagger A P = mu^2 P for some mu > 0,
//   (3) <psi|A^dagger A|psi> is the same for every unit |psi> in M,
//   (4) A = mu V P + A (I - P) for a unitary V.
// The reversing unitary is U = V^dagger, where V is the unitary factor of
// the polar decomposition of A P.

#include <cstdint>
#include <vector>

#include "qrev/channels.hpp"
#include "qrev/qmat.hpp"

namespace qrev {

/// Default acceptance tolerance for the reversibility predicates.
inline constexpr double kReversalTol = 1e-8;

/// Subspace M of an ambient space L, stored as an isometry whose columns
/// are an orthonormal basis of M.
class Subspace {
public:
    /// Throws Error(Domain) unless the vectors are orthonormal within 1e-10,
    /// and Error(Shape) if the list is empty, too long, or of mixed dimension.
    Subspace(std::size_t ambientDim, const std::vector<StateVector>& basis);

    static Subspace full(std::size_t ambientDim);
    /// Subspace spanned by computational basis vectors.
    static Subspace coordinates(std::size_t ambientDim, const std::vector<std::size_t>& indices);

    std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(basis_.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
    const ComplexMatrix& isometry() const noexcept { return basis_; }
    std::vector<StateVector> basis() const;

    /// P_M
    ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }
    /// P_N = I - P_M
    ComplexMatrix complement_projector() const;

    /// Embeds a coefficient vector (length dim()) into the ambient space.
    StateVector embed(const ComplexVector& coefficients) const;

private:
    ComplexMatrix basis_;
};

struct Condition2Result {
    double muSquared = 0.0;
    double residual = 0.0;
    bool accepted = false;
};

struct Condition3Result {
    bool accepted = false;
    double spread = 0.0;
    double minProbability = 0.0;
    double maxProbability = 0.0;
};

struct Condition4Result {
    double mu = 0.0;
    ComplexMatrix v;
};

struct ReversibilityCertificate {
    double muSquared = 0.0;
    ComplexMatrix reversingUnitary;
    double residual = 0.0;
};

struct InformationGainResult {
    double muSquared = 0.0;
    bool accepted = false;
    /// Eigenvalues of P_M (sum_j A_j^dagger A_j) P_M restricted to M, descending.
    std::vector<double> eigenvalues;
};

/// mu^2 = tr(P E P) / dim M and the max-norm residual of P E P - mu^2 P.
/// Accepted iff residual <= tol and mu^2 > kZeroProbability.
Condition2Result check_condition2(const IdealOperation& op, const Subspace& m,
                                  double tol = kReversalTol);

/// Evaluates Pr = <psi|A^dagger A|psi> on every basis vector of M and on
/// `samples` random superpositions. Accepted iff max - min <= tol and
/// min > kZeroProbability.
Condition3Result check_condition3(const IdealOperation& op, const Subspace& m, std::size_t samples,
                                  std::uint64_t seed, double tol = kReversalTol);

/// Throws Error(ZeroProbability) when A annihilates a state in M and
/// Error(NotReversible) when condition 2 fails.
Condition4Result decompose_condition4(const IdealOperation& op, const Subspace& m,
                                      double tol = kReversalTol);

ReversibilityCertificate construct_reversal(const IdealOperation& op, const Subspace& m,
                                            double tol = kReversalTol);

/// Minimum fidelity between rho and U E(rho) U^dagger / tr E(rho) over
/// `pureSamples` random pure states and `mixedSamples` random rank-2 states
/// supported on M (the mixed states need dim M >= 2).
double verify_reversal(const QuantumOperation& op, const ComplexMatrix& u, const Subspace& m,
                       std::size_t pureSamples, std::uint64_t seed, std::size_t mixedSamples = 0);
double verify_reversal(const IdealOperation& op, const ComplexMatrix& u, const Subspace& m,
                       std::size_t pureSamples, std::uint64_t seed, std::size_t mixedSamples = 0);

/// Necessary condition for any deterministic reversal of a general
/// operation: B = P_M (sum_j A_j^dagger A_j) P_M must equal mu^2 P_M, i.e.
/// the outcome reveals nothing about which state of M was prepared. Passing
/// this check does not imply that a reversal exists.
InformationGainResult information_gain_check(const QuantumOperation& op, const Subspace& m,
                                             double tol = kReversalTol);

}  // namespace qrev
