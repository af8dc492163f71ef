#include "qrev/reversal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qrev/random.hpp"

namespace qrev {

namespace {

void require_matching(const Subspace& m, std::size_t dim, const char* what) {
    if (m.ambient_dim() != dim) {
        throw Error(ErrorCode::Shape, std::string(what) + ": subspace lives in dimension " +
                                          std::to_string(m.ambient_dim()) + ", operator in " +
                                          std::to_string(dim));
    }
}

/// W^dagger E W for the isometry W of M.
ComplexMatrix restricted(const ComplexMatrix& e, const Subspace& m) {
    ComplexMatrix r = m.isometry().adjoint() * e * m.isometry();
    return 0.5 * (r + r.adjoint());
}

ComplexMatrix effect(const ComplexMatrix& a) { return a.adjoint() * a; }

}  // namespace

// Subspace -------------------------------------------------------------------

Subspace::Subspace(std::size_t ambientDim, const std::vector<StateVector>& basis) {
    if (ambientDim == 0 || basis.empty() || basis.size() > ambientDim) {
        throw Error(ErrorCode::Shape, "subspace needs between 1 and ambientDim basis vectors");
    }
    basis_ = zeros(ambientDim, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].dim() != ambientDim) {
            throw Error(ErrorCode::Shape, "subspace basis vector has the wrong dimension");
        }
        basis_.col(static_cast<Eigen::Index>(k)) = basis[k].amplitudes();
    }
    if (max_abs_diff(basis_.adjoint() * basis_, identity(basis.size())) > kNormTol) {
        throw Error(ErrorCode::Domain, "subspace basis is not orthonormal");
    }
}

Subspace Subspace::full(std::size_t ambientDim) {
    std::vector<std::size_t> all(ambientDim);
    for (std::size_t i = 0; i < ambientDim; ++i) {
        all[i] = i;
    }
    return coordinates(ambientDim, all);
}

Subspace Subspace::coordinates(std::size_t ambientDim, const std::vector<std::size_t>& indices) {
    std::vector<StateVector> basis;
    basis.reserve(indices.size());
    for (std::size_t i : indices) {
        basis.push_back(StateVector::basis(ambientDim, i));
    }
    return Subspace(ambientDim, basis);
}

std::vector<StateVector> Subspace::basis() const {
    std::vector<StateVector> out;
    for (Eigen::Index k = 0; k < basis_.cols(); ++k) {
        out.emplace_back(basis_.col(k));
    }
    return out;
}

ComplexMatrix Subspace::complement_projector() const {
    return identity(ambient_dim()) - projector();
}

StateVector Subspace::embed(const ComplexVector& coefficients) const {
    if (static_cast<std::size_t>(coefficients.size()) != dim()) {
        throw Error(ErrorCode::Shape, "subspace coefficient vector has the wrong length");
    }
    return StateVector::normalized(basis_ * coefficients);
}

// Conditions -----------------------------------------------------------------

Condition2Result check_condition2(const IdealOperation& op, const Subspace& m, double tol) {
    require_matching(m, op.dim(), "check_condition2");
    const ComplexMatrix p = m.projector();
    const ComplexMatrix pep = p * effect(op.op()) * p;
    Condition2Result r;
    r.muSquared = pep.trace().real() / static_cast<double>(m.dim());
    r.residual = max_abs(pep - r.muSquared * p);
    r.accepted = r.residual <= tol && r.muSquared > kZeroProbability;
    return r;
}

Condition3Result check_condition3(const IdealOperation& op, const Subspace& m, std::size_t samples,
                                  std::uint64_t seed, double tol) {
    require_matching(m, op.dim(), "check_condition3");
    if (samples < 2) {
        throw Error(ErrorCode::Parameter, "check_condition3 needs at least two samples");
    }
    const ComplexMatrix e = effect(op.op());
    auto probability = [&e](const ComplexVector& psi) {
        return (psi.adjoint() * e * psi)(0).real();
    };

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto record = [&](double p) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    };
    for (Eigen::Index k = 0; k < m.isometry().cols(); ++k) {
        record(probability(m.isometry().col(k)));
    }
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        record(probability(m.embed(random_state(m.dim(), rng).amplitudes()).amplitudes()));
    }

    Condition3Result r;
    r.minProbability = lo;
    r.maxProbability = hi;
    r.spread = hi - lo;
    r.accepted = r.spread <= tol && lo > kZeroProbability;
    return r;
}

Condition4Result decompose_condition4(const IdealOperation& op, const Subspace& m, double tol) {
    require_matching(m, op.dim(), "decompose_condition4");
    const RealVector b = eig_hermitian(restricted(effect(op.op()), m)).values;
    if (b.minCoeff() <= kZeroProbability) {
        throw Error(ErrorCode::ZeroProbability,
                    "operator annihilates a state in the subspace; reversal is undefined");
    }
    const Condition2Result c2 = check_condition2(op, m, tol);
    if (!c2.accepted) {
        throw Error(ErrorCode::NotReversible,
                    "P_M A^dagger A P_M is not a multiple of P_M (residual " +
                        std::to_string(c2.residual) + ")");
    }
    const ComplexMatrix p = m.projector();
    const ComplexMatrix ap = op.op() * p;
    Condition4Result r{std::sqrt(c2.muSquared), polar(ap).unitary};
    if (max_abs(ap - r.mu * r.v * p) > 10.0 * tol) {
        throw Error(ErrorCode::NotReversible, "polar factor does not reproduce A P_M");
    }
    return r;
}

ReversibilityCertificate construct_reversal(const IdealOperation& op, const Subspace& m, double tol) {
    const Condition4Result c4 = decompose_condition4(op, m, tol);
    const Condition2Result c2 = check_condition2(op, m, tol);
    return {c2.muSquared, c4.v.adjoint(), c2.residual};
}

double verify_reversal(const QuantumOperation& op, const ComplexMatrix& u, const Subspace& m,
                       std::size_t pureSamples, std::uint64_t seed, std::size_t mixedSamples) {
    require_matching(m, op.dim(), "verify_reversal");
    if (static_cast<std::size_t>(u.rows()) != op.dim() || !is_unitary(u, kMatrixTol)) {
        throw Error(ErrorCode::Domain, "verify_reversal: candidate is not a unitary of matching size");
    }
    auto restored = [&](const DensityMatrix& rho) {
        const ComplexMatrix out = apply_normalized(op, rho).matrix();
        return ComplexMatrix(u * out * u.adjoint());
    };

    Rng rng(seed);
    double worst = 1.0;
    for (std::size_t s = 0; s < pureSamples; ++s) {
        const StateVector psi = m.embed(random_state(m.dim(), rng).amplitudes());
        worst = std::min(worst, fidelity(psi, restored(DensityMatrix::pure(psi))));
    }
    if (m.dim() >= 2) {
        for (std::size_t s = 0; s < mixedSamples; ++s) {
            // Two orthonormal states in M with a random weight.
            const ComplexMatrix frame = random_unitary(m.dim(), rng);
            const StateVector a = m.embed(frame.col(0));
            const StateVector b = m.embed(frame.col(1));
            const double w = 0.1 + 0.8 * rng.uniform();
            const ComplexMatrix rho = w * a.projector() + (1.0 - w) * b.projector();
            worst = std::min(worst, fidelity(rho, restored(DensityMatrix(rho))));
        }
    }
    return worst;
}

double verify_reversal(const IdealOperation& op, const ComplexMatrix& u, const Subspace& m,
                       std::size_t pureSamples, std::uint64_t seed, std::size_t mixedSamples) {
    return verify_reversal(op.as_operation(), u, m, pureSamples, seed, mixedSamples);
}

InformationGainResult information_gain_check(const QuantumOperation& op, const Subspace& m,
                                             double tol) {
    require_matching(m, op.dim(), "information_gain_check");
    ComplexMatrix e = ComplexMatrix::Zero(m.isometry().rows(), m.isometry().rows());
    for (const auto& a : op.kraus()) {
        e += effect(a);
    }
    const RealVector b = eig_hermitian(restricted(e, m)).values;
    InformationGainResult r;
    r.eigenvalues.assign(b.data(), b.data() + b.size());
    r.muSquared = b.mean();
    r.accepted = (b.maxCoeff() - b.minCoeff()) <= tol && b.minCoeff() > kZeroProbability;
    return r;
}

}  // namespace qrev
