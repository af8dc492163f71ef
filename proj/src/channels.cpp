#include "qrev/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrev {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() == 0 || !is_square(m)) {
        throw Error(ErrorCode::Shape, std::string(what) + " must be a nonempty square matrix");
    }
    if (!all_finite(m)) {
        throw Error(ErrorCode::Domain, std::string(what) + " has non-finite entries");
    }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::Shape, std::string(what) + ": dimension " + std::to_string(a) +
                                          " does not match " + std::to_string(b));
    }
}

ComplexMatrix gram_sum(const std::vector<ComplexMatrix>& kraus) {
    ComplexMatrix e = ComplexMatrix::Zero(kraus.front().cols(), kraus.front().cols());
    for (const auto& a : kraus) {
        e += a.adjoint() * a;
    }
    return 0.5 * (e + e.adjoint());
}

}  // namespace

// DensityMatrix --------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require_square(m_, "density matrix");
    if (!is_hermitian(m_, kMatrixTol)) {
        throw Error(ErrorCode::Domain, "density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex{1.0}) > kNormTol) {
        throw Error(ErrorCode::Domain, "density matrix does not have unit trace");
    }
    if (eig_hermitian(m_).values.minCoeff() < -kPsdSlack) {
        throw Error(ErrorCode::NotPsd, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

// QuantumOperation -----------------------------------------------------------

QuantumOperation::QuantumOperation(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw Error(ErrorCode::Shape, "quantum operation needs at least one Kraus operator");
    }
    for (const auto& a : kraus_) {
        require_square(a, "Kraus operator");
        require_same_dim(static_cast<std::size_t>(a.rows()),
                         static_cast<std::size_t>(kraus_.front().rows()), "Kraus operator");
    }
    if (eig_hermitian(gram_sum(kraus_)).values(0) > 1.0 + kMatrixTol) {
        throw Error(ErrorCode::Domain, "Kraus operators are not trace non-increasing");
    }
}

IdealOperation::IdealOperation(ComplexMatrix a) : a_(std::move(a)) {
    require_square(a_, "ideal operator");
    if (eig_hermitian(gram_sum({a_})).values(0) > 1.0 + kMatrixTol) {
        throw Error(ErrorCode::Domain, "ideal operator does not satisfy A^dagger A <= I");
    }
}

Measurement::Measurement(std::vector<MeasurementOutcome> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        throw Error(ErrorCode::Shape, "measurement needs at least one outcome");
    }
    const std::size_t n = outcomes_.front().op.dim();
    ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& o : outcomes_) {
        require_same_dim(o.op.dim(), n, "measurement outcome");
        total += gram_sum(o.op.kraus());
    }
    if (max_abs_diff(total, identity(n)) > kCompletenessTol) {
        throw Error(ErrorCode::Domain, "measurement operators violate completeness");
    }
}

PovmElement::PovmElement(ComplexMatrix e) : e_(std::move(e)) {
    require_square(e_, "POVM element");
    const HermitianEigen eig = eig_hermitian(e_);
    if (eig.values.minCoeff() < -kPsdSlack) {
        throw Error(ErrorCode::NotPsd, "POVM element has a negative eigenvalue");
    }
    if (eig.values(0) > 1.0 + kMatrixTol) {
        throw Error(ErrorCode::Domain, "POVM element exceeds the identity");
    }
}

// Operations -----------------------------------------------------------------

AppliedOperation apply(const QuantumOperation& op, const DensityMatrix& rho) {
    require_same_dim(op.dim(), rho.dim(), "apply");
    ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto& a : op.kraus()) {
        out += a * rho.matrix() * a.adjoint();
    }
    out = 0.5 * (out + out.adjoint());
    const double weight = out.trace().real();
    return {std::move(out), weight};
}

DensityMatrix apply_normalized(const QuantumOperation& op, const DensityMatrix& rho) {
    AppliedOperation r = apply(op, rho);
    if (r.weight <= kZeroProbability) {
        throw Error(ErrorCode::ZeroProbability,
                    "operation has zero probability on this state; the result is undefined");
    }
    return DensityMatrix(r.unnormalized / r.weight);
}

bool is_deterministic(const QuantumOperation& op) {
    return max_abs_diff(gram_sum(op.kraus()), identity(op.dim())) <= kCompletenessTol;
}

ComplexMatrix choi_matrix(const QuantumOperation& op) {
    const std::size_t n = op.dim();
    ComplexMatrix choi = zeros(n * n, n * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            ComplexMatrix unit = zeros(n, n);
            unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = 1.0;
            ComplexMatrix image = zeros(n, n);
            for (const auto& a : op.kraus()) {
                image += a * unit * a.adjoint();
            }
            choi += tensor(unit, image);
        }
    }
    return choi;
}

bool is_completely_positive(const QuantumOperation& op) {
    return is_completely_positive_choi(choi_matrix(op));
}

bool is_completely_positive_choi(const ComplexMatrix& choi) {
    if (!is_hermitian(choi, kCompletenessTol)) {
        return false;
    }
    return eig_hermitian(0.5 * (choi + choi.adjoint())).values.minCoeff() >= -kCompletenessTol;
}

PovmElement povm_element(const QuantumOperation& op) { return PovmElement(gram_sum(op.kraus())); }

std::vector<double> outcome_probabilities(const Measurement& m, const DensityMatrix& rho) {
    require_same_dim(m.dim(), rho.dim(), "outcome_probabilities");
    std::vector<double> probs;
    probs.reserve(m.size());
    for (const auto& o : m.outcomes()) {
        probs.push_back((rho.matrix() * gram_sum(o.op.kraus())).trace().real());
    }
    return probs;
}

SampledOutcome sample_outcome(const Measurement& m, const DensityMatrix& rho, Rng& rng) {
    std::vector<double> probs = outcome_probabilities(m, rho);
    for (double& p : probs) {
        if (p < kZeroProbability) {
            p = 0.0;
        }
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (total <= 0.0) {
        throw Error(ErrorCode::DegenerateMeasurement, "every outcome has zero probability");
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t chosen = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] == 0.0) {
            continue;
        }
        chosen = i;
        acc += probs[i];
        if (u < acc) {
            break;
        }
    }
    return {chosen, m[chosen].label, apply_normalized(m[chosen].op, rho)};
}

SampledOutcome sample_outcome(const Measurement& m, const DensityMatrix& rho, std::uint64_t seed) {
    Rng rng(seed);
    return sample_outcome(m, rho, rng);
}

double fidelity(const StateVector& psi, const ComplexMatrix& rho) {
    require_same_dim(psi.dim(), static_cast<std::size_t>(rho.rows()), "fidelity");
    return (psi.amplitudes().adjoint() * rho * psi.amplitudes())(0).real();
}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    require_same_dim(static_cast<std::size_t>(rho.rows()), static_cast<std::size_t>(sigma.rows()),
                     "fidelity");
    const HermitianEigen e = eig_hermitian(rho);
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
        if (e.values(k) > 1e-12) {
            support.push_back(k);
        }
    }
    const auto r = static_cast<Eigen::Index>(support.size());
    ComplexMatrix scaled(rho.rows(), r);
    for (Eigen::Index k = 0; k < r; ++k) {
        scaled.col(k) = std::sqrt(e.values(support[static_cast<std::size_t>(k)])) *
                        e.vectors.col(support[static_cast<std::size_t>(k)]);
    }
    ComplexMatrix inner = scaled.adjoint() * sigma * scaled;
    inner = 0.5 * (inner + inner.adjoint());
    const RealVector mu = eig_hermitian(inner).values;
    double root = 0.0;
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
        root += std::sqrt(std::max(mu(k), 0.0));
    }
    return root * root;
}

}  // namespace qrev
