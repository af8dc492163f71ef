#include "qrev/mz.hpp"

#include <cmath>

namespace qrev::mz {

void Params::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw Error(ErrorCode::Parameter, "delta must be positive");
    }
    if (cutoff < 1) {
        throw Error(ErrorCode::Parameter, "Fock cutoff must be at least 1");
    }
    if (delta * 2.0 * static_cast<double>(cutoff) > 1.0) {
        throw Error(ErrorCode::Parameter,
                    "delta * 2 * cutoff exceeds 1; I - delta(a^dagger a + b^dagger b) is not PSD");
    }
    if (hamiltonian.size() != 0) {
        if (static_cast<std::size_t>(hamiltonian.rows()) != joint_dim() || !is_square(hamiltonian)) {
            throw Error(ErrorCode::Parameter, "Hamiltonian must act on the joint Fock space");
        }
        if (!all_finite(hamiltonian) || !is_hermitian(hamiltonian, kMatrixTol)) {
            throw Error(ErrorCode::Parameter, "Hamiltonian must be Hermitian");
        }
    }
}

ComplexMatrix annihilation_matrix(std::size_t cutoff) {
    if (cutoff < 1) {
        throw Error(ErrorCode::Parameter, "Fock cutoff must be at least 1");
    }
    ComplexMatrix a = zeros(cutoff + 1, cutoff + 1);
    for (std::size_t n = 1; n <= cutoff; ++n) {
        a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) =
            std::sqrt(static_cast<double>(n));
    }
    return a;
}

Measurement build_measurement(const Params& p) {
    p.validate();
    const ComplexMatrix single = annihilation_matrix(p.cutoff);
    const ComplexMatrix one = identity(p.cutoff + 1);
    const ComplexMatrix a = tensor(single, one);
    const ComplexMatrix b = tensor(one, single);
    const ComplexMatrix number = a.adjoint() * a + b.adjoint() * b;
    const double scale = std::sqrt(p.delta / 2.0);

    ComplexMatrix damping;
    try {
        damping = matrix_sqrt_psd(identity(p.joint_dim()) - p.delta * number);
    } catch (const Error& e) {
        throw Error(ErrorCode::Parameter, std::string("no-jump operator is undefined: ") + e.what());
    }
    const ComplexMatrix evolution =
        p.hamiltonian.size() == 0 ? identity(p.joint_dim()) : unitary_exp(p.hamiltonian, p.delta);

    std::vector<MeasurementOutcome> outcomes;
    outcomes.push_back({"1", QuantumOperation({scale * (a + b)})});
    outcomes.push_back({"2", QuantumOperation({scale * (a - b)})});
    outcomes.push_back({"3", QuantumOperation({evolution * damping})});
    return Measurement(std::move(outcomes));
}

Subspace reversible_subspace(const Params& p) {
    if (p.cutoff < 2) {
        throw Error(ErrorCode::Parameter, "the reversible subspace needs a Fock cutoff of at least 2");
    }
    return Subspace::coordinates(p.joint_dim(), {p.index(2, 0), p.index(0, 2)});
}

DemoReport demo_reverse_outcome(const Params& p, Complex alpha, Complex beta, std::size_t outcomeIndex) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol) {
        throw Error(ErrorCode::Parameter, "|alpha|^2 + |beta|^2 must equal 1");
    }
    const Measurement m = build_measurement(p);
    if (outcomeIndex >= m.size()) {
        throw Error(ErrorCode::Index, "Mabuchi-Zoller outcome index out of range");
    }
    const Subspace space = reversible_subspace(p);
    ComplexVector coefficients(2);
    coefficients << alpha, beta;
    const StateVector psi = space.embed(coefficients);
    const DensityMatrix rho = DensityMatrix::pure(psi);

    const MeasurementOutcome& outcome = m[outcomeIndex];
    const IdealOperation op(outcome.op.kraus().front());
    const DensityMatrix after = apply_normalized(outcome.op, rho);
    const ReversibilityCertificate cert = construct_reversal(op, space);
    const ComplexMatrix restored = cert.reversingUnitary * after.matrix() * cert.reversingUnitary.adjoint();

    DemoReport r;
    r.outcome = outcome.label;
    r.outcomeIndex = outcomeIndex;
    r.probabilities = outcome_probabilities(m, rho);
    r.fidelityBeforeReversal = fidelity(psi, after.matrix());
    r.fidelityAfterReversal = fidelity(psi, restored);
    r.reversingUnitary = cert.reversingUnitary;
    return r;
}

DemoReport demo_reverse(const Params& p, Complex alpha, Complex beta, std::uint64_t seed) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol) {
        throw Error(ErrorCode::Parameter, "|alpha|^2 + |beta|^2 must equal 1");
    }
    const Measurement m = build_measurement(p);
    const Subspace space = reversible_subspace(p);
    ComplexVector coefficients(2);
    coefficients << alpha, beta;
    const SampledOutcome drawn = sample_outcome(m, DensityMatrix::pure(space.embed(coefficients)), seed);
    return demo_reverse_outcome(p, alpha, beta, drawn.index);
}

}  // namespace qrev::mz
