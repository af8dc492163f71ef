#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qrev/channels.hpp"
#include "qrev/mz.hpp"

using namespace qrev;

namespace {

ComplexMatrix ket_bra(std::size_t dim, std::size_t i, std::size_t j) {
    ComplexMatrix m = zeros(dim, dim);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return m;
}

ComplexMatrix diag2(double a, double b) {
    const std::array<double, 2> d{a, b};
    return diagonal(d);
}

/// Random complete measurement: Kraus operators G_k S^{-1/2} with S = sum G^dagger G.
Measurement random_measurement(std::size_t dim, std::size_t outcomes, std::size_t krausPer, Rng& rng) {
    std::vector<ComplexMatrix> gs;
    ComplexMatrix s = zeros(dim, dim);
    for (std::size_t k = 0; k < outcomes * krausPer; ++k) {
        gs.push_back(random_ginibre(dim, dim, rng));
        s += gs.back().adjoint() * gs.back();
    }
    const ComplexMatrix inv = matrix_sqrt_psd(s).inverse();
    std::vector<MeasurementOutcome> out;
    for (std::size_t i = 0; i < outcomes; ++i) {
        std::vector<ComplexMatrix> kraus;
        for (std::size_t j = 0; j < krausPer; ++j) {
            kraus.push_back(gs[i * krausPer + j] * inv);
        }
        out.push_back({std::to_string(i), QuantumOperation(std::move(kraus))});
    }
    return Measurement(std::move(out));
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix(diag2(0.3, 0.7)));
    CHECK_THROWS_AS(DensityMatrix(diag2(0.3, 0.6)), Error);
    CHECK_THROWS_AS(DensityMatrix(zeros(2, 3)), Error);
    try {
        DensityMatrix(diag2(1.5, -0.5));
        FAIL("expected NotPsd");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPsd);
    }
    ComplexMatrix nh = diag2(0.5, 0.5);
    nh(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{nh}, Error);
}

TEST_CASE("operation validation") {
    CHECK_THROWS_AS(QuantumOperation({}), Error);
    CHECK_THROWS_AS(QuantumOperation({identity(2), identity(3)}), Error);
    CHECK_THROWS_AS(QuantumOperation({identity(2), 0.5 * identity(2)}), Error);
    CHECK_THROWS_AS(IdealOperation(1.01 * identity(2)), Error);
    CHECK_NOTHROW(IdealOperation(identity(2)));
    CHECK_THROWS_AS(Measurement({{"a", QuantumOperation({ket_bra(2, 0, 0)})}}), Error);
    CHECK_THROWS_AS(PovmElement(diag2(1.2, 0.0)), Error);
    CHECK_THROWS_AS(PovmElement(diag2(0.5, -0.1)), Error);
}

TEST_CASE("apply") {
    Rng rng(11);
    SUBCASE("unitary operation") {
        const ComplexMatrix u = random_unitary(3, rng);
        const DensityMatrix rho(random_density(3, rng));
        const AppliedOperation r = apply(QuantumOperation({u}), rho);
        CHECK(max_abs_diff(r.unnormalized, u * rho.matrix() * u.adjoint()) < 1e-12);
        CHECK(r.weight == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero overlap") {
        const AppliedOperation r = apply(QuantumOperation({ket_bra(2, 0, 0)}), DensityMatrix::pure(StateVector::basis(2, 1)));
        CHECK(r.weight == 0.0);
    }
    SUBCASE("three Kraus operators against term-by-term summation") {
        const double p = 0.3;
        const QuantumOperation op({std::sqrt(1 - p) * identity(2), std::sqrt(p / 2) * oracle::pauli_x(),
                                   std::sqrt(p / 2) * oracle::pauli_z()});
        for (int trial = 0; trial < 10; ++trial) {
            const DensityMatrix rho(random_density(2, rng));
            ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
            for (const auto& a : op.kraus()) {
                expected += oracle::multiply(oracle::multiply(a, rho.matrix()), a.adjoint());
            }
            CHECK(max_abs_diff(apply(op, rho).unnormalized, expected) < 1e-14);
        }
    }
    SUBCASE("dimension mismatch") {
        try {
            apply(QuantumOperation({identity(3)}), DensityMatrix(diag2(0.5, 0.5)));
            FAIL("expected a shape error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Shape);
        }
    }
    SUBCASE("linearity in rho") {
        for (int trial = 0; trial < 20; ++trial) {
            const Measurement m = random_measurement(3, 2, 2, rng);
            const QuantumOperation& op = m[0].op;
            const ComplexMatrix r1 = random_density(3, rng);
            const ComplexMatrix r2 = random_density(3, rng);
            const double l = rng.uniform();
            const ComplexMatrix lhs = apply(op, DensityMatrix(l * r1 + (1 - l) * r2)).unnormalized;
            const ComplexMatrix rhs =
                l * apply(op, DensityMatrix(r1)).unnormalized + (1 - l) * apply(op, DensityMatrix(r2)).unnormalized;
            CHECK(max_abs_diff(lhs, rhs) < 1e-9);
        }
    }
    SUBCASE("ideal operation on a pure state has rank one") {
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix g = random_ginibre(4, 4, rng);
            const ComplexMatrix a = g / svd(g).singular(0);
            const AppliedOperation r = apply(QuantumOperation({a}), DensityMatrix::pure(random_state(4, rng)));
            CHECK(eig_hermitian(r.unnormalized).values(1) <= 1e-8);
        }
    }
}

TEST_CASE("apply_normalized") {
    Rng rng(12);
    const ComplexMatrix u = random_unitary(2, rng);
    const DensityMatrix rho(random_density(2, rng));
    CHECK(max_abs_diff(apply_normalized(QuantumOperation({u}), rho).matrix(), u * rho.matrix() * u.adjoint()) <
          1e-12);

    const DensityMatrix mixed(diag2(0.3, 0.7));
    CHECK(max_abs_diff(apply_normalized(QuantumOperation({ket_bra(2, 0, 0)}), mixed).matrix(), ket_bra(2, 0, 0)) <
          1e-14);

    try {
        apply_normalized(QuantumOperation({ket_bra(2, 0, 0)}), DensityMatrix(diag2(0.0, 1.0)));
        FAIL("expected ZeroProbability");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroProbability);
    }

    SUBCASE("first Mabuchi-Zoller outcome lowers both modes together") {
        const mz::Params p;
        const Measurement m = mz::build_measurement(p);
        const Complex alpha(0.6, 0.0);
        const Complex beta(0.0, 0.8);
        ComplexVector psi = ComplexVector::Zero(9);
        psi(static_cast<Eigen::Index>(p.index(2, 0))) = alpha;
        psi(static_cast<Eigen::Index>(p.index(0, 2))) = beta;
        ComplexVector expected = ComplexVector::Zero(9);
        expected(static_cast<Eigen::Index>(p.index(1, 0))) = alpha;
        expected(static_cast<Eigen::Index>(p.index(0, 1))) = beta;
        const DensityMatrix out = apply_normalized(m[0].op, DensityMatrix::pure(StateVector(psi)));
        CHECK(max_abs_diff(out.matrix(), expected * expected.adjoint()) < 1e-12);
    }
}

TEST_CASE("is_deterministic") {
    Rng rng(13);
    CHECK(is_deterministic(QuantumOperation({random_unitary(3, rng)})));
    CHECK_FALSE(is_deterministic(QuantumOperation({ket_bra(2, 0, 0)})));
    CHECK(is_deterministic(QuantumOperation({ket_bra(2, 0, 0), ket_bra(2, 1, 1)})));
}

TEST_CASE("complete positivity") {
    Rng rng(14);
    CHECK(is_completely_positive(QuantumOperation({identity(2)})));
    CHECK(is_completely_positive(random_measurement(3, 2, 3, rng)[1].op));

    SUBCASE("identity channel Choi matrix is the unnormalized maximally entangled projector") {
        ComplexVector omega = ComplexVector::Zero(4);
        omega(0) = omega(3) = 1.0;
        CHECK(max_abs_diff(choi_matrix(QuantumOperation({identity(2)})), omega * omega.adjoint()) < 1e-15);
    }

    SUBCASE("transpose map is not completely positive") {
        // Choi of the transpose map is the swap; built here entry by entry.
        ComplexMatrix choi = ComplexMatrix::Zero(4, 4);
        for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) {
                choi(k * 2 + l, l * 2 + k) = 1.0;
            }
        }
        CHECK_FALSE(is_completely_positive_choi(choi));
        CHECK(eig_hermitian(choi).values(3) == doctest::Approx(-1.0));
        CHECK(eig_hermitian(choi / 2.0).values(3) == doctest::Approx(-0.5));
    }
}

TEST_CASE("povm_element") {
    Rng rng(15);
    CHECK(max_abs_diff(povm_element(QuantumOperation({random_unitary(3, rng)})).matrix(), identity(3)) < 1e-12);

    const ComplexMatrix g = random_ginibre(3, 3, rng);
    const ComplexMatrix a = g / svd(g).singular(0);
    CHECK(max_abs_diff(povm_element(QuantumOperation({a})).matrix(), a.adjoint() * a) < 1e-14);

    SUBCASE("first Mabuchi-Zoller outcome") {
        const mz::Params p;
        const Measurement m = mz::build_measurement(p);
        // 0.05 (a^dagger + b^dagger)(a + b) from matrix elements on |na, nb>.
        ComplexMatrix expected = zeros(9, 9);
        for (std::size_t na = 0; na <= 2; ++na) {
            for (std::size_t nb = 0; nb <= 2; ++nb) {
                const auto col = static_cast<Eigen::Index>(p.index(na, nb));
                // a^dagger a and b^dagger b are diagonal.
                expected(col, col) += 0.05 * static_cast<double>(na + nb);
                // a^dagger b |na, nb> = sqrt((na+1) nb) |na+1, nb-1>, and its adjoint.
                if (na < 2 && nb > 0) {
                    const auto row = static_cast<Eigen::Index>(p.index(na + 1, nb - 1));
                    const double v = 0.05 * std::sqrt(static_cast<double>((na + 1) * nb));
                    expected(row, col) += v;
                    expected(col, row) += v;
                }
            }
        }
        CHECK(max_abs_diff(povm_element(m[0].op).matrix(), expected) < 1e-14);
    }

    SUBCASE("deterministic operations give the identity") {
        for (int trial = 0; trial < 10; ++trial) {
            const Measurement m = random_measurement(4, 1, 3, rng);
            CHECK(max_abs_diff(povm_element(m[0].op).matrix(), identity(4)) < 1e-8);
        }
    }
}

TEST_CASE("outcome_probabilities") {
    Rng rng(16);
    const Measurement z({{"0", QuantumOperation({ket_bra(2, 0, 0)})}, {"1", QuantumOperation({ket_bra(2, 1, 1)})}});
    const std::vector<double> p = outcome_probabilities(z, DensityMatrix(diag2(0.3, 0.7)));
    CHECK(p[0] == doctest::Approx(0.3));
    CHECK(p[1] == doctest::Approx(0.7));

    const mz::Params mzp;
    const Measurement mzm = mz::build_measurement(mzp);
    const Subspace space = mz::reversible_subspace(mzp);
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector psi = space.embed(random_state(2, rng).amplitudes());
        const std::vector<double> q = outcome_probabilities(mzm, DensityMatrix::pure(psi));
        CHECK(q[0] == doctest::Approx(0.1).epsilon(1e-10));
        CHECK(q[1] == doctest::Approx(0.1).epsilon(1e-10));
        CHECK(q[2] == doctest::Approx(0.8).epsilon(1e-10));
    }

    for (int trial = 0; trial < 20; ++trial) {
        const Measurement m = random_measurement(3, 3, 2, rng);
        const DensityMatrix rho(random_density(3, rng));
        const std::vector<double> q = outcome_probabilities(m, rho);
        double total = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            Complex expected = 0.0;
            for (const auto& a : m[i].op.kraus()) {
                expected += oracle::trace(oracle::multiply(oracle::multiply(a, rho.matrix()), a.adjoint()));
            }
            CHECK(std::abs(q[i] - expected.real()) < 1e-12);
            CHECK(q[i] >= -1e-10);
            total += q[i];
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }

    CHECK_THROWS_AS(outcome_probabilities(z, DensityMatrix(identity(3) / 3.0)), Error);
}

TEST_CASE("sample_outcome") {
    Rng rng(17);
    SUBCASE("deterministic measurement") {
        const Measurement m({{"only", QuantumOperation({identity(2)})}});
        const DensityMatrix rho(random_density(2, rng));
        const SampledOutcome s = sample_outcome(m, rho, 5);
        CHECK(s.label == "only");
        CHECK(max_abs_diff(s.posterior.matrix(), rho.matrix()) < 1e-12);
    }

    const Measurement z({{"0", QuantumOperation({ket_bra(2, 0, 0)})}, {"1", QuantumOperation({ket_bra(2, 1, 1)})}});
    const DensityMatrix rho(diag2(0.3, 0.7));

    SUBCASE("same seed, same sequence") {
        Rng a(99);
        Rng b(99);
        for (int i = 0; i < 200; ++i) {
            CHECK(sample_outcome(z, rho, a).index == sample_outcome(z, rho, b).index);
        }
        CHECK(sample_outcome(z, rho, 1234).index == sample_outcome(z, rho, 1234).index);
    }

    SUBCASE("empirical frequencies within three binomial standard deviations") {
        Rng r(2024);
        const int n = 100000;
        int zeros = 0;
        for (int i = 0; i < n; ++i) {
            if (sample_outcome(z, rho, r).index == 0) {
                ++zeros;
            }
        }
        const double sigma = std::sqrt(n * 0.3 * 0.7);
        CHECK(std::abs(zeros - 0.3 * n) < 3 * sigma);
    }

    SUBCASE("zero-probability outcomes are never selected") {
        const DensityMatrix pure0(diag2(1.0, 0.0));
        Rng r(3);
        for (int i = 0; i < 1000; ++i) {
            CHECK(sample_outcome(z, pure0, r).index == 0);
        }
    }
}

TEST_CASE("fidelity") {
    Rng rng(18);
    const StateVector psi = random_state(3, rng);
    CHECK(fidelity(psi, psi.projector()) == doctest::Approx(1.0));
    CHECK(fidelity(StateVector::basis(2, 0), StateVector::basis(2, 1).projector()) == 0.0);

    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = random_density(3, rng);
        CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
        const StateVector phi = random_state(3, rng);
        CHECK(fidelity(phi.projector(), rho) == doctest::Approx(fidelity(phi, rho)).epsilon(1e-9));
    }
    // Commuting states: (sum sqrt(p q))^2
    CHECK(fidelity(diag2(0.3, 0.7), diag2(0.6, 0.4)) ==
          doctest::Approx(std::pow(std::sqrt(0.18) + std::sqrt(0.28), 2)).epsilon(1e-12));
}

}  // TEST_SUITE
