#include "qrev/random.hpp"

#include <cmath>
#include <numbers>

namespace qrev {

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        return 0;
    }
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % n;
}

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

StateVector random_state(std::size_t dim, Rng& rng) {
    return StateVector::normalized(random_ginibre(dim, 1, rng).col(0));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Rescale columns by the phases of diag(R) so the distribution is Haar.
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

ComplexMatrix random_density(std::size_t dim, Rng& rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace qrev
