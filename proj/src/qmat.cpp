#include "qrev/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qrev {

namespace {

constexpr double kPhaseEps = 1e-12;

std::string shape_of(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Shape: return "shape";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::NotPsd: return "not-psd";
        case ErrorCode::ZeroProbability: return "zero-probability";
        case ErrorCode::DegenerateMeasurement: return "degenerate-measurement";
        case ErrorCode::NotReversible: return "not-reversible";
        case ErrorCode::Parameter: return "parameter";
        case ErrorCode::Index: return "index";
        case ErrorCode::Infeasible: return "infeasible";
    }
    return "unknown";
}

// StateVector ----------------------------------------------------------------

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) {
        throw Error(ErrorCode::Domain, "state vector must have positive dimension");
    }
    if (!amps_.allFinite()) {
        throw Error(ErrorCode::Domain, "state vector has non-finite amplitudes");
    }
    if (std::abs(amps_.norm() - 1.0) > kNormTol) {
        throw Error(ErrorCode::Domain, "state vector is not normalized");
    }
}

StateVector StateVector::normalized(const ComplexVector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::Domain, "cannot normalize a zero or non-finite vector");
    }
    return StateVector(v / n);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorCode::Index, "basis index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

// Construction ---------------------------------------------------------------

ComplexMatrix identity(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    return ComplexMatrix::Identity(k, k);
}

ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

ComplexMatrix diagonal(std::span<const double> entries) {
    ComplexMatrix m = zeros(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
    }
    return m;
}

// Composition ----------------------------------------------------------------

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::Shape, "cannot multiply " + shape_of(a) + " by " + shape_of(b));
    }
    return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (dims.empty()) {
        throw Error(ErrorCode::Shape, "partial_trace needs at least one subsystem");
    }
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != total) {
        throw Error(ErrorCode::Shape,
                    "partial_trace: subsystem dimensions do not match " + shape_of(m));
    }
    const std::size_t n = dims.size();
    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) {
        if (k >= n) {
            throw Error(ErrorCode::Index, "partial_trace: subsystem index out of range");
        }
        kept[k] = true;
    }

    // Strides of the row-major multi-index.
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t s = n - 1; s > 0; --s) {
        stride[s - 1] = stride[s] * dims[s];
    }
    std::size_t keptDim = 1;
    std::size_t tracedDim = 1;
    for (std::size_t s = 0; s < n; ++s) {
        (kept[s] ? keptDim : tracedDim) *= dims[s];
    }

    // Maps (kept index, traced index) to a full index.
    auto compose = [&](std::size_t keptIdx, std::size_t tracedIdx) {
        std::size_t full = 0;
        for (std::size_t s = n; s-- > 0;) {
            if (kept[s]) {
                full += (keptIdx % dims[s]) * stride[s];
                keptIdx /= dims[s];
            } else {
                full += (tracedIdx % dims[s]) * stride[s];
                tracedIdx /= dims[s];
            }
        }
        return static_cast<Eigen::Index>(full);
    };

    ComplexMatrix out = zeros(keptDim, keptDim);
    for (std::size_t r = 0; r < keptDim; ++r) {
        for (std::size_t c = 0; c < keptDim; ++c) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < tracedDim; ++t) {
                acc += m(compose(r, t), compose(c, t));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return out;
}

Complex trace(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::Shape, "trace of non-square " + shape_of(m));
    }
    return m.trace();
}

// Predicates -----------------------------------------------------------------

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::Shape, "cannot compare " + shape_of(a) + " with " + shape_of(b));
    }
    return max_abs(a - b);
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return is_square(m) && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    return is_square(m) && max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())) <= tol;
}

// Decompositions -------------------------------------------------------------

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
    if (!is_hermitian(m, kMatrixTol)) {
        throw Error(ErrorCode::Domain, "eig_hermitian: matrix is not Hermitian");
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::Domain, "eig_hermitian: eigensolver did not converge");
    }
    const Eigen::Index n = m.rows();
    HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
    // Eigen sorts ascending; reverse and fix the phase of every column.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = solver.eigenvalues()(n - 1 - k);
        ComplexVector v = solver.eigenvectors().col(n - 1 - k);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v(i)) > kPhaseEps) {
                v *= std::conj(v(i)) / std::abs(v(i));
                v(i) = std::abs(v(i));
                break;
            }
        }
        out.vectors.col(k) = v;
    }
    return out;
}

Svd svd(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return Svd{solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint()};
}

PolarDecomposition polar(const ComplexMatrix& m) {
    if (!is_square(m)) {
        throw Error(ErrorCode::Shape, "polar: matrix must be square, got " + shape_of(m));
    }
    const Svd s = svd(m);
    const ComplexMatrix v = s.vAdjoint.adjoint();
    ComplexMatrix positive = v * s.singular.cast<Complex>().asDiagonal() * s.vAdjoint;
    positive = 0.5 * (positive + positive.adjoint());
    return PolarDecomposition{s.u * s.vAdjoint, std::move(positive)};
}

std::size_t SchmidtDecomposition::rank(double tol) const {
    return static_cast<std::size_t>(
        std::count_if(coefficients.begin(), coefficients.end(), [tol](double c) { return c > tol; }));
}

ComplexVector SchmidtDecomposition::reconstruct() const {
    ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(dimLeft * dimRight));
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        out += coefficients[j] * tensor(leftBasis[j].amplitudes(), rightBasis[j].amplitudes());
    }
    return out;
}

SchmidtDecomposition schmidt(const StateVector& v, std::size_t dimLeft, std::size_t dimRight) {
    if (dimLeft == 0 || dimRight == 0 || dimLeft * dimRight != v.dim()) {
        throw Error(ErrorCode::Shape, "schmidt: " + std::to_string(dimLeft) + "x" +
                                          std::to_string(dimRight) + " does not match dimension " +
                                          std::to_string(v.dim()));
    }
    const auto rows = static_cast<Eigen::Index>(dimLeft);
    const auto cols = static_cast<Eigen::Index>(dimRight);
    ComplexMatrix amplitude(rows, cols);
    for (Eigen::Index l = 0; l < rows; ++l) {
        for (Eigen::Index r = 0; r < cols; ++r) {
            amplitude(l, r) = v.amplitudes()(l * cols + r);
        }
    }
    const Svd s = svd(amplitude);
    SchmidtDecomposition out;
    out.dimLeft = dimLeft;
    out.dimRight = dimRight;
    const std::size_t terms = std::min(dimLeft, dimRight);
    for (std::size_t j = 0; j < terms; ++j) {
        const auto k = static_cast<Eigen::Index>(j);
        out.coefficients.push_back(s.singular(k));
        out.leftBasis.emplace_back(StateVector::normalized(s.u.col(k)));
        // amplitude = U S V^dagger, so the right vectors are the conjugated rows of V^dagger.
        out.rightBasis.emplace_back(StateVector::normalized(s.vAdjoint.row(k).transpose()));
    }
    return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    const HermitianEigen e = eig_hermitian(m);
    RealVector roots(e.values.size());
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
        const double lambda = e.values(k);
        if (lambda < -kPsdSlack) {
            throw Error(ErrorCode::NotPsd, "matrix_sqrt_psd: eigenvalue " + std::to_string(lambda) +
                                               " is negative");
        }
        roots(k) = std::sqrt(std::max(lambda, 0.0));
    }
    ComplexMatrix out = e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double t) {
    const HermitianEigen e = eig_hermitian(h);
    ComplexVector phases(e.values.size());
    for (Eigen::Index k = 0; k < e.values.size(); ++k) {
        phases(k) = std::polar(1.0, -e.values(k) * t);
    }
    return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix fix_global_phase(const ComplexMatrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const Complex z = m(r, c);
            if (std::abs(z) > kPhaseEps) {
                ComplexMatrix out = m * (std::conj(z) / std::abs(z));
                out(r, c) = std::abs(z);
                return out;
            }
        }
    }
    return m;
}

double phase_invariant_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::Shape, "cannot compare " + shape_of(a) + " with " + shape_of(b));
    }
    const Complex overlap = (b.adjoint() * a).trace();
    const Complex phase = std::abs(overlap) > kPhaseEps ? overlap / std::abs(overlap) : Complex{1.0};
    return max_abs(a - phase * b);
}

}  // namespace qrev
