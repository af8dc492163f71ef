#pragma once

// Dense complex linear algebra used throughout qrev. Matrices are plain
// Eigen::MatrixXcd values; the free functions here add the shape checks,
// orderings and phase conventions the rest of the library relies on.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qrev/error.hpp"

namespace qrev {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default entrywise comparison tolerance.
inline constexpr double kMatrixTol = 1e-9;
/// Eigenvalues in [-kPsdSlack, 0) are treated as roundoff and clamped.
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kNormTol = 1e-10;

/// Unit-norm vector of amplitudes.
class StateVector {
public:
    /// Throws Error(Domain) unless finite and normalized within kNormTol.
    explicit StateVector(ComplexVector amplitudes);

    /// Rescales to unit norm; throws Error(Domain) for the zero vector.
    static StateVector normalized(const ComplexVector& v);
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    const ComplexVector& amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    /// |psi><psi|
    ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

private:
    ComplexVector amps_;
};

struct SchmidtDecomposition {
    std::size_t dimLeft = 0;
    std::size_t dimRight = 0;
    /// min(dimLeft, dimRight) coefficients, descending; trailing zeros kept.
    std::vector<double> coefficients;
    std::vector<StateVector> leftBasis;
    std::vector<StateVector> rightBasis;

    /// Number of coefficients above tol.
    std::size_t rank(double tol = 1e-12) const;
    ComplexVector reconstruct() const;
};

struct PolarDecomposition {
    ComplexMatrix unitary;
    ComplexMatrix positive;
};

struct HermitianEigen {
    RealVector values;       // descending
    ComplexMatrix vectors;   // orthonormal columns, matching values
};

struct Svd {
    ComplexMatrix u;
    RealVector singular;     // descending, nonnegative
    ComplexMatrix vAdjoint;
};

// Construction ---------------------------------------------------------------

ComplexMatrix identity(std::size_t n);
ComplexMatrix zeros(std::size_t rows, std::size_t cols);
/// Builds a square diagonal matrix from real entries.
ComplexMatrix diagonal(std::span<const double> entries);

// Composition ----------------------------------------------------------------

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
/// Kronecker product; block (i,j) equals a(i,j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

/// Reduced operator on the subsystems listed in `keep` (indices into dims,
/// in any order; the result follows the original subsystem order).
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

Complex trace(const ComplexMatrix& m);

// Predicates -----------------------------------------------------------------

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool all_finite(const ComplexMatrix& m);
bool is_square(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kMatrixTol);
bool is_unitary(const ComplexMatrix& m, double tol = kMatrixTol);

// Decompositions -------------------------------------------------------------

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are returned in
/// descending order and each eigenvector is scaled so that its first
/// component with modulus above 1e-12 is real and positive.
/// Throws Error(Domain) when the input is not Hermitian within kMatrixTol.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

/// Full SVD m = u * diag(singular) * vAdjoint.
Svd svd(const ComplexMatrix& m);

/// m = unitary * positive with positive = sqrt(m^dagger m). For singular m
/// the unitary is u * vAdjoint from the SVD, which fixes the completion on
/// the null directions.
PolarDecomposition polar(const ComplexMatrix& m);

SchmidtDecomposition schmidt(const StateVector& v, std::size_t dimLeft, std::size_t dimRight);

/// Principal square root of a PSD matrix. Throws Error(NotPsd) when an
/// eigenvalue is below -kPsdSlack.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

/// exp(-i * h * t) for Hermitian h.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double t);

/// Multiplies m by the phase that makes its first entry (column-major) with
/// modulus above 1e-12 real and positive.
ComplexMatrix fix_global_phase(const ComplexMatrix& m);

/// max_abs(a - e^{i phi} b) with phi chosen to align b with a in the
/// Frobenius inner product. Zero iff a and b agree up to a global phase.
double phase_invariant_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qrev
