#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwnet {

using Complex = std::complex<double>;

/// Raised when a numerical routine receives input outside its contract.
class NumericsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense complex matrix stored row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Matrix-vector product; throws NumericsError on dimension mismatch.
std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> x);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// Largest entrywise modulus of M^dagger M - I.
double unitarity_defect(const ComplexMatrix& m);

double norm2(std::span<const Complex> x);

inline constexpr double kHermitianTol = 1e-12;

struct EigenSystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns are orthonormal
};

/// Eigendecomposition of a Hermitian matrix. Rejects non-square input and
/// matrices whose Hermiticity defect exceeds 1e-12.
EigenSystem hermitian_eig(const ComplexMatrix& h);

/// exp(iH) for Hermitian H via its spectral decomposition.
ComplexMatrix unitary_exp_i(const ComplexMatrix& h);

/// -sum lambda log_base(lambda) over the spectrum of a density matrix.
/// Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative,
/// or a trace off 1 by more than 1e-8, is an error.
double von_neumann_entropy(const ComplexMatrix& rho, double base = 2.0);

}  // namespace qwnet
