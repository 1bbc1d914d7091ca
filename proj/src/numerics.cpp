#include "qwnet/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qwnet {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw NumericsError(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + ")");
    }
}

void require_hermitian(const ComplexMatrix& h, const char* what) {
    if (!h.is_square()) {
        throw NumericsError(std::string(what) + ": matrix is not square");
    }
    const double defect = hermiticity_defect(h);
    if (defect > kHermitianTol) {
        throw NumericsError(std::string(what) + ": matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw NumericsError("ComplexMatrix: entry count " + std::to_string(data_.size()) + " does not match " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& x : data_) x *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw NumericsError("operator*: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> x) {
    if (m.cols() != x.size()) {
        throw NumericsError("apply: matrix has " + std::to_string(m.cols()) + " columns but vector has " +
                            std::to_string(x.size()) + " entries");
    }
    std::vector<Complex> y(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
    return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (!m.is_square()) throw NumericsError("hermiticity_defect: matrix is not square");
    double worst = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r; c < m.cols(); ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    return worst;
}

double unitarity_defect(const ComplexMatrix& m) {
    if (!m.is_square()) throw NumericsError("unitarity_defect: matrix is not square");
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows()));
}

double norm2(std::span<const Complex> x) {
    double acc = 0.0;
    for (const auto& z : x) acc += std::norm(z);
    return std::sqrt(acc);
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
    require_hermitian(h, "hermitian_eig");
    const auto n = static_cast<Eigen::Index>(h.rows());
    if (n == 0) return {};

    Eigen::MatrixXcd dense(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) dense(r, c) = h(r, c);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw NumericsError("hermitian_eig: eigensolver did not converge");
    }

    EigenSystem sys;
    sys.eigenvalues.resize(h.rows());
    sys.eigenvectors = ComplexMatrix(h.rows(), h.cols());
    // Eigen returns eigenvalues in increasing order.
    for (Eigen::Index j = 0; j < n; ++j) {
        sys.eigenvalues[j] = solver.eigenvalues()(j);
        for (Eigen::Index r = 0; r < n; ++r) sys.eigenvectors(r, j) = solver.eigenvectors()(r, j);
    }
    return sys;
}

ComplexMatrix unitary_exp_i(const ComplexMatrix& h) {
    const auto sys = hermitian_eig(h);
    const std::size_t n = h.rows();
    const auto& v = sys.eigenvectors;

    std::vector<Complex> phase(n);
    for (std::size_t j = 0; j < n; ++j) phase[j] = std::polar(1.0, sys.eigenvalues[j]);

    // V diag(phase) V^dagger
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex left = v(r, j) * phase[j];
            if (left == Complex{}) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += left * std::conj(v(c, j));
        }
    }
    return out;
}

double von_neumann_entropy(const ComplexMatrix& rho, double base) {
    if (!(base > 0.0) || base == 1.0) throw NumericsError("von_neumann_entropy: invalid log base");
    require_hermitian(rho, "von_neumann_entropy");
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-8) {
        throw NumericsError("von_neumann_entropy: trace " + std::to_string(tr) + " is not 1");
    }
    const auto sys = hermitian_eig(rho);
    const double log_base = std::log(base);
    double entropy = 0.0;
    for (double lambda : sys.eigenvalues) {
        if (lambda < -1e-10) {
            throw NumericsError("von_neumann_entropy: negative eigenvalue " + std::to_string(lambda));
        }
        if (lambda <= 0.0) continue;
        entropy -= lambda * std::log(lambda) / log_base;
    }
    return std::max(entropy, 0.0);
}

}  // namespace qwnet
