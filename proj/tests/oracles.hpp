#pragma once

// Test-only reference computations. Nothing here calls into the eigensolver,
// so these stay independent of the code paths they check.

#include "qwnet/numerics.hpp"
#include "qwnet/rng.hpp"

#include <cmath>
#include <vector>

namespace qwnet::oracle {

/// sum_{m < terms} (iH)^m / m!
inline ComplexMatrix exp_i_series(const ComplexMatrix& h, int terms = 30) {
    const std::size_t n = h.rows();
    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    const ComplexMatrix ih = h * Complex(0.0, 1.0);
    for (int m = 1; m < terms; ++m) {
        term = term * ih;
        term *= Complex(1.0 / m);
        sum += term;
    }
    return sum;
}

/// Characteristic polynomial coefficients c_0..c_n of det(lambda I - A),
/// highest degree first (c_0 = 1), via Faddeev-LeVerrier.
inline std::vector<Complex> char_poly(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Complex> c(n + 1);
    c[0] = 1.0;
    ComplexMatrix m(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + ComplexMatrix::identity(n) * c[k - 1];
        c[k] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

inline Complex poly_eval(const std::vector<Complex>& c, Complex x) {
    Complex acc{};
    for (const auto& coeff : c) acc = acc * x + coeff;
    return acc;
}

/// Random Hermitian matrix with entries scaled so the Frobenius norm is at
/// most `max_norm`.
inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n, double max_norm) {
    ComplexMatrix h(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        h(r, r) = 2.0 * rng.uniform() - 1.0;
        for (std::size_t c = r + 1; c < n; ++c) {
            h(r, c) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
            h(c, r) = std::conj(h(r, c));
        }
    }
    double fro = 0.0;
    for (const auto& z : h.entries()) fro += std::norm(z);
    fro = std::sqrt(fro);
    if (fro > 0.0) h *= Complex(max_norm * rng.uniform() / fro);
    return h;
}

inline std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n) {
    std::vector<Complex> v(n);
    for (auto& z : v) z = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    const double nrm = norm2(v);
    for (auto& z : v) z /= nrm;
    return v;
}

/// Random unitary via Gram-Schmidt on random columns.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    std::vector<std::vector<Complex>> cols;
    while (cols.size() < n) {
        auto v = random_unit_vector(rng, n);
        for (const auto& q : cols) {
            Complex dot{};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
        }
        const double nrm = norm2(v);
        if (nrm < 1e-8) continue;
        for (auto& z : v) z /= nrm;
        cols.push_back(std::move(v));
    }
    ComplexMatrix u(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = cols[c][r];
    return u;
}

}  // namespace qwnet::oracle
