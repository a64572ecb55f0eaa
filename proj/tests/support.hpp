#pragma once

// Test-only generators and oracles. Nothing here calls into the library's
// symplectic routines, so the oracles stay independent of the code they check.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testing {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Random symmetric positive definite matrix G G^T / dim + shift * I.
inline Matrix random_pd(int dim, std::mt19937_64& rng, double shift = 0.1) {
    std::normal_distribution<double> normal;
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = normal(rng);
        }
    }
    Matrix a = g * g.transpose() / dim + shift * Matrix::Identity(dim, dim);
    return 0.5 * (a + a.transpose());
}

inline Matrix random_symmetric(int dim, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> normal;
    Matrix s(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j <= i; ++j) {
            s(i, j) = s(j, i) = scale * normal(rng);
        }
    }
    return s;
}

/// Coefficients A_0, ..., A_degree of a random even symbol on 2k x 2k blocks.
/// A_0 carries a diagonal shift of 2 * degree + 1 so the symbol is usually
/// positive definite.
inline std::vector<Matrix> random_symbol_coeffs(int k, int degree, std::mt19937_64& rng) {
    std::vector<Matrix> coeffs{random_pd(2 * k, rng, 2.0 * degree + 1.0)};
    for (int n = 1; n <= degree; ++n) {
        coeffs.push_back(random_symmetric(2 * k, rng, 0.3));
    }
    return coeffs;
}

inline Matrix form(int k) {
    Matrix j = Matrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        j(2 * i, 2 * i + 1) = 1.0;
        j(2 * i + 1, 2 * i) = -1.0;
    }
    return j;
}

/// Oracle: positive imaginary parts of the eigenvalues of J A, ascending,
/// via Eigen's general (nonsymmetric) eigensolver.
inline std::vector<double> nonsymmetric_symplectic_oracle(const Matrix& a) {
    const int k = static_cast<int>(a.rows() / 2);
    Eigen::EigenSolver<Matrix> es(form(k) * a, false);
    std::vector<double> im;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        im.push_back(std::abs(es.eigenvalues()(i).imag()));
    }
    std::sort(im.begin(), im.end());
    std::vector<double> out;
    for (std::size_t i = 0; i < im.size(); i += 2) {
        out.push_back(0.5 * (im[i] + im[i + 1]));
    }
    return out;
}

/// Eigenvalues of the n x n tridiagonal Toeplitz matrix with diagonal a and
/// off-diagonal b: a + 2b cos(j pi / (n + 1)), sorted ascending.
inline std::vector<double> tridiagonal_closed_form(int n, double a, double b) {
    std::vector<double> out;
    for (int j = 1; j <= n; ++j) {
        out.push_back(a + 2.0 * b * std::cos(j * std::numbers::pi / (n + 1)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Scalar Toeplitz matrix [c_{|i-j|}] built by hand.
inline Matrix scalar_toeplitz(const std::vector<double>& c, int n) {
    Matrix t = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto lag = static_cast<std::size_t>(std::abs(i - j));
            if (lag < c.size()) {
                t(i, j) = c[lag];
            }
        }
    }
    return t;
}

inline double min_symmetric_eigenvalue(const Matrix& m) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

/// Closed-form entropy function in natural log, written independently of the library.
inline double entropy_closed_form(double x) {
    if (x <= 0.5) {
        return 0.0;
    }
    return (x + 0.5) * std::log(x + 0.5) - (x - 0.5) * std::log(x - 0.5);
}

} // namespace testing
