#include "symtoep/symbol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "symtoep/errors.hpp"
#include "symtoep/parallel.hpp"

namespace symtoep {

namespace {

constexpr double pi = std::numbers::pi;

void require_block(const Matrix& m, int k, const char* what) {
    if (m.rows() != 2 * k || m.cols() != 2 * k) {
        std::ostringstream os;
        os << what << ": expected " << 2 * k << "x" << 2 * k << " block, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
    if (!m.allFinite()) {
        std::ostringstream os;
        os << what << ": non-finite entry";
        throw DomainError(os.str());
    }
}

double asymmetry(const Matrix& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

double spectral_norm_symmetric(const Matrix& m) {
    const Matrix sym = 0.5 * (m + m.transpose());
    return Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

double GridSpec::theta(int g) const {
    return -pi + 2.0 * pi * static_cast<double>(g) / static_cast<double>(G);
}

void GridSpec::validate() const {
    if (G < 2) {
        std::ostringstream os;
        os << "grid needs G >= 2, got " << G;
        throw GridError(os.str());
    }
}

TrigMatrixPolynomial::TrigMatrixPolynomial(int k_, std::vector<Matrix> coeffs_, double sym_tol)
    : k(k_), coeffs(std::move(coeffs_)) {
    if (k < 1) {
        throw DimensionError("symbol needs k >= 1");
    }
    if (coeffs.empty()) {
        throw DimensionError("trig symbol needs at least the A_0 block");
    }
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        require_block(coeffs[n], k, "trig coefficient");
        const double scale = std::max(1.0, coeffs[n].cwiseAbs().maxCoeff());
        if (asymmetry(coeffs[n]) > sym_tol * scale) {
            std::ostringstream os;
            os << "coefficient A_" << n << " is not symmetric";
            throw SymmetryError(os.str());
        }
    }
}

Matrix TrigMatrixPolynomial::coefficient(int n) const {
    const auto idx = static_cast<std::size_t>(std::abs(n));
    if (idx >= coeffs.size()) {
        return Matrix::Zero(2 * k, 2 * k);
    }
    return coeffs[idx];
}

SampledSymbol::SampledSymbol(int k_, GridSpec grid_, std::vector<Matrix> values_)
    : k(k_), grid(grid_), values(std::move(values_)) {
    if (k < 1) {
        throw DimensionError("symbol needs k >= 1");
    }
    grid.validate();
    if (static_cast<int>(values.size()) != grid.G) {
        std::ostringstream os;
        os << "sampled symbol has " << values.size() << " values for a grid of " << grid.G << " nodes";
        throw GridError(os.str());
    }
    for (const auto& v : values) {
        require_block(v, k, "sampled value");
    }
}

int symbol_modes(const Symbol& s) {
    return std::visit([](const auto& x) { return x.k; }, s);
}

Matrix evaluate(const TrigMatrixPolynomial& s, double theta) {
    Matrix out = s.coeffs[0];
    for (int n = 1; n <= s.degree(); ++n) {
        out += (2.0 * std::cos(n * theta)) * s.coeffs[static_cast<std::size_t>(n)];
    }
    return out;
}

Matrix evaluate(const SampledSymbol& s, double theta) {
    if (!(theta >= -pi - 1e-12 && theta <= pi + 1e-12)) {
        std::ostringstream os;
        os << "theta = " << theta << " outside [-pi, pi]";
        throw GridError(os.str());
    }
    const double pos = (theta + pi) * s.grid.G / (2.0 * pi);
    const double node = std::round(pos);
    if (std::abs(pos - node) > 1e-9) {
        std::ostringstream os;
        os << "theta = " << theta << " is not a node of the G = " << s.grid.G
           << " grid; sampled symbols are not interpolated";
        throw GridError(os.str());
    }
    const int g = static_cast<int>(node) % s.grid.G;  // theta = pi wraps to -pi
    return s.values[static_cast<std::size_t>(g)];
}

Matrix evaluate(const Symbol& s, double theta) {
    return std::visit([theta](const auto& x) { return evaluate(x, theta); }, s);
}

Matrix fourier_coefficient(const SampledSymbol& s, int n) {
    const int G = s.grid.G;
    if (2 * (std::abs(n) + 1) > G) {
        std::ostringstream os;
        os << "Fourier coefficient n = " << n << " aliases on a G = " << G << " grid (need |n| <= G/2 - 1)";
        throw AliasingError(os.str());
    }
    Matrix acc = Matrix::Zero(2 * s.k, 2 * s.k);
    for (int g = 0; g < G; ++g) {
        acc += std::cos(n * s.grid.theta(g)) * s.values[static_cast<std::size_t>(g)];
    }
    return acc / static_cast<double>(G);
}

TrigMatrixPolynomial to_trig(const SampledSymbol& s, int degree) {
    if (degree < 0) {
        throw DimensionError("degree must be nonnegative");
    }
    std::vector<Matrix> coeffs;
    coeffs.reserve(static_cast<std::size_t>(degree) + 1);
    for (int n = 0; n <= degree; ++n) {
        Matrix c = fourier_coefficient(s, n);
        coeffs.push_back(0.5 * (c + c.transpose()));
    }
    return TrigMatrixPolynomial(s.k, std::move(coeffs));
}

double symbol_sup_norm(const Symbol& s, const GridSpec& grid) {
    grid.validate();
    double best = 0.0;
    for (int g = 0; g < grid.G; ++g) {
        best = std::max(best, spectral_norm_symmetric(evaluate(s, grid.theta(g))));
    }
    return best;
}

SymplecticCurves symplectic_curves(const Symbol& s, const GridSpec& grid, int threads) {
    grid.validate();
    const int k = symbol_modes(s);
    SymplecticCurves out{grid, Matrix(k, grid.G)};
    parallel_for(static_cast<std::size_t>(grid.G), threads, [&](std::size_t gi) {
        const int g = static_cast<int>(gi);
        const double theta = grid.theta(g);
        const Matrix value = evaluate(s, theta);
        try {
            const SymplecticSpectrum d = symplectic_eigenvalues(PositiveDefiniteMatrix(value));
            for (int j = 0; j < k; ++j) {
                out.values(j, g) = d.values[static_cast<std::size_t>(j)];
            }
        } catch (const PositivityError& e) {
            std::ostringstream os;
            os << "symbol is not positive definite at theta = " << theta << " (node " << g
               << "): smallest eigenvalue " << e.eigenvalue();
            throw PositivityError(os.str(), e.eigenvalue(), theta, true);
        }
    });
    return out;
}

double m_tilde(const SymplecticCurves& curves) {
    return curves.values.row(0).minCoeff();
}

double m_tilde(const Symbol& s, const GridSpec& grid, int threads) {
    return m_tilde(symplectic_curves(s, grid, threads));
}

GSymbolTest is_g_symbol(const Symbol& s, const GridSpec& grid, double tol, int threads) {
    const SymplecticCurves curves = symplectic_curves(s, grid, threads);
    Eigen::Index node = 0;
    const double m = curves.values.row(0).minCoeff(&node);
    return {m >= 0.5 - tol, m, static_cast<int>(node), grid.theta(static_cast<int>(node))};
}

bool is_partially_symmetric(const Symbol& s, double tol) {
    if (const auto* trig = std::get_if<TrigMatrixPolynomial>(&s)) {
        for (const auto& c : trig->coeffs) {
            if (asymmetry(c) > tol * std::max(1.0, c.cwiseAbs().maxCoeff())) {
                return false;
            }
        }
        return true;
    }
    const auto& sampled = std::get<SampledSymbol>(s);
    const int G = sampled.grid.G;
    for (int g = 0; g < G; ++g) {
        const Matrix& v = sampled.values[static_cast<std::size_t>(g)];
        const Matrix& mirror = sampled.values[static_cast<std::size_t>((G - g) % G)];
        const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
        if (asymmetry(v) > tol * scale || (v - mirror).cwiseAbs().maxCoeff() > tol * scale) {
            return false;
        }
    }
    return true;
}

TrigMatrixPolynomial build_constant(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0 || a.rows() == 0) {
        throw DimensionError("constant symbol needs an even square matrix");
    }
    return TrigMatrixPolynomial(static_cast<int>(a.rows() / 2), {a});
}

TrigMatrixPolynomial build_scalar(const std::vector<double>& phi_coeffs, int k) {
    if (phi_coeffs.empty()) {
        throw DimensionError("scalar symbol needs at least c_0");
    }
    if (k < 1) {
        throw DimensionError("scalar symbol needs k >= 1");
    }
    std::vector<Matrix> coeffs;
    coeffs.reserve(phi_coeffs.size());
    for (double c : phi_coeffs) {
        coeffs.push_back(c * Matrix::Identity(2 * k, 2 * k));
    }
    return TrigMatrixPolynomial(k, std::move(coeffs));
}

TrigMatrixPolynomial build_ab_family(const Matrix& a, const Matrix& b, const std::vector<double>& p, int N) {
    if (N < 0) {
        throw DimensionError("truncation N must be nonnegative");
    }
    if (static_cast<int>(p.size()) < N) {
        std::ostringstream os;
        os << "need " << N << " weights, got " << p.size();
        throw WeightError(os.str());
    }
    double total = 0.0;
    for (double w : p) {
        if (!(w >= 0.0)) {
            throw WeightError("weights must be nonnegative");
        }
        total += w;
    }
    if (total > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "weights sum to " << total << " > 1";
        throw WeightError(os.str());
    }
    if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols() || a.rows() % 2 != 0) {
        throw DimensionError("A and B must be even square matrices of the same size");
    }
    std::vector<Matrix> coeffs{a};
    for (int n = 1; n <= N; ++n) {
        coeffs.push_back(p[static_cast<std::size_t>(n - 1)] * b);
    }
    return TrigMatrixPolynomial(static_cast<int>(a.rows() / 2), std::move(coeffs));
}

std::vector<double> geometric_weights(double r, int N) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw WeightError("geometric ratio must lie in [0, 1)");
    }
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(std::max(N, 0)));
    double w = 1.0 - r;
    for (int j = 1; j <= N; ++j) {
        p.push_back(w);
        w *= r;
    }
    return p;
}

} // namespace symtoep
