#pragma once

#include <variant>
#include <vector>

#include "symtoep/symplectic.hpp"

namespace symtoep {

/// Uniform periodic grid theta_g = -pi + 2 pi g / G, g = 0..G-1.
struct GridSpec {
    int G = 4096;

    double theta(int g) const;
    void validate() const;
};

/// Even trigonometric matrix polynomial
///   A(theta) = A_0 + sum_{n=1..N} 2 cos(n theta) A_n,
/// i.e. the symbol whose Fourier coefficients satisfy A_{-n} = A_n.
struct TrigMatrixPolynomial {
    int k = 0;
    std::vector<Matrix> coeffs;  // A_0 .. A_N, each symmetric 2k x 2k

    TrigMatrixPolynomial() = default;
    TrigMatrixPolynomial(int k, std::vector<Matrix> coeffs, double sym_tol = 1e-12);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    /// A_n for any integer n (zero beyond the degree).
    Matrix coefficient(int n) const;
};

/// Symbol given by its values on the canonical uniform grid.
struct SampledSymbol {
    int k = 0;
    GridSpec grid;
    std::vector<Matrix> values;  // values[g] = A(theta_g)

    SampledSymbol() = default;
    SampledSymbol(int k, GridSpec grid, std::vector<Matrix> values);
};

using Symbol = std::variant<TrigMatrixPolynomial, SampledSymbol>;

/// d_j(theta_g): row j holds the j-th smallest symplectic eigenvalue at each node.
struct SymplecticCurves {
    GridSpec grid;
    Matrix values;  // k x G

    int modes() const { return static_cast<int>(values.rows()); }
    double min() const { return values.minCoeff(); }
    double max() const { return values.maxCoeff(); }
};

struct GSymbolTest {
    bool is_g_symbol;
    double m;          // grid minimum of d_1
    int node;          // argmin grid index
    double theta;      // argmin node angle
};

int symbol_modes(const Symbol& s);

Matrix evaluate(const TrigMatrixPolynomial& s, double theta);
Matrix evaluate(const SampledSymbol& s, double theta);
Matrix evaluate(const Symbol& s, double theta);

/// (1/G) sum_g A(theta_g) cos(n theta_g); exact for trig polynomials of
/// degree N when G > 2N.
Matrix fourier_coefficient(const SampledSymbol& s, int n);

/// Cosine-series reconstruction of a sampled symbol up to `degree`.
TrigMatrixPolynomial to_trig(const SampledSymbol& s, int degree);

/// max_g ||A(theta_g)||, a grid proxy for the essential supremum.
double symbol_sup_norm(const Symbol& s, const GridSpec& grid);

SymplecticCurves symplectic_curves(const Symbol& s, const GridSpec& grid, int threads = 1);

/// Grid proxy for ess inf_theta d_1(A(theta)).
double m_tilde(const Symbol& s, const GridSpec& grid, int threads = 1);
double m_tilde(const SymplecticCurves& curves);

GSymbolTest is_g_symbol(const Symbol& s, const GridSpec& grid, double tol, int threads = 1);

/// Real, even, symmetric at every point.
bool is_partially_symmetric(const Symbol& s, double tol);

TrigMatrixPolynomial build_constant(const Matrix& a);

/// phi(theta) I_{2k} where phi has cosine coefficients c_0, c_1, ...:
/// phi(theta) = c_0 + sum_{n>=1} 2 c_n cos(n theta).
TrigMatrixPolynomial build_scalar(const std::vector<double>& phi_coeffs, int k = 1);

/// A_0 = A, A_n = p_n B for 1 <= n <= N (p indexed from 1: p[0] is p_1).
TrigMatrixPolynomial build_ab_family(const Matrix& a, const Matrix& b, const std::vector<double>& p, int N);

/// p_j = (1 - r) r^{j-1}, j = 1..N. r = 1/2 gives 1/2, 1/4, 1/8, ...
std::vector<double> geometric_weights(double r, int N);

} // namespace symtoep
