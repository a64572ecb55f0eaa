#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "symtoep/symbol.hpp"
#include "symtoep/toeplitz.hpp"

namespace symtoep {

/// Continuous test function f on [lo, hi].
struct TestFunction {
    std::string name;
    std::function<double(double)> eval;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    double operator()(double x) const { return eval(x); }
};

TestFunction constant_function(double c);
TestFunction monomial(int degree);
/// c_0 + c_1 x + c_2 x^2 + ...
TestFunction polynomial(std::vector<double> coeffs);
/// Piecewise linear: 0 outside [left, right], 1 at peak.
TestFunction hat_function(double left, double peak, double right);
/// exp(-dist(x, [a, b]) / eps)
TestFunction smoothed_indicator(double a, double b, double eps);

struct SweepOptions {
    int threads = 1;
    int max_dim = default_max_dim;
};

/// Symplectic spectra of T_n for every n of an ascending list.
struct SpectrumTrajectory {
    int k = 0;
    std::vector<int> n_list;
    std::vector<SymplecticSpectrum> spectra;
    bool monotone = true;              // d_m^{(n')} <= d_m^{(n)} + 1e-10 for n < n'
    double worst_increase = 0.0;       // largest observed d_m^{(n')} - d_m^{(n)}
};

struct SzegoReport {
    std::string function;
    int G = 0;
    std::vector<int> n_list;
    std::vector<double> averages;  // (1/n) sum_j f(d_j^{(n)})
    std::vector<double> gaps;      // |average - integral|
    double integral = 0.0;         // (1/G) sum_g sum_j f(d_j(theta_g))
    double integral_refined = 0.0; // same on the 2G grid
    double quadrature_drift = 0.0;
    double tolerance = 0.0;
    double quadrature_tolerance = 0.0;
    bool gap_passed = false;
    bool quadrature_consistent = false;

    bool passed() const { return gap_passed && quadrature_consistent; }
};

struct MinTrajectory {
    int m = 1;
    std::vector<int> n_list;
    std::vector<double> values;  // d_m^{(n)}
    double m_tilde = 0.0;
    double limit_gap = 0.0;      // |d_m^{(n_max)} - m_tilde|
    bool monotone = true;
};

struct CountingReport {
    double a = 0.0;
    double b = 0.0;
    std::vector<int> n_list;
    std::vector<int> counts;      // c_n(K)
    std::vector<double> ratios;   // c_n(K) / n
    double limit_measure = std::numeric_limits<double>::quiet_NaN();
    // Smoothed cross-check: for each eps, the Szego averages of exp(-dist/eps)
    // and the matching symbol integral.
    std::vector<double> eps;
    std::vector<std::vector<double>> smoothed_averages;
    std::vector<double> smoothed_integrals;
};

struct DensityReport {
    double delta = 0.0;
    int n_max = 0;
    double m_tilde = 0.0;
    double sup_norm = 0.0;
    double coverage = 0.0;          // max_{j,g} dist(d_j(theta_g), D_{<=n_max})
    std::vector<int> n_list;        // 1..n_max
    std::vector<int> escape_counts; // c_n(X_delta)
    std::vector<double> escape;     // c_n(X_delta) / n
};

SpectrumTrajectory truncated_spectra(const TrigMatrixPolynomial& s, const std::vector<int>& n_list,
                                     const SweepOptions& opts = {});

/// (1/n) sum_{j=1..kn} f(d_j); normalized by n, not kn.
double szego_average(const SymplecticSpectrum& d, int n, const TestFunction& f);

double symbol_integral(const SymplecticCurves& curves, const TestFunction& f);
double symbol_integral(const Symbol& s, const TestFunction& f, const GridSpec& grid, int threads = 1);

SzegoReport convergence_report(const TrigMatrixPolynomial& s, const TestFunction& f, const std::vector<int>& n_list,
                               const GridSpec& grid, double tolerance, double quadrature_tolerance = 1e-8,
                               const SweepOptions& opts = {});

/// Same report from precomputed spectra and curves on the G and 2G grids.
SzegoReport convergence_report(const SpectrumTrajectory& traj, const SymplecticCurves& curves,
                               const SymplecticCurves& refined, const TestFunction& f, double tolerance,
                               double quadrature_tolerance = 1e-8);

MinTrajectory min_trajectory(const TrigMatrixPolynomial& s, int m, const std::vector<int>& n_list,
                             const GridSpec& grid, const SweepOptions& opts = {});

/// c_n([a, b]) / n with inclusive endpoints.
CountingReport counting_ratio(const SpectrumTrajectory& trajectory, double a, double b);

/// (1/G) sum_j #{g : d_j(theta_g) in [a, b]}, the grid version of
/// (1/2pi) sum_j |{theta : d_j(theta) in [a, b]}|.
double limit_measure(const SymplecticCurves& curves, double a, double b);

CountingReport counting_report(const TrigMatrixPolynomial& s, double a, double b, const std::vector<int>& n_list,
                               const GridSpec& grid, const std::vector<double>& eps = {0.2, 0.1, 0.05},
                               const SweepOptions& opts = {});

DensityReport density_check(const TrigMatrixPolynomial& s, int n_max, double delta, const GridSpec& grid,
                            const SweepOptions& opts = {});

} // namespace symtoep
