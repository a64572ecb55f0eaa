#pragma once

#include <vector>

#include "symtoep/szego.hpp"

namespace symtoep {

enum class LogBase { natural, two };

/// What to do with symplectic eigenvalues below the vacuum value 1/2.
/// Values within clamp_tol of 1/2 (either side) are treated as exactly 1/2 and
/// contribute zero entropy. Anything lower
/// throws under `strict` and is clamped (and counted) under `lenient`.
enum class ClampPolicy { strict, lenient };

struct EntropyOptions {
    LogBase base = LogBase::natural;
    ClampPolicy policy = ClampPolicy::strict;
    double clamp_tol = 1e-10;
};

struct EntropySum {
    double value = 0.0;
    int violations = 0;  // eigenvalues below 1/2 - clamp_tol (lenient mode only)
};

struct EntropyReport {
    int G = 0;
    std::vector<int> n_list;
    std::vector<double> rates;      // S(T_n) / n
    std::vector<double> gaps;       // |rate - integral|
    double integral = 0.0;          // (1/G) sum_g S(A(theta_g))
    double integral_refined = 0.0;  // on the 2G grid
    double quadrature_drift = 0.0;
    double tolerance = 0.0;
    double quadrature_tolerance = 0.0;
    int violations = 0;
    bool gap_passed = false;
    bool quadrature_consistent = false;

    bool passed() const { return gap_passed && quadrature_consistent; }
};

/// f(x) = (x + 1/2) log(x + 1/2) - (x - 1/2) log(x - 1/2) for x > 1/2, else 0.
double entropy_f(double x, LogBase base = LogBase::natural);

/// H(t) = -t log t - (1 - t) log(1 - t).
double shannon_entropy(double t, LogBase base = LogBase::natural);

/// ((2d + 1) / 2) H((2d - 1) / (2d + 1)); algebraically equal to entropy_f(d).
double mode_entropy_shannon_form(double d, LogBase base = LogBase::natural);

/// The entropy function packaged for Szego averages.
TestFunction entropy_function(LogBase base = LogBase::natural);

EntropySum spectrum_entropy(const SymplecticSpectrum& d, const EntropyOptions& opts = {});

/// Von Neumann entropy of the Gaussian state with covariance matrix A.
EntropySum state_entropy(const PositiveDefiniteMatrix& a, const EntropyOptions& opts = {});

/// S(T_n) / n for each n.
std::vector<double> entropy_rate_sequence(const TrigMatrixPolynomial& s, const std::vector<int>& n_list,
                                          const EntropyOptions& opts = {}, const SweepOptions& sweep = {});

/// (1/G) sum_g S(A(theta_g)).
double entropy_rate_integral(const Symbol& s, const GridSpec& grid, const EntropyOptions& opts = {},
                             int threads = 1);

EntropyReport entropy_rate_report(const TrigMatrixPolynomial& s, const std::vector<int>& n_list,
                                  const GridSpec& grid, double tolerance, double quadrature_tolerance = 1e-8,
                                  const EntropyOptions& opts = {}, const SweepOptions& sweep = {});

} // namespace symtoep
