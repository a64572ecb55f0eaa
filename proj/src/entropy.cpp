#include "symtoep/entropy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "symtoep/errors.hpp"

namespace symtoep {

namespace {

double to_base(double nats, LogBase base) {
    return base == LogBase::two ? nats / std::numbers::ln2 : nats;
}

// Contribution of one symplectic eigenvalue under the clamp policy. Values
// within clamp_tol of 1/2 on either side are the vacuum and contribute exactly
// zero; anything lower is a violation.
double clamped_f(double d, const EntropyOptions& opts, int& violations) {
    if (d > 0.5 + opts.clamp_tol) {
        return entropy_f(d, opts.base);
    }
    if (d >= 0.5 - opts.clamp_tol) {
        return 0.0;
    }
    if (opts.policy == ClampPolicy::strict) {
        std::ostringstream os;
        os << "symplectic eigenvalue " << d << " < 1/2: not a G-matrix (use lenient mode to clamp)";
        throw DomainError(os.str());
    }
    ++violations;
    return 0.0;
}

} // namespace

double entropy_f(double x, LogBase base) {
    if (!(x >= 0.0)) {
        std::ostringstream os;
        os << "entropy function undefined for x = " << x;
        throw DomainError(os.str());
    }
    if (x <= 0.5) {
        return 0.0;
    }
    const double t = x - 0.5;
    // (1 + t) log(1 + t) - t log t rearranged so large t does not cancel
    return to_base(std::log1p(t) + t * std::log1p(1.0 / t), base);
}

double shannon_entropy(double t, LogBase base) {
    if (!(t >= 0.0 && t <= 1.0)) {
        std::ostringstream os;
        os << "Shannon entropy undefined for t = " << t;
        throw DomainError(os.str());
    }
    double h = 0.0;
    if (t > 0.0) {
        h -= t * std::log(t);
    }
    if (t < 1.0) {
        h -= (1.0 - t) * std::log1p(-t);
    }
    return to_base(h, base);
}

double mode_entropy_shannon_form(double d, LogBase base) {
    if (!(d >= 0.5)) {
        throw DomainError("Shannon form needs d >= 1/2");
    }
    return 0.5 * (2.0 * d + 1.0) * shannon_entropy((2.0 * d - 1.0) / (2.0 * d + 1.0), base);
}

TestFunction entropy_function(LogBase base) {
    return {base == LogBase::two ? "entropy_f[log2]" : "entropy_f", [base](double x) { return entropy_f(x, base); }};
}

EntropySum spectrum_entropy(const SymplecticSpectrum& d, const EntropyOptions& opts) {
    EntropySum out;
    for (double x : d.values) {
        out.value += clamped_f(x, opts, out.violations);
    }
    return out;
}

EntropySum state_entropy(const PositiveDefiniteMatrix& a, const EntropyOptions& opts) {
    return spectrum_entropy(symplectic_eigenvalues(a), opts);
}

std::vector<double> entropy_rate_sequence(const TrigMatrixPolynomial& s, const std::vector<int>& n_list,
                                          const EntropyOptions& opts, const SweepOptions& sweep) {
    const SpectrumTrajectory traj = truncated_spectra(s, n_list, sweep);
    std::vector<double> out;
    out.reserve(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        out.push_back(spectrum_entropy(traj.spectra[i], opts).value / n_list[i]);
    }
    return out;
}

double entropy_rate_integral(const Symbol& s, const GridSpec& grid, const EntropyOptions& opts, int threads) {
    const SymplecticCurves curves = symplectic_curves(s, grid, threads);
    double acc = 0.0;
    int ignored = 0;
    for (int g = 0; g < grid.G; ++g) {
        for (int j = 0; j < curves.modes(); ++j) {
            acc += clamped_f(curves.values(j, g), opts, ignored);
        }
    }
    return acc / static_cast<double>(grid.G);
}

EntropyReport entropy_rate_report(const TrigMatrixPolynomial& s, const std::vector<int>& n_list,
                                  const GridSpec& grid, double tolerance, double quadrature_tolerance,
                                  const EntropyOptions& opts, const SweepOptions& sweep) {
    const SpectrumTrajectory traj = truncated_spectra(s, n_list, sweep);
    EntropyReport r;
    r.G = grid.G;
    r.n_list = n_list;
    r.tolerance = tolerance;
    r.quadrature_tolerance = quadrature_tolerance;
    r.integral = entropy_rate_integral(s, grid, opts, sweep.threads);
    r.integral_refined = entropy_rate_integral(s, GridSpec{2 * grid.G}, opts, sweep.threads);
    r.quadrature_drift = std::abs(r.integral - r.integral_refined);
    r.quadrature_consistent = r.quadrature_drift <= quadrature_tolerance;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const EntropySum e = spectrum_entropy(traj.spectra[i], opts);
        r.violations += e.violations;
        const double rate = e.value / n_list[i];
        r.rates.push_back(rate);
        r.gaps.push_back(std::abs(rate - r.integral));
    }
    r.gap_passed = r.gaps.back() <= tolerance;
    return r;
}

} // namespace symtoep
