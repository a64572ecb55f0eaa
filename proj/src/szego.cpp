#include "symtoep/szego.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symtoep/errors.hpp"
#include "symtoep/parallel.hpp"

namespace symtoep {

namespace {

void require_ascending(const std::vector<int>& n_list) {
    if (n_list.empty()) {
        throw DimensionError("n_list is empty");
    }
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
            throw DimensionError("n_list must be strictly ascending positive integers");
        }
    }
}

// Distance from x to the nearest entry of a sorted, nonempty list.
double distance_to_sorted(const std::vector<double>& sorted, double x) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != sorted.end()) {
        best = *it - x;
    }
    if (it != sorted.begin()) {
        best = std::min(best, x - *std::prev(it));
    }
    return best;
}

int count_in(const SymplecticSpectrum& d, double a, double b) {
    return static_cast<int>(std::count_if(d.values.begin(), d.values.end(), [&](double x) { return x >= a && x <= b; }));
}

} // namespace

TestFunction constant_function(double c) {
    std::ostringstream os;
    os << "const(" << c << ")";
    return {os.str(), [c](double) { return c; }};
}

TestFunction monomial(int degree) {
    if (degree < 0) {
        throw DomainError("monomial degree must be nonnegative");
    }
    return {"x^" + std::to_string(degree), [degree](double x) { return std::pow(x, degree); }};
}

TestFunction polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) {
        throw DomainError("polynomial needs at least one coefficient");
    }
    return {"polynomial(" + std::to_string(coeffs.size() - 1) + ")", [c = std::move(coeffs)](double x) {
                double acc = 0.0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) {
                    acc = acc * x + *it;
                }
                return acc;
            }};
}

TestFunction hat_function(double left, double peak, double right) {
    if (!(left < peak && peak < right)) {
        throw DomainError("hat function needs left < peak < right");
    }
    std::ostringstream os;
    os << "hat(" << left << "," << peak << "," << right << ")";
    return {os.str(), [=](double x) {
                if (x <= left || x >= right) {
                    return 0.0;
                }
                return x <= peak ? (x - left) / (peak - left) : (right - x) / (right - peak);
            }};
}

TestFunction smoothed_indicator(double a, double b, double eps) {
    if (!(a <= b) || !(eps > 0.0)) {
        throw DomainError("smoothed indicator needs a <= b and eps > 0");
    }
    std::ostringstream os;
    os << "exp(-dist(x,[" << a << "," << b << "])/" << eps << ")";
    return {os.str(), [=](double x) {
                const double g = x < a ? a - x : (x > b ? x - b : 0.0);
                return std::exp(-g / eps);
            }};
}

SpectrumTrajectory truncated_spectra(const TrigMatrixPolynomial& s, const std::vector<int>& n_list,
                                     const SweepOptions& opts) {
    require_ascending(n_list);
    SpectrumTrajectory out;
    out.k = s.k;
    out.n_list = n_list;
    out.spectra.resize(n_list.size());
    parallel_for(n_list.size(), opts.threads, [&](std::size_t i) {
        const int n = n_list[i];
        const BlockToeplitzTruncation t = assemble(s, n, opts.max_dim);
        try {
            out.spectra[i] = symplectic_eigenvalues(PositiveDefiniteMatrix(t.matrix));
        } catch (const PositivityError& e) {
            std::ostringstream os;
            os << "T_" << n << " is not positive definite: " << e.what();
            throw PositivityError(os.str(), e.eigenvalue());
        }
    });

    for (std::size_t i = 1; i < out.spectra.size(); ++i) {
        const auto& prev = out.spectra[i - 1].values;
        const auto& next = out.spectra[i].values;
        const double slack = 1e-10 * std::max(1.0, next.back());
        for (std::size_t m = 0; m < prev.size(); ++m) {
            const double rise = next[m] - prev[m];
            out.worst_increase = std::max(out.worst_increase, rise);
            if (rise > slack) {
                out.monotone = false;
            }
        }
    }
    return out;
}

double szego_average(const SymplecticSpectrum& d, int n, const TestFunction& f) {
    if (n < 1) {
        throw DimensionError("szego_average needs n >= 1");
    }
    double acc = 0.0;
    for (double x : d.values) {
        if (x < f.lo || x > f.hi) {
            std::ostringstream os;
            os << "symplectic eigenvalue " << x << " outside the domain [" << f.lo << ", " << f.hi << "] of "
               << f.name;
            throw DomainError(os.str());
        }
        acc += f(x);
    }
    return acc / static_cast<double>(n);
}

double symbol_integral(const SymplecticCurves& curves, const TestFunction& f) {
    const int G = curves.grid.G;
    double acc = 0.0;
    for (int g = 0; g < G; ++g) {
        for (int j = 0; j < curves.modes(); ++j) {
            acc += f(curves.values(j, g));
        }
    }
    return acc / static_cast<double>(G);
}

double symbol_integral(const Symbol& s, const TestFunction& f, const GridSpec& grid, int threads) {
    return symbol_integral(symplectic_curves(s, grid, threads), f);
}

SzegoReport convergence_report(const SpectrumTrajectory& traj, const SymplecticCurves& curves,
                               const SymplecticCurves& refined, const TestFunction& f, double tolerance,
                               double quadrature_tolerance) {
    if (traj.spectra.empty()) {
        throw DimensionError("convergence_report needs a nonempty n list");
    }
    SzegoReport r;
    r.function = f.name;
    r.G = curves.grid.G;
    r.n_list = traj.n_list;
    r.tolerance = tolerance;
    r.quadrature_tolerance = quadrature_tolerance;
    r.integral = symbol_integral(curves, f);
    r.integral_refined = symbol_integral(refined, f);
    r.quadrature_drift = std::abs(r.integral - r.integral_refined);
    r.quadrature_consistent = r.quadrature_drift <= quadrature_tolerance;
    for (std::size_t i = 0; i < traj.n_list.size(); ++i) {
        const double avg = szego_average(traj.spectra[i], traj.n_list[i], f);
        r.averages.push_back(avg);
        r.gaps.push_back(std::abs(avg - r.integral));
    }
    r.gap_passed = r.gaps.back() <= tolerance;
    return r;
}

SzegoReport convergence_report(const TrigMatrixPolynomial& s, const TestFunction& f, const std::vector<int>& n_list,
                               const GridSpec& grid, double tolerance, double quadrature_tolerance,
                               const SweepOptions& opts) {
    return convergence_report(truncated_spectra(s, n_list, opts), symplectic_curves(s, grid, opts.threads),
                              symplectic_curves(s, GridSpec{2 * grid.G}, opts.threads), f, tolerance,
                              quadrature_tolerance);
}

MinTrajectory min_trajectory(const TrigMatrixPolynomial& s, int m, const std::vector<int>& n_list,
                             const GridSpec& grid, const SweepOptions& opts) {
    require_ascending(n_list);
    if (m < 1 || m > s.k * n_list.front()) {
        std::ostringstream os;
        os << "index m = " << m << " undefined for n = " << n_list.front() << " (need 1 <= m <= "
           << s.k * n_list.front() << ")";
        throw IndexError(os.str());
    }
    const SpectrumTrajectory traj = truncated_spectra(s, n_list, opts);
    MinTrajectory out;
    out.m = m;
    out.n_list = n_list;
    for (const auto& d : traj.spectra) {
        out.values.push_back(d.values[static_cast<std::size_t>(m - 1)]);
    }
    for (std::size_t i = 1; i < out.values.size(); ++i) {
        if (out.values[i] > out.values[i - 1] + 1e-10 * std::max(1.0, out.values[i - 1])) {
            out.monotone = false;
        }
    }
    out.m_tilde = m_tilde(s, grid, opts.threads);
    out.limit_gap = std::abs(out.values.back() - out.m_tilde);
    return out;
}

CountingReport counting_ratio(const SpectrumTrajectory& trajectory, double a, double b) {
    if (!(a <= b) || a < 0.0) {
        throw DomainError("counting interval needs 0 <= a <= b");
    }
    CountingReport r;
    r.a = a;
    r.b = b;
    r.n_list = trajectory.n_list;
    for (std::size_t i = 0; i < trajectory.spectra.size(); ++i) {
        const int c = count_in(trajectory.spectra[i], a, b);
        r.counts.push_back(c);
        r.ratios.push_back(static_cast<double>(c) / trajectory.n_list[i]);
    }
    return r;
}

double limit_measure(const SymplecticCurves& curves, double a, double b) {
    const Eigen::Index inside = ((curves.values.array() >= a) && (curves.values.array() <= b)).count();
    return static_cast<double>(inside) / static_cast<double>(curves.grid.G);
}

CountingReport counting_report(const TrigMatrixPolynomial& s, double a, double b, const std::vector<int>& n_list,
                               const GridSpec& grid, const std::vector<double>& eps, const SweepOptions& opts) {
    const SpectrumTrajectory traj = truncated_spectra(s, n_list, opts);
    const SymplecticCurves curves = symplectic_curves(s, grid, opts.threads);
    CountingReport r = counting_ratio(traj, a, b);
    r.limit_measure = limit_measure(curves, a, b);
    for (double e : eps) {
        const TestFunction f = smoothed_indicator(a, b, e);
        r.eps.push_back(e);
        std::vector<double> series;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            series.push_back(szego_average(traj.spectra[i], n_list[i], f));
        }
        r.smoothed_averages.push_back(std::move(series));
        r.smoothed_integrals.push_back(symbol_integral(curves, f));
    }
    return r;
}

DensityReport density_check(const TrigMatrixPolynomial& s, int n_max, double delta, const GridSpec& grid,
                            const SweepOptions& opts) {
    if (!(delta > 0.0)) {
        throw DomainError("delta must be positive");
    }
    if (n_max < 1) {
        throw DimensionError("n_max must be >= 1");
    }
    std::vector<int> n_list(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        n_list[static_cast<std::size_t>(n - 1)] = n;
    }
    const SpectrumTrajectory traj = truncated_spectra(s, n_list, opts);
    const SymplecticCurves curves = symplectic_curves(s, grid, opts.threads);

    DensityReport r;
    r.delta = delta;
    r.n_max = n_max;
    r.n_list = n_list;
    r.m_tilde = m_tilde(curves);
    r.sup_norm = symbol_sup_norm(s, grid);

    std::vector<double> all;
    for (const auto& d : traj.spectra) {
        all.insert(all.end(), d.values.begin(), d.values.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<double> range(curves.values.data(), curves.values.data() + curves.values.size());
    std::sort(range.begin(), range.end());

    for (double x : range) {
        r.coverage = std::max(r.coverage, distance_to_sorted(all, x));
    }
    for (std::size_t i = 0; i < traj.spectra.size(); ++i) {
        int escaped = 0;
        for (double x : traj.spectra[i].values) {
            if (x >= r.m_tilde && x <= r.sup_norm && distance_to_sorted(range, x) >= delta) {
                ++escaped;
            }
        }
        r.escape_counts.push_back(escaped);
        r.escape.push_back(static_cast<double>(escaped) / n_list[i]);
    }
    return r;
}

} // namespace symtoep
