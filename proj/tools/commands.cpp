#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <initializer_list>
#include <iostream>
#include <string_view>

#include "symtoep/errors.hpp"
#include "symtoep/toeplitz.hpp"

namespace symtoep::cli {

bool RunOutput::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void RunOutput::check_le(std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, "<=", bound, value <= bound});
}

void RunOutput::check_ge(std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, ">=", bound, value >= bound});
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void expect_keys(const json& cfg, std::initializer_list<std::string_view> allowed) {
    if (!cfg.is_object()) {
        fail("config", "expected an object");
    }
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            fail("config." + it.key(), "unknown field for this command");
        }
    }
}

const json* find(const json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

const json& require(const json& j, const char* key, const std::string& path = "config") {
    const json* v = find(j, key);
    if (v == nullptr) {
        fail(path, std::string("missing field \"") + key + "\"");
    }
    return *v;
}

double positive(const json& cfg, const char* key, double fallback) {
    const json* j = find(cfg, key);
    if (j == nullptr) {
        return fallback;
    }
    const std::string path = std::string("config.") + key;
    const double v = io::double_from_json(*j, path);
    if (!(v > 0.0)) {
        fail(path, "must be positive");
    }
    return v;
}

int positive_int(const json& cfg, const char* key) {
    const std::string path = std::string("config.") + key;
    const int v = io::int_from_json(require(cfg, key), path);
    if (v < 1) {
        fail(path, "must be >= 1");
    }
    return v;
}

int max_dim(const json& cfg) {
    return find(cfg, "max_dim") != nullptr ? positive_int(cfg, "max_dim") : default_max_dim;
}

std::vector<int> n_list_from(const json& cfg) {
    const json& j = require(cfg, "n_list");
    if (!j.is_array() || j.empty()) {
        fail("config.n_list", "expected a nonempty array of integers");
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = "config.n_list[" + std::to_string(i) + "]";
        const int n = io::int_from_json(j[i], path);
        if (n < 1) {
            fail(path, "must be >= 1");
        }
        if (!out.empty() && n <= out.back()) {
            fail(path, "n_list must be strictly ascending");
        }
        out.push_back(n);
    }
    return out;
}

GridSpec grid_from(const json& cfg) {
    GridSpec grid;
    if (const json* g = find(cfg, "grid")) {
        if (!g->is_object()) {
            fail("config.grid", "expected an object");
        }
        grid.G = io::int_from_json(require(*g, "G", "config.grid"), "config.grid.G");
    }
    try {
        grid.validate();
    } catch (const GridError& e) {
        fail("config.grid.G", e.what());
    }
    if ((grid.G & (grid.G - 1)) != 0) {
        std::cerr << "warning: config.grid.G = " << grid.G << " is not a power of two\n";
    }
    return grid;
}

// Sampled symbols go through their Fourier coefficients; the Toeplitz blocks
// need the coefficients anyway and the curves are then evaluated from them.
TrigMatrixPolynomial trig_symbol(const json& cfg) {
    const Symbol s = io::symbol_from_json(require(cfg, "symbol"), "config.symbol");
    if (const auto* t = std::get_if<TrigMatrixPolynomial>(&s)) {
        return *t;
    }
    const auto& sampled = std::get<SampledSymbol>(s);
    return to_trig(sampled, sampled.grid.G / 2 - 1);
}

LogBase log_base(const json& cfg, const GlobalOptions& opts) {
    std::string b = opts.base;
    if (b.empty()) {
        if (const json* j = find(cfg, "base")) {
            if (!j->is_string()) {
                fail("config.base", "expected \"e\" or \"2\"");
            }
            b = j->get<std::string>();
        }
    }
    if (b.empty() || b == "e") {
        return LogBase::natural;
    }
    if (b == "2") {
        return LogBase::two;
    }
    fail("config.base", "expected \"e\" or \"2\", got \"" + b + "\"");
}

std::string base_name(LogBase b) { return b == LogBase::two ? "2" : "e"; }

TestFunction function_from(const json& j, const std::string& path, LogBase base) {
    if (!j.is_object()) {
        fail(path, "expected an object with a \"kind\" field");
    }
    const json& kind_j = require(j, "kind", path);
    if (!kind_j.is_string()) {
        fail(path + ".kind", "expected a string");
    }
    const std::string kind = kind_j.get<std::string>();
    auto num = [&](const char* key) { return io::double_from_json(require(j, key, path), path + "." + key); };
    try {
        if (kind == "monomial") {
            return monomial(io::int_from_json(require(j, "degree", path), path + ".degree"));
        }
        if (kind == "polynomial") {
            return polynomial(io::doubles_from_json(require(j, "coeffs", path), path + ".coeffs"));
        }
        if (kind == "constant") {
            return constant_function(num("value"));
        }
        if (kind == "hat") {
            return hat_function(num("left"), num("peak"), num("right"));
        }
        if (kind == "smoothed_indicator") {
            return smoothed_indicator(num("a"), num("b"), num("eps"));
        }
        if (kind == "entropy") {
            return entropy_function(base);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
    fail(path + ".kind",
         "unknown function \"" + kind + "\" (monomial, polynomial, constant, hat, smoothed_indicator, entropy)");
}

template<typename Fn>
auto timed(RunOutput& out, const char* stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out.stages.push_back({stage, elapsed.count()});
    return result;
}

std::string spectra_csv(const SpectrumTrajectory& traj) {
    io::CsvTable t({"n", "j", "d"});
    for (std::size_t i = 0; i < traj.n_list.size(); ++i) {
        for (std::size_t j = 0; j < traj.spectra[i].size(); ++j) {
            t.add_row({traj.n_list[i], static_cast<long long>(j + 1), traj.spectra[i][j]});
        }
    }
    return t.str();
}

std::string curves_csv(const SymplecticCurves& c) {
    std::vector<std::string> header{"g", "theta"};
    for (int j = 1; j <= c.modes(); ++j) {
        header.push_back("d_" + std::to_string(j));
    }
    io::CsvTable t(header);
    for (int g = 0; g < c.grid.G; ++g) {
        std::vector<io::CsvCell> row{g, c.grid.theta(g)};
        for (int j = 0; j < c.modes(); ++j) {
            row.emplace_back(c.values(j, g));
        }
        t.add_row(std::move(row));
    }
    return t.str();
}

RunOutput spectrum_impl(const json& cfg, bool force_williamson) {
    expect_keys(cfg, {"matrix", "symbol", "n", "williamson", "tolerance", "max_dim"});
    RunOutput out;
    const bool has_matrix = find(cfg, "matrix") != nullptr;
    if (has_matrix == (find(cfg, "symbol") != nullptr)) {
        fail("config", "give exactly one of \"matrix\" or \"symbol\" (with \"n\")");
    }
    bool want_williamson = force_williamson;
    if (const json* w = find(cfg, "williamson")) {
        if (!w->is_boolean()) {
            fail("config.williamson", "expected true or false");
        }
        want_williamson = want_williamson || w->get<bool>();
    }
    const double tol = positive(cfg, "tolerance", Tolerances{}.fact);

    Matrix a;
    if (has_matrix) {
        a = io::matrix_from_json(cfg["matrix"], "config.matrix");
        out.summary["source"] = "matrix";
    } else {
        const TrigMatrixPolynomial s = trig_symbol(cfg);
        const int n = positive_int(cfg, "n");
        a = timed(out, "assemble", [&] { return assemble(s, n, max_dim(cfg)).matrix; });
        out.summary["source"] = "symbol";
        out.summary["k"] = s.k;
        out.summary["n"] = n;
    }
    const PositiveDefiniteMatrix pd = timed(out, "validate", [&] { return PositiveDefiniteMatrix(a); });
    out.summary["dim"] = pd.dim();

    SymplecticSpectrum d;
    if (want_williamson) {
        const WilliamsonFactorization w = timed(out, "williamson", [&] { return williamson(pd); });
        d = w.d;
        out.files.emplace_back("williamson_M.csv", io::matrix_csv(w.M));
        out.summary["diagonal_residual"] = w.diagonal_residual;
        out.summary["symplectic_residual"] = w.symplectic_residual;
        out.check_le("williamson diagonal residual", w.diagonal_residual, tol);
        out.check_le("williamson symplectic residual", w.symplectic_residual, tol);
    } else {
        d = timed(out, "spectrum", [&] { return symplectic_eigenvalues(pd); });
    }

    io::CsvTable t({"j", "d"});
    for (std::size_t j = 0; j < d.size(); ++j) {
        t.add_row({static_cast<long long>(j + 1), d[j]});
    }
    out.files.emplace(out.files.begin(), "spectrum.csv", t.str());
    out.summary["modes"] = d.size();
    out.summary["d_min"] = d.min();
    out.summary["d_max"] = d.max();
    out.summary["spectrum"] = d.values;
    return out;
}

} // namespace

RunOutput cmd_spectrum(const json& config, const GlobalOptions&) { return spectrum_impl(config, false); }

RunOutput cmd_williamson(const json& config, const GlobalOptions&) { return spectrum_impl(config, true); }

RunOutput cmd_szego(const json& cfg, const GlobalOptions& opts) {
    expect_keys(cfg, {"symbol", "n_list", "grid", "f", "tolerance", "quadrature_tolerance", "m", "limit_tolerance",
                      "base", "max_dim"});
    RunOutput out;
    const TrigMatrixPolynomial s = trig_symbol(cfg);
    const std::vector<int> n_list = n_list_from(cfg);
    const GridSpec grid = grid_from(cfg);
    const double tol = positive(cfg, "tolerance", 0.05);
    const double qtol = positive(cfg, "quadrature_tolerance", 1e-8);
    const LogBase base = log_base(cfg, opts);

    std::vector<TestFunction> functions;
    const json& fj = require(cfg, "f");
    if (fj.is_array()) {
        if (fj.empty()) {
            fail("config.f", "expected at least one function");
        }
        for (std::size_t i = 0; i < fj.size(); ++i) {
            functions.push_back(function_from(fj[i], "config.f[" + std::to_string(i) + "]", base));
        }
    } else {
        functions.push_back(function_from(fj, "config.f", base));
    }

    std::vector<int> ms;
    if (const json* mj = find(cfg, "m")) {
        const json list = mj->is_array() ? *mj : json::array({*mj});
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = mj->is_array() ? "config.m[" + std::to_string(i) + "]" : "config.m";
            const int m = io::int_from_json(list[i], path);
            if (m < 1 || m > s.k * n_list.front()) {
                fail(path, "index must lie in [1, k * n_list[0]] = [1, " + std::to_string(s.k * n_list.front()) + "]");
            }
            ms.push_back(m);
        }
    }

    const SweepOptions sweep{opts.threads, max_dim(cfg)};
    const SpectrumTrajectory traj = timed(out, "spectra", [&] { return truncated_spectra(s, n_list, sweep); });
    const SymplecticCurves curves = timed(out, "curves", [&] { return symplectic_curves(s, grid, opts.threads); });
    const SymplecticCurves refined =
        timed(out, "curves_2G", [&] { return symplectic_curves(s, GridSpec{2 * grid.G}, opts.threads); });

    io::CsvTable table({"function", "n", "average", "integral", "gap"});
    json reports = json::array();
    for (const TestFunction& f : functions) {
        const SzegoReport r = convergence_report(traj, curves, refined, f, tol, qtol);
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            table.add_row({f.name, n_list[i], r.averages[i], r.integral, r.gaps[i]});
        }
        out.check_le(f.name + ": gap at n=" + std::to_string(n_list.back()), r.gaps.back(), tol);
        out.check_le(f.name + ": quadrature drift G vs 2G", r.quadrature_drift, qtol);
        reports.push_back({{"function", f.name},
                           {"integral", r.integral},
                           {"integral_refined", r.integral_refined},
                           {"quadrature_drift", r.quadrature_drift},
                           {"averages", r.averages},
                           {"gaps", r.gaps}});
    }
    out.files.emplace_back("szego.csv", table.str());
    out.files.emplace_back("spectra.csv", spectra_csv(traj));
    out.files.emplace_back("curves.csv", curves_csv(curves));

    const double m_limit = m_tilde(curves);
    out.summary["k"] = s.k;
    out.summary["G"] = grid.G;
    out.summary["n_list"] = n_list;
    out.summary["m_tilde"] = m_limit;
    out.summary["monotone"] = traj.monotone;
    out.summary["reports"] = reports;

    if (!ms.empty()) {
        io::CsvTable mt({"m", "n", "d_m", "m_tilde", "gap"});
        json trajectories = json::array();
        for (int m : ms) {
            std::vector<double> values;
            double worst_rise = 0.0;
            for (std::size_t i = 0; i < traj.spectra.size(); ++i) {
                const double v = traj.spectra[i][static_cast<std::size_t>(m - 1)];
                if (!values.empty()) {
                    worst_rise = std::max(worst_rise, v - values.back());
                }
                values.push_back(v);
                mt.add_row({m, n_list[i], v, m_limit, std::abs(v - m_limit)});
            }
            const std::string label = "d_" + std::to_string(m);
            out.check_le(label + ": largest increase along n_list", worst_rise, 1e-10);
            if (find(cfg, "limit_tolerance") != nullptr) {
                out.check_le(label + ": |d_m(n_max) - m_tilde|", std::abs(values.back() - m_limit),
                             positive(cfg, "limit_tolerance", 0.0));
            }
            trajectories.push_back({{"m", m}, {"values", values}, {"worst_increase", worst_rise}});
        }
        out.files.emplace_back("min_trajectory.csv", mt.str());
        out.summary["trajectories"] = trajectories;
    }
    return out;
}

RunOutput cmd_entropy_rate(const json& cfg, const GlobalOptions& opts) {
    expect_keys(cfg, {"symbol", "n_list", "grid", "tolerance", "quadrature_tolerance", "base", "max_dim"});
    RunOutput out;
    const TrigMatrixPolynomial s = trig_symbol(cfg);
    const std::vector<int> n_list = n_list_from(cfg);
    const GridSpec grid = grid_from(cfg);
    const double tol = positive(cfg, "tolerance", 0.02);
    const double qtol = positive(cfg, "quadrature_tolerance", 1e-8);
    EntropyOptions eo;
    eo.base = log_base(cfg, opts);
    eo.policy = opts.policy;

    const EntropyReport r = timed(out, "entropy", [&] {
        return entropy_rate_report(s, n_list, grid, tol, qtol, eo, SweepOptions{opts.threads, max_dim(cfg)});
    });
    if (r.violations > 0) {
        std::cerr << "warning: " << r.violations << " symplectic eigenvalue(s) below 1/2 clamped to the vacuum\n";
    }

    io::CsvTable t({"n", "rate", "integral", "gap"});
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        t.add_row({n_list[i], r.rates[i], r.integral, r.gaps[i]});
    }
    out.files.emplace_back("entropy_rate.csv", t.str());
    out.check_le("entropy rate gap at n=" + std::to_string(n_list.back()), r.gaps.back(), tol);
    out.check_le("quadrature drift G vs 2G", r.quadrature_drift, qtol);

    out.summary["base"] = base_name(eo.base);
    out.summary["policy"] = eo.policy == ClampPolicy::strict ? "strict" : "lenient";
    out.summary["G"] = grid.G;
    out.summary["n_list"] = n_list;
    out.summary["rates"] = r.rates;
    out.summary["gaps"] = r.gaps;
    out.summary["integral"] = r.integral;
    out.summary["integral_refined"] = r.integral_refined;
    out.summary["quadrature_drift"] = r.quadrature_drift;
    out.summary["violations"] = r.violations;
    return out;
}

RunOutput cmd_counting(const json& cfg, const GlobalOptions& opts) {
    expect_keys(cfg, {"symbol", "n_list", "grid", "K", "eps", "tolerance", "max_dim"});
    RunOutput out;
    const TrigMatrixPolynomial s = trig_symbol(cfg);
    const std::vector<int> n_list = n_list_from(cfg);
    const GridSpec grid = grid_from(cfg);
    const std::vector<double> interval = io::doubles_from_json(require(cfg, "K"), "config.K");
    if (interval.size() != 2 || !(0.0 <= interval[0] && interval[0] <= interval[1])) {
        fail("config.K", "expected [a, b] with 0 <= a <= b");
    }
    std::vector<double> eps{0.2, 0.1, 0.05};
    if (const json* e = find(cfg, "eps")) {
        eps = io::doubles_from_json(*e, "config.eps");
        for (std::size_t i = 0; i < eps.size(); ++i) {
            if (!(eps[i] > 0.0)) {
                fail("config.eps[" + std::to_string(i) + "]", "must be positive");
            }
        }
    }

    const CountingReport r = timed(out, "counting", [&] {
        return counting_report(s, interval[0], interval[1], n_list, grid, eps,
                               SweepOptions{opts.threads, max_dim(cfg)});
    });

    io::CsvTable t({"n", "count", "ratio", "limit_measure"});
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        t.add_row({n_list[i], r.counts[i], r.ratios[i], r.limit_measure});
    }
    io::CsvTable sm({"eps", "n", "average", "integral"});
    for (std::size_t e = 0; e < r.eps.size(); ++e) {
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            sm.add_row({r.eps[e], n_list[i], r.smoothed_averages[e][i], r.smoothed_integrals[e]});
        }
    }
    out.files.emplace_back("counting.csv", t.str());
    out.files.emplace_back("smoothed.csv", sm.str());
    if (find(cfg, "tolerance") != nullptr) {
        out.check_le("|c_n(K)/n - limit measure| at n=" + std::to_string(n_list.back()),
                     std::abs(r.ratios.back() - r.limit_measure), positive(cfg, "tolerance", 0.0));
    }

    out.summary["K"] = interval;
    out.summary["G"] = grid.G;
    out.summary["n_list"] = n_list;
    out.summary["counts"] = r.counts;
    out.summary["ratios"] = r.ratios;
    out.summary["limit_measure"] = r.limit_measure;
    out.summary["eps"] = r.eps;
    out.summary["smoothed_integrals"] = r.smoothed_integrals;
    return out;
}

RunOutput cmd_density(const json& cfg, const GlobalOptions& opts) {
    expect_keys(cfg, {"symbol", "n_max", "delta", "grid", "escape_tolerance", "max_dim"});
    RunOutput out;
    const TrigMatrixPolynomial s = trig_symbol(cfg);
    const int n_max = positive_int(cfg, "n_max");
    const double delta = io::double_from_json(require(cfg, "delta"), "config.delta");
    if (!(delta > 0.0)) {
        fail("config.delta", "must be positive");
    }
    const double escape_tol = positive(cfg, "escape_tolerance", 0.02);
    const GridSpec grid = grid_from(cfg);

    const DensityReport r = timed(out, "density", [&] {
        return density_check(s, n_max, delta, grid, SweepOptions{opts.threads, max_dim(cfg)});
    });

    io::CsvTable t({"n", "escape_count", "escape"});
    for (std::size_t i = 0; i < r.n_list.size(); ++i) {
        t.add_row({r.n_list[i], r.escape_counts[i], r.escape[i]});
    }
    out.files.emplace_back("density.csv", t.str());
    out.check_le("coverage distance", r.coverage, delta);
    out.check_le("escape mass at n=" + std::to_string(n_max), r.escape.back(), escape_tol);

    out.summary["delta"] = delta;
    out.summary["n_max"] = n_max;
    out.summary["G"] = grid.G;
    out.summary["m_tilde"] = r.m_tilde;
    out.summary["sup_norm"] = r.sup_norm;
    out.summary["coverage"] = r.coverage;
    out.summary["escape"] = r.escape;
    return out;
}

RunOutput cmd_gchain_check(const json& cfg, const GlobalOptions& opts) {
    expect_keys(cfg, {"symbol", "n_max", "tolerance", "max_dim"});
    RunOutput out;
    const TrigMatrixPolynomial s = trig_symbol(cfg);
    const int n_max = positive_int(cfg, "n_max");
    const double tol = positive(cfg, "tolerance", 1e-10);

    GChainSweep sweep = timed(out, "sweep", [&] { return gchain_sweep(s, n_max, tol, max_dim(cfg), opts.threads); });
    std::sort(sweep.tested.begin(), sweep.tested.end(),
              [](const GChainResult& a, const GChainResult& b) { return a.n < b.n; });

    io::CsvTable t({"n", "passed", "min_eigenvalue"});
    for (const GChainResult& r : sweep.tested) {
        t.add_row({r.n, r.passed ? 1 : 0, r.min_eigenvalue});
    }
    out.files.emplace_back("gchain.csv", t.str());
    out.check_ge("G-matrix truncations certified through n", sweep.certified_through, n_max);

    out.summary["n_max"] = n_max;
    out.summary["tolerance"] = tol;
    out.summary["certified_through"] = sweep.certified_through;
    out.summary["first_failing"] = sweep.first_failing ? json(*sweep.first_failing) : json(nullptr);
    if (sweep.first_failing) {
        const auto it = std::find_if(sweep.tested.begin(), sweep.tested.end(),
                                     [&](const GChainResult& r) { return r.n == *sweep.first_failing; });
        out.summary["first_failing_min_eigenvalue"] = it->min_eigenvalue;
    }
    return out;
}

} // namespace symtoep::cli
