#include "symtoep/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "symtoep/errors.hpp"

namespace symtoep::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(path, "missing field \"" + key + "\"");
    }
    return *it;
}

std::vector<Matrix> matrices_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        fail(path, "expected a nonempty array of matrices");
    }
    std::vector<Matrix> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(matrix_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

// Runs a constructor and rewrites library errors as config errors at `path`.
template<typename Fn>
auto at_path(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

} // namespace

int int_from_json(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<int>();
}

double double_from_json(const json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a finite number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "expected a finite number");
    }
    return v;
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<CsvCell> row) {
    if (row.size() != header_.size()) {
        throw DimensionError("CSV row width does not match header");
    }
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        out += (i ? "," : "") + header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out += format_double(v);
                    } else if constexpr (std::is_same_v<T, long long>) {
                        out += std::to_string(v);
                    } else {
                        out += v;
                    }
                },
                row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
    os << matrix_csv(m);
}

std::string matrix_csv(const Matrix& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) {
                out += ',';
            }
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json symbol_to_json(const Symbol& s) {
    if (const auto* trig = std::get_if<TrigMatrixPolynomial>(&s)) {
        json coeffs = json::array();
        for (const auto& c : trig->coeffs) {
            coeffs.push_back(matrix_to_json(c));
        }
        return {{"kind", "trig"}, {"k", trig->k}, {"coeffs", std::move(coeffs)}};
    }
    const auto& sampled = std::get<SampledSymbol>(s);
    json values = json::array();
    for (const auto& v : sampled.values) {
        values.push_back(matrix_to_json(v));
    }
    return {{"kind", "sampled"}, {"k", sampled.k}, {"values", std::move(values)}, {"grid", {{"G", sampled.grid.G}}}};
}

Matrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        fail(path, "expected a nonempty array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        fail(path + "[0]", "expected a nonempty array of numbers");
    }
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != cols) {
            fail(rp, "expected a row of " + std::to_string(cols) + " numbers");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                double_from_json(j[i][c], rp + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

std::vector<double> doubles_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) {
        fail(path, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(double_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Symbol symbol_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    if (j.contains("builder")) {
        const json& b = j["builder"];
        if (!b.is_string()) {
            fail(path + ".builder", "expected a string");
        }
        const std::string name = b.get<std::string>();
        if (name == "constant") {
            const Matrix a = matrix_from_json(field(j, "matrix", path), path + ".matrix");
            return at_path(path + ".matrix", [&] { return build_constant(a); });
        }
        if (name == "scalar") {
            const auto c = doubles_from_json(field(j, "coeffs", path), path + ".coeffs");
            const int k = j.contains("k") ? int_from_json(j["k"], path + ".k") : 1;
            return at_path(path, [&] { return build_scalar(c, k); });
        }
        if (name == "ab_family") {
            const Matrix a = matrix_from_json(field(j, "A", path), path + ".A");
            const Matrix bm = matrix_from_json(field(j, "B", path), path + ".B");
            const int N = int_from_json(field(j, "N", path), path + ".N");
            std::vector<double> p;
            if (j.contains("p")) {
                p = doubles_from_json(j["p"], path + ".p");
            } else if (j.contains("geometric")) {
                const double r = double_from_json(j["geometric"], path + ".geometric");
                p = at_path(path + ".geometric", [&] { return geometric_weights(r, N); });
            } else {
                fail(path, "ab_family needs \"p\" or \"geometric\"");
            }
            return at_path(path, [&] { return build_ab_family(a, bm, p, N); });
        }
        fail(path + ".builder", "unknown builder \"" + name + "\" (constant, scalar, ab_family)");
    }

    const json& kind = field(j, "kind", path);
    if (!kind.is_string()) {
        fail(path + ".kind", "expected \"trig\" or \"sampled\"");
    }
    const int k = int_from_json(field(j, "k", path), path + ".k");
    if (kind == "trig") {
        auto coeffs = matrices_from_json(field(j, "coeffs", path), path + ".coeffs");
        return at_path(path + ".coeffs", [&] { return TrigMatrixPolynomial(k, std::move(coeffs)); });
    }
    if (kind == "sampled") {
        auto values = matrices_from_json(field(j, "values", path), path + ".values");
        const json& grid = field(j, "grid", path);
        const int G = int_from_json(field(grid, "G", path + ".grid"), path + ".grid.G");
        return at_path(path + ".values", [&] { return SampledSymbol(k, GridSpec{G}, std::move(values)); });
    }
    fail(path + ".kind", "expected \"trig\" or \"sampled\"");
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
}

} // namespace symtoep::io
