#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "symtoep/symbol.hpp"

namespace symtoep::io {

using json = nlohmann::json;

/// Locale-independent scientific notation with 17 significant digits.
std::string format_double(double x);

using CsvCell = std::variant<long long, double, std::string>;

/// Small CSV builder: header row, LF line endings, doubles via format_double.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<CsvCell> row);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

/// Dense matrix dump, one matrix row per line, no header.
void write_matrix_csv(std::ostream& os, const Matrix& m);
std::string matrix_csv(const Matrix& m);

json matrix_to_json(const Matrix& m);
json symbol_to_json(const Symbol& s);

/// Parsers throw ConfigError with a JSON path to the offending field, e.g.
/// "symbol.coeffs[1][0][2]: expected a finite number".
Matrix matrix_from_json(const json& j, const std::string& path);
int int_from_json(const json& j, const std::string& path);
double double_from_json(const json& j, const std::string& path);
std::vector<double> doubles_from_json(const json& j, const std::string& path);

/// Accepts the explicit schema
///   {"kind": "trig", "k": 1, "coeffs": [A_0, A_1, ...]}
///   {"kind": "sampled", "k": 1, "values": [...], "grid": {"G": 64}}
/// or a named builder
///   {"builder": "constant", "matrix": A}
///   {"builder": "scalar", "coeffs": [c_0, c_1, ...], "k": 1}
///   {"builder": "ab_family", "A": A, "B": B, "p": [...] | "geometric": r, "N": 8}
Symbol symbol_from_json(const json& j, const std::string& path);

/// Parses text, reporting syntax errors with line and column.
json parse_json(const std::string& text, const std::string& source);

} // namespace symtoep::io
