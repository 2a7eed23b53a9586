#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dualcheck/problems.hpp"

namespace dualcheck {

using Json = nlohmann::ordered_json;

enum class Family { kQc, kBox, kBinary };

std::string_view to_string(Family f);

// {"family": "qc" | "box" | "binary", "payload": {...}} with matrices as
// row-major arrays of arrays.
struct ProblemFile {
  std::variant<QcProblem, BoxProblem, BinaryProblem> problem;

  Family family() const;
};

// Throws Error(kSchema) naming the offending field (or line/column for
// malformed JSON).
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);

// Canonical field order, numbers with 17 significant digits.
std::string serialize_problem(const ProblemFile& file);
Json problem_to_json(const ProblemFile& file);

// JSON text where every floating value is printed with %.17g and
// non-finite values become null.
std::string dump_json(const Json& value, int indent = 2);

std::string format_double(double v);

std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Curve CSV: header "t,value", LF line endings.
std::string curve_csv(const std::vector<std::pair<double, double>>& samples);

}  // namespace dualcheck
