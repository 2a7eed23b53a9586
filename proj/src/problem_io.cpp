#include "dualcheck/problem_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dualcheck/error.hpp"

namespace dualcheck {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kQc: return "qc";
    case Family::kBox: return "box";
    case Family::kBinary: return "binary";
  }
  return "unknown";
}

Family ProblemFile::family() const {
  return static_cast<Family>(problem.index());
}

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kSchema, "field '" + field + "': " + what);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) schema_error(path + key, "missing");
  return obj.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

Vector vector_of(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix_of(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Vector row = vector_of(j[i], row_path);
    if (i == 0) {
      cols = static_cast<std::size_t>(row.size());
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (static_cast<std::size_t>(row.size()) != cols) {
      schema_error(row_path, "row length differs from row 0");
    }
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

SymMatrix square_of(const Json& j, const std::string& path) {
  const Matrix m = matrix_of(j, path);
  if (m.rows() != m.cols()) schema_error(path, "expected a square matrix");
  return SymMatrix(m);
}

template <class Build>
auto guarded(const std::string& path, Build&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    schema_error(path, e.what());
  }
}

Json rows_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

void emit(const Json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      out.push_back('\n');
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  // Arrays of scalars stay on one line.
  const auto flat = [](const Json& arr) {
    for (const auto& e : arr) {
      if (e.is_structured()) return false;
    }
    return true;
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        emit(it.value(), indent, depth + 1, out);
      }
      pad(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool one_line = flat(j);
      out.push_back('[');
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += one_line && indent >= 0 ? ", " : ",";
        first = false;
        if (!one_line) pad(depth + 1);
        emit(e, indent, depth + 1, out);
      }
      if (!one_line) pad(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  return out;
}

ProblemFile parse_problem(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("<root>", "expected an object");
  const Json& fam = member(doc, "family", "");
  if (!fam.is_string()) schema_error("family", "expected a string");
  const Json& payload = member(doc, "payload", "");
  if (!payload.is_object()) schema_error("payload", "expected an object");
  const std::string family = fam.get<std::string>();
  const std::string p = "payload.";
  if (family == "qc") {
    return {guarded("payload", [&] {
      return QcProblem(square_of(member(payload, "A", p), p + "A"), square_of(member(payload, "C", p), p + "C"),
                       vector_of(member(payload, "f", p), p + "f"),
                       number(member(payload, "lambda", p), p + "lambda"));
    })};
  }
  if (family == "box") {
    return {guarded("payload", [&] {
      return BoxProblem(square_of(member(payload, "A", p), p + "A"), matrix_of(member(payload, "B", p), p + "B"),
                        vector_of(member(payload, "c", p), p + "c"),
                        number(member(payload, "alpha", p), p + "alpha"),
                        vector_of(member(payload, "ell", p), p + "ell"));
    })};
  }
  if (family == "binary") {
    return {guarded("payload", [&] {
      return BinaryProblem(square_of(member(payload, "Q", p), p + "Q"), vector_of(member(payload, "f", p), p + "f"));
    })};
  }
  schema_error("family", "expected one of \"qc\", \"box\", \"binary\"");
}

ProblemFile load_problem(const std::filesystem::path& path) { return parse_problem(read_file(path)); }

Json problem_to_json(const ProblemFile& file) {
  Json payload = Json::object();
  std::visit(
      [&](const auto& prob) {
        using T = std::decay_t<decltype(prob)>;
        if constexpr (std::is_same_v<T, QcProblem>) {
          payload["A"] = rows_json(prob.A.matrix());
          payload["C"] = rows_json(prob.C.matrix());
          payload["f"] = vector_json(prob.f);
          payload["lambda"] = prob.lambda;
        } else if constexpr (std::is_same_v<T, BoxProblem>) {
          payload["A"] = rows_json(prob.A.matrix());
          payload["B"] = rows_json(prob.B);
          payload["c"] = vector_json(prob.c);
          payload["alpha"] = prob.alpha;
          payload["ell"] = vector_json(prob.ell);
        } else {
          payload["Q"] = rows_json(prob.Q.matrix());
          payload["f"] = vector_json(prob.f);
        }
      },
      file.problem);
  Json doc = Json::object();
  doc["family"] = std::string(to_string(file.family()));
  doc["payload"] = std::move(payload);
  return doc;
}

std::string serialize_problem(const ProblemFile& file) { return dump_json(problem_to_json(file)) + "\n"; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSchema, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kInvalidArgument, "short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string curve_csv(const std::vector<std::pair<double, double>>& samples) {
  std::string out = "t,value\n";
  for (const auto& [t, v] : samples) {
    out += format_double(t);
    out.push_back(',');
    out += format_double(v);
    out.push_back('\n');
  }
  return out;
}

}  // namespace dualcheck
