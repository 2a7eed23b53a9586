#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "dualcheck/error.hpp"
#include "dualcheck/oracles.hpp"
#include "dualcheck/problem_io.hpp"
#include "dualcheck/qc_family.hpp"
#include "test_support.hpp"

namespace dualcheck {
namespace {

namespace fs = std::filesystem;

std::string schema_message(std::string_view text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    return e.what();
  }
  ADD_FAILURE() << "expected a schema error";
  return {};
}

TEST(ProblemIo, ParsesEveryFamily) {
  const std::string dir = DUALCHECK_TEST_DATA;
  EXPECT_EQ(load_problem(dir + "/example1.json").family(), Family::kQc);
  EXPECT_EQ(load_problem(dir + "/example2.json").family(), Family::kBox);
  EXPECT_EQ(load_problem(dir + "/binary_n3.json").family(), Family::kBinary);
  const auto qc = std::get<QcProblem>(load_problem(dir + "/example1.json").problem);
  EXPECT_EQ(qc.A.matrix(), example1_problem().A.matrix());
  EXPECT_EQ(qc.lambda, 0.5);
}

TEST(ProblemIo, RoundTripIsIdempotent) {
  const std::string dir = DUALCHECK_TEST_DATA;
  for (const char* name : {"example1.json", "example2.json", "binary_n3.json", "binary_minus_n1.json"}) {
    const std::string once = serialize_problem(load_problem(dir + "/" + name));
    const std::string twice = serialize_problem(parse_problem(once));
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(ProblemIo, RoundTripIsBitExact) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const BinaryProblem p = random_instance(seed, 1 + static_cast<Eigen::Index>(seed % 5), 5.0);
    const auto back = std::get<BinaryProblem>(parse_problem(serialize_problem({p})).problem);
    EXPECT_EQ(back.Q.matrix(), p.Q.matrix());
    EXPECT_EQ(back.f, p.f);
  }
}

TEST(ProblemIo, CanonicalFieldOrder) {
  const std::string text =
      R"({"payload": {"ell": [4, 4], "alpha": 3, "c": [-2, -2], "B": [[1, 0], [0, 1]], "A": [[-4, 0], [0, -4]]},)"
      R"( "family": "box"})";
  const std::string out = serialize_problem(parse_problem(text));
  const auto pos = [&](const char* key) { return out.find(key); };
  EXPECT_LT(pos("\"family\""), pos("\"payload\""));
  EXPECT_LT(pos("\"A\""), pos("\"B\""));
  EXPECT_LT(pos("\"B\""), pos("\"c\""));
  EXPECT_LT(pos("\"c\""), pos("\"alpha\""));
  EXPECT_LT(pos("\"alpha\""), pos("\"ell\""));
}

TEST(ProblemIo, SchemaDiagnosticsNameTheField) {
  EXPECT_NE(schema_message(R"({"family": "qc"})").find("payload"), std::string::npos);
  EXPECT_NE(schema_message(R"({"family": "tri", "payload": {}})").find("family"), std::string::npos);
  EXPECT_NE(schema_message(R"({"family": "binary", "payload": {"Q": [[1, 2], [3]], "f": [1, 1]}})").find("payload.Q[1]"),
            std::string::npos);
  EXPECT_NE(schema_message(R"({"family": "binary", "payload": {"Q": [[1]], "f": ["x"]}})").find("payload.f[0]"),
            std::string::npos);
  EXPECT_NE(schema_message(R"({"family": "binary", "payload": {"Q": [[1]], "f": [1, 2]}})").find("payload"),
            std::string::npos);
  EXPECT_NE(schema_message(R"({"family": "box", "payload": {"A": [[1]], "B": [[1]], "c": [1], "alpha": -1, "ell": [1]}})")
                .find("alpha"),
            std::string::npos);
  EXPECT_NE(schema_message("{\"family\":\n").find("line 2"), std::string::npos);
  EXPECT_NE(schema_message("[1, 2]").find("<root>"), std::string::npos);
}

TEST(ProblemIo, MissingFileIsSchemaError) {
  try {
    load_problem("/nonexistent/problem.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
  }
}

TEST(ProblemIo, NumberFormatting) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-7.5), "-7.5");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
  EXPECT_EQ(format_double(std::nan("")), "null");
  const double tricky = 2.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(tricky)), tricky);
}

TEST(ProblemIo, DumpJsonUsesSeventeenDigits) {
  Json j = Json::object();
  j["a"] = 0.1;
  j["b"] = Json::array({1, 2.5});
  j["c"] = std::numeric_limits<double>::infinity();
  EXPECT_EQ(dump_json(j, -1), R"({"a":0.10000000000000001,"b":[1,2.5],"c":null})");
}

TEST(ProblemIo, Sha256KnownVectorAndStability) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex(serialize_problem({example1_problem()})), sha256_hex(serialize_problem({example1_problem()})));
}

TEST(ProblemIo, CurveCsvFormat) {
  const std::string csv = curve_csv({{-1.0, 0.5}, {1.0, 0.1}});
  EXPECT_EQ(csv, "t,value\n-1,0.5\n1,0.10000000000000001\n");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(ProblemIo, AtomicWriteReplacesFile) {
  const fs::path dir = fs::temp_directory_path() / "dualcheck_io_test";
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";
  write_file_atomic(target, "first");
  write_file_atomic(target, "second");
  EXPECT_EQ(read_file(target), "second");
  EXPECT_FALSE(fs::exists(dir / "out.txt.tmp"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace dualcheck
