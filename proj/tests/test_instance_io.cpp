#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "eqdiv/error.hpp"
#include "eqdiv/instance_io.hpp"

using namespace eqdiv;

namespace {

const std::filesystem::path kData = EQDIV_DATA_DIR;

Error parse_failure(std::string_view text) {
  try {
    parse_instance_text(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse failure";
  return Error(ErrorCode::ParseError, "none");
}

}  // namespace

TEST(ParseInstance, DefaultsToIdentity) {
  const auto f = parse_instance(kData / "uniform2.json");
  EXPECT_EQ(f.names, (std::vector<std::string>{"alice", "bob"}));
  EXPECT_EQ(f.instance.sigma(), Permutation::identity(2));
  EXPECT_FALSE(f.tol.has_value());
  EXPECT_TRUE(f.warnings.empty());
}

TEST(ParseInstance, SigmaAndTol) {
  const auto f = parse_instance(kData / "golden2.json");
  EXPECT_EQ(f.instance.density(0).kind(), DensityKind::PiecewiseLinear);
  ASSERT_TRUE(f.tol.has_value());
  EXPECT_EQ(*f.tol, 1e-9);
}

TEST(ParseInstance, NormalizationWarns) {
  const auto f = parse_instance(kData / "mass2.json");
  ASSERT_EQ(f.warnings.size(), 1u);
  EXPECT_NE(f.warnings[0].find("alice"), std::string::npos);
  EXPECT_DOUBLE_EQ(f.instance.density(0).scale(), 2.0);
}

TEST(ParseInstance, BadBreakpoints) {
  try {
    parse_instance(kData / "bad_breakpoints.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_NE(std::string(e.what()).find("MalformedBreakpoints"), std::string::npos);
  }
}

TEST(ParseInstance, SyntaxErrorReportsLine) {
  const auto e = parse_failure("{\n  \"players\": [\n    {\"name\": \"a\",, }\n  ]\n}");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
}

TEST(ParseInstance, FieldErrorsCarryPath) {
  auto e = parse_failure(R"({"players": [{"name": "a", "density": {"kind": "spline",
                           "breakpoints": [0, 1], "values": [1]}}]})");
  EXPECT_NE(std::string(e.what()).find("players[0].density.kind"), std::string::npos);

  e = parse_failure(R"({"players": [{"name": "a", "density": {"kind": "piecewise_constant",
                       "breakpoints": [0, 1]}}]})");
  EXPECT_NE(std::string(e.what()).find("players[0].density.values"), std::string::npos);

  e = parse_failure(R"({"players": []})");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
}

TEST(ParseInstance, RejectsDuplicateNamesAndBadSigma) {
  const std::string uni =
      R"({"kind": "piecewise_constant", "breakpoints": [0, 1], "values": [1]})";
  auto e = parse_failure(R"({"players": [{"name": "a", "density": )" + uni +
                         R"(}, {"name": "a", "density": )" + uni + "}]}");
  EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);

  e = parse_failure(R"({"players": [{"name": "a", "density": )" + uni +
                    R"(}, {"name": "b", "density": )" + uni + R"(}], "sigma": [0, 0]})");
  EXPECT_EQ(e.code(), ErrorCode::ValidationError);

  e = parse_failure(R"({"players": [{"name": "a", "density": )" + uni +
                    R"(}], "tol": -1})");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
}

TEST(RandomInstance, DeterministicAndRoundTrips) {
  for (const auto kind : {DensityKind::PiecewiseConstant, DensityKind::PiecewiseLinear}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      RandomInstanceOptions opts;
      opts.players = 1 + seed % 6;
      opts.kind = kind;
      const auto a = random_densities(seed, opts);
      const auto b = random_densities(seed, opts);
      const std::string text = format_instance({}, a);
      EXPECT_EQ(text, format_instance({}, b));

      const auto parsed = parse_instance_text(text);
      ASSERT_EQ(parsed.raw.size(), a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(parsed.raw[i].breakpoints, a[i].breakpoints);
        EXPECT_EQ(parsed.raw[i].values, a[i].values);
        EXPECT_LE(a[i].breakpoints.size(), opts.max_pieces + 1);
      }
    }
  }
}
