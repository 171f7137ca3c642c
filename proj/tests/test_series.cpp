#include <cmath>
#include <limits>

#include "doctest.h"
#include "dyncorr/error.hpp"
#include "dyncorr/scenario.hpp"
#include "dyncorr/series.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace dyncorr;

namespace {

// Runs `fn`, expecting an Error with `code` whose message contains every needle.
template <typename Fn>
void expect_error(Fn&& fn, ErrorCode code, std::initializer_list<const char*> needles) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    const std::string what = e.what();
    for (const char* needle : needles) {
      CHECK_MESSAGE(what.find(needle) != std::string::npos, what, " lacks ", needle);
    }
  }
}

}  // namespace

TEST_CASE("constructor enforces the series invariants") {
  const ParameterSeries ok({"a", "b"}, {1, 2, 3, 4, 5, 6}, 3);
  CHECK(ok.n_params() == 2);
  CHECK(ok.n_periods() == 3);
  CHECK(ok.at(2, 1) == 6);
  CHECK(ok.last_period() == 3);
  CHECK(ok.column_index("b") == 1u);
  CHECK_FALSE(ok.column_index("zz").has_value());
  CHECK(ok.row_of_period(2) == 1u);
  CHECK_FALSE(ok.row_of_period(4).has_value());

  CHECK_THROWS_AS(ParameterSeries({}, {}, 1), Error);
  CHECK_THROWS_AS(ParameterSeries({"a"}, {}, 0), Error);
  CHECK_THROWS_AS(ParameterSeries({"a", "b"}, {1, 2, 3}, 2), Error);
  expect_error([] { ParameterSeries({"a", "a"}, {1, 2}, 1); }, ErrorCode::validation, {"duplicate"});
  CHECK_THROWS_AS(ParameterSeries({"a,b"}, {1}, 1), Error);
  CHECK_THROWS_AS(ParameterSeries({""}, {1}, 1), Error);
  expect_error(
      [] { ParameterSeries({"a", "b"}, {1, 2, 3, std::numeric_limits<double>::infinity()}, 2); },
      ErrorCode::validation, {"row 2", "\"b\""});
}

TEST_CASE("CSV with header t,a,b and three rows") {
  const auto s = parse_series_csv("t,a,b\n1,1.5,2\n2,3,4\n3,5,-6\n");
  CHECK(s.n_params() == 2);
  CHECK(s.n_periods() == 3);
  CHECK(s.period_origin() == 1);
  CHECK(s.param_id(1) == "b");
  CHECK(s.at(2, 1) == -6.0);
}

TEST_CASE("CSV NaN cell names its row and column") {
  expect_error([] { parse_series_csv("t,a,b\n1,1,2\n2,3,NaN\n3,5,6\n"); }, ErrorCode::validation,
               {"row 2", "column \"b\""});
}

TEST_CASE("CSV structural errors") {
  CHECK_THROWS_AS(parse_series_csv(""), Error);
  CHECK_THROWS_AS(parse_series_csv("x,a\n1,2\n"), Error);
  expect_error([] { parse_series_csv("t,a,b\n1,1\n"); }, ErrorCode::parse, {"row 1"});
  expect_error([] { parse_series_csv("t,a\n1,1\n3,2\n"); }, ErrorCode::parse, {"grid"});
  expect_error([] { parse_series_csv("t,a\n1,abc\n"); }, ErrorCode::parse, {"column \"a\"", "abc"});
  CHECK_THROWS_AS(parse_series_csv("t,a\n"), Error);
  CHECK_THROWS_AS(parse_series_csv("t,a,a\n1,1,2\n"), Error);
}

TEST_CASE("CSV tolerates a BOM, CRLF and a non-unit origin") {
  const auto s = parse_series_csv("\xEF\xBB\xBFt,a\r\n-2,1\r\n-1,2\r\n");
  CHECK(s.period_origin() == -2);
  CHECK(s.n_periods() == 2);
  CHECK(parse_series_csv(format_series_csv(s)) == s);
}

TEST_CASE("1x1 zero series writes body 1,0") {
  const ParameterSeries s({"a"}, {0.0}, 1);
  CHECK(format_series_csv(s) == "t,a\n1,0\n");
}

TEST_CASE("CSV round-trip keeps 87.34 exactly") {
  const ParameterSeries s({"v"}, {87.34}, 1);
  const auto back = parse_series_csv(format_series_csv(s));
  CHECK(back.at(0, 0) == 87.34);
}

TEST_CASE("CSV round-trip is exact for awkward doubles") {
  const ParameterSeries s({"a", "b", "c"},
                          {0.1, 1e-300, -123456789.123456789, 5e-324, 1.0 / 3.0, 2.5e17}, 2);
  CHECK(parse_series_csv(format_series_csv(s)) == s);
}

TEST_CASE("binary round-trip of the replica scenario keeps the checksum") {
  const auto s = generate_scenario(replica_config());
  REQUIRE(s.n_periods() == 63);
  REQUIRE(s.n_params() == 200);
  const auto bytes = encode_series_binary(s);
  const auto back = decode_series_binary(bytes);
  CHECK(back == s);
  CHECK(diagnose(back).checksum == diagnose(s).checksum);

  TempDir dir;
  write_series(s, dir.file("s.mdsc"), SeriesFormat::columnar_binary);
  write_series(s, dir.file("s.csv"), SeriesFormat::csv);
  const auto from_bin = load_series(dir.file("s.mdsc"), SeriesFormat::columnar_binary);
  const auto from_csv = load_series(dir.file("s.csv"), SeriesFormat::csv);
  CHECK(from_bin == s);
  CHECK(from_csv == s);
  CHECK(diagnose(from_csv).checksum == diagnose(from_bin).checksum);
}

TEST_CASE("binary layout: magic, version, dimensions, origin trailer") {
  const ParameterSeries one({"a"}, {2.0}, 1);
  const auto bytes = encode_series_binary(one);
  REQUIRE(bytes.size() >= 4);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "MDSC");
  // magic + version + n_params + n_periods + (len + "a") + one f64
  CHECK(bytes.size() == 4 + 4 + 8 + 8 + 4 + 1 + 8);

  const ParameterSeries shifted({"a"}, {2.0}, 1, -5);
  const auto shifted_bytes = encode_series_binary(shifted);
  CHECK(shifted_bytes.size() == bytes.size() + 4 + 8);
  CHECK(decode_series_binary(shifted_bytes).period_origin() == -5);
}

TEST_CASE("binary decoder rejects corrupt input") {
  const ParameterSeries s({"a", "b"}, {1, 2, 3, 4}, 2);
  auto bytes = encode_series_binary(s);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(decode_series_binary(bad_magic), Error);
  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(decode_series_binary(truncated), Error);
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(decode_series_binary(trailing), Error);
  auto bad_version = bytes;
  bad_version[4] = 9;
  CHECK_THROWS_AS(decode_series_binary(bad_version), Error);
}

TEST_CASE("format is chosen by extension") {
  CHECK(format_for_path("x.mdsc") == SeriesFormat::columnar_binary);
  CHECK(format_for_path("x.csv") == SeriesFormat::csv);
  CHECK(format_for_path("x") == SeriesFormat::csv);
}

TEST_CASE("loading a missing file is an io error") {
  expect_error([] { load_series("/nonexistent/dir/x.csv", SeriesFormat::csv); }, ErrorCode::io,
               {"/nonexistent/dir/x.csv"});
}

TEST_CASE("diagnose: all-zero 5x3 series") {
  const ParameterSeries s(oracle::ids(3), std::vector<double>(15, 0.0), 5);
  const auto d = diagnose(s);
  CHECK(d.zero_columns == 3);
  CHECK(d.min_value == 0.0);
  CHECK(d.max_value == 0.0);
}

TEST_CASE("diagnose: one negative cell sets the minimum") {
  const ParameterSeries s({"a", "b"}, {1, 2, -2.5, 4}, 2);
  const auto d = diagnose(s);
  CHECK(d.min_value == -2.5);
  CHECK(d.max_value == 4.0);
  CHECK(d.zero_columns == 0);
}

TEST_CASE("diagnose: replica scenario zero columns match the configured count") {
  const auto config = replica_config();
  CHECK(diagnose(generate_scenario(config)).zero_columns == config.zero_column_count());
}

TEST_CASE("checksum ignores column order but sees every cell") {
  const ParameterSeries ab({"a", "b"}, {1, 2, 3, 4}, 2);
  const ParameterSeries ba({"b", "a"}, {2, 1, 4, 3}, 2);
  CHECK(diagnose(ab).checksum == diagnose(ba).checksum);
  const ParameterSeries changed({"a", "b"}, {1, 2, 3, 4.0000000001}, 2);
  CHECK(diagnose(ab).checksum != diagnose(changed).checksum);
  const ParameterSeries moved({"a", "b"}, {1, 2, 3, 4}, 2, 0);
  CHECK(diagnose(ab).checksum != diagnose(moved).checksum);
}

TEST_CASE("require_aligned names both lengths") {
  const ParameterSeries a({"x"}, {1, 2, 3}, 3);
  const ParameterSeries b({"x"}, {1, 2}, 2);
  expect_error([&] { require_aligned(a, b); }, ErrorCode::mismatch, {"3", "2"});
  const ParameterSeries c({"x"}, {1, 2, 3}, 3, 0);
  CHECK_THROWS_AS(require_aligned(a, c), Error);
  CHECK_NOTHROW(require_aligned(a, a));
}
