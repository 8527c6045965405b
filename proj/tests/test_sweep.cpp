#include <doctest.h>

#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "mesp/errors.hpp"
#include "mesp/instance.hpp"
#include "mesp/sweep.hpp"

using namespace mesp;

namespace {

// CSV text with the wall_time_ms column blanked.
std::string csv_without_timing(const std::vector<ReportRow>& rows) {
  std::ostringstream raw;
  write_csv(raw, rows);
  std::istringstream in(raw.str());
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') {
      out += line + '\n';
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() > 12) cells[12] = "";
    for (size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("parse_s_values") {
  CHECK(parse_s_values("2..n-1", 5) == std::vector{2, 3, 4});
  CHECK(parse_s_values("3", 5) == std::vector{3});
  CHECK(parse_s_values("4,2,2", 5) == std::vector{2, 4});
  CHECK(parse_s_values("1..2, n", 6) == std::vector{1, 2, 6});
  CHECK_THROWS_AS(parse_s_values("0", 5), ConfigError);
  CHECK_THROWS_AS(parse_s_values("6", 5), ConfigError);
  CHECK_THROWS_AS(parse_s_values("4..2", 5), ConfigError);
  CHECK_THROWS_AS(parse_s_values("x", 5), ConfigError);
  CHECK_THROWS_AS(parse_s_values("2,,3", 5), ConfigError);
}

TEST_CASE("parse_shift_spec and resolve_shifts") {
  const auto model = generate_instance(5, 10.0, 1);
  const double lmin = model.lambda_min();

  CHECK(parse_shift_spec("0").mode == ShiftSpec::Mode::kZero);
  CHECK(parse_shift_spec("min").mode == ShiftSpec::Mode::kLambdaMin);
  const auto explicit_t = parse_shift_spec("0.25");
  CHECK(explicit_t.mode == ShiftSpec::Mode::kExplicit);
  CHECK(resolve_shifts(explicit_t, model) == std::vector{0.25});
  CHECK_THROWS_AS(resolve_shifts(parse_shift_spec("5"), model), ConfigError);
  CHECK_THROWS_AS(parse_shift_spec("-1"), ConfigError);
  CHECK_THROWS_AS(parse_shift_spec("grid:1"), ConfigError);
  CHECK_THROWS_AS(parse_shift_spec("fast"), ConfigError);

  const auto grid = resolve_shifts(parse_shift_spec("grid:3"), model);
  REQUIRE(grid.size() == 3);
  CHECK(grid[0] == 0.0);
  CHECK(grid[1] == doctest::Approx(lmin / 2));
  CHECK(grid[2] == lmin);
  CHECK(resolve_shifts(parse_shift_spec("grid"), model).size() == 5);
}

TEST_CASE("parse_lower_bound_spec and parse_bounds") {
  CHECK(parse_lower_bound_spec("auto").mode == LowerBoundSpec::Mode::kAuto);
  CHECK(parse_lower_bound_spec("ls").mode == LowerBoundSpec::Mode::kLocalSearch);
  CHECK(parse_lower_bound_spec("bf").mode == LowerBoundSpec::Mode::kBruteForce);
  const auto v = parse_lower_bound_spec("1.5");
  CHECK(v.mode == LowerBoundSpec::Mode::kExplicit);
  CHECK(v.value == 1.5);
  CHECK_THROWS_AS(parse_lower_bound_spec("best"), ConfigError);

  CHECK(parse_bounds("fact,augfact") ==
        std::vector{BoundKind::kAugFact, BoundKind::kFact});
  CHECK_THROWS_AS(parse_bounds("fact,linx"), ConfigError);
}

TEST_CASE("run_sweep rows, dominance and validity") {
  const auto model = generate_instance(10, 20.0, 5);
  SweepConfig config;
  config.s_values = parse_s_values("2..n-1", 10);
  config.shift = parse_shift_spec("min");
  config.lower_bound = parse_lower_bound_spec("bf");
  config.fixing = true;
  const auto rows = run_sweep(model, config);
  REQUIRE(rows.size() == 3 * 8);

  std::map<std::pair<int, BoundKind>, ReportRow> by_key;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(r.error.empty());
    REQUIRE(r.gap.has_value());
    CHECK(*r.gap >= -1e-6);
    CHECK(*r.fixed_to_one <= r.s);
    CHECK(*r.fixed_to_zero <= r.n - r.s);
    if (r.bound_kind == BoundKind::kFact) CHECK(r.t == 0.0);
    if (r.bound_kind == BoundKind::kAugFact) {
      CHECK(r.delta_lb.has_value());
      CHECK(r.theta_lb.has_value());
    }
    if (i > 0) {
      const auto& p = rows[i - 1];
      CHECK(std::tie(p.s, p.t, p.bound_kind) < std::tie(r.s, r.t, r.bound_kind));
    }
    by_key[{r.s, r.bound_kind}] = r;
  }
  for (int s = 2; s <= 9; ++s) {
    const double aug = *by_key[{s, BoundKind::kAugFact}].gap;
    CHECK(*by_key[{s, BoundKind::kFact}].gap >= aug - 1e-5);
    CHECK(*by_key[{s, BoundKind::kDdfR}].gap >= aug - 1e-5);
  }
}

TEST_CASE("run_sweep skips zero shifts for DDF-R and records row errors") {
  const auto model = generate_instance(6, 5.0, 2);
  SweepConfig config;
  config.s_values = {3};
  config.shift = parse_shift_spec("grid:3");
  const auto rows = run_sweep(model, config);
  // AugFact at 3 shifts, Fact once, DDF-R at the 2 positive shifts.
  CHECK(rows.size() == 6);

  config.shift = parse_shift_spec("0");
  config.lower_bound = parse_lower_bound_spec("1e9");
  config.fixing = true;
  config.bounds = {BoundKind::kAugFact};
  const auto bad = run_sweep(model, config);
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].error.empty());
}

TEST_CASE("CSV output is deterministic apart from timing") {
  SweepConfig config;
  config.s_values = {2, 4};
  config.shift = parse_shift_spec("grid:2");
  config.fixing = true;
  const auto a = run_sweep(generate_instance(8, 50.0, 9), config);
  const auto b = run_sweep(generate_instance(8, 50.0, 9), config);
  CHECK(csv_without_timing(a) == csv_without_timing(b));

  std::ostringstream out;
  write_csv(out, a);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kCsvVersionLine);
  std::getline(in, line);
  CHECK(line ==
        "n,s,t,bound_kind,upper_bound,lower_bound,gap,fixed_to_one,fixed_to_zero,"
        "delta_lb,theta_lb,iterations,wall_time_ms,error");

  ReportRow r;
  r.error = "bad, \"quoted\"";
  std::ostringstream quoted;
  write_csv(quoted, {r});
  CHECK(quoted.str().find("\"bad, \"\"quoted\"\"\"") != std::string::npos);
}
