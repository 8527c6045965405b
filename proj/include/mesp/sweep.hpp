#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mesp/relaxation.hpp"
#include "mesp/spectral.hpp"

namespace mesp {

// How shifts are chosen for each s.
struct ShiftSpec {
  enum class Mode { kZero, kLambdaMin, kExplicit, kGrid };
  Mode mode = Mode::kLambdaMin;
  double value = 0.0;   // kExplicit
  int grid_points = 5;  // kGrid: equally spaced on [0, lambda_min]
};

// Where the MESP lower bound for each s comes from.
struct LowerBoundSpec {
  enum class Mode { kAuto, kLocalSearch, kBruteForce, kExplicit };
  Mode mode = Mode::kAuto;
  double value = 0.0;  // kExplicit
};

// kAuto enumerates when C(n, s) is at most this many subsets, otherwise runs
// local search from the greedy subset.
inline constexpr double kAutoBruteForceLimit = 1e5;

struct SweepConfig {
  std::vector<int> s_values;
  ShiftSpec shift;
  std::vector<BoundKind> bounds = {BoundKind::kAugFact, BoundKind::kFact,
                                   BoundKind::kDdfR};
  SolverOptions solver;
  LowerBoundSpec lower_bound;
  bool fixing = false;
};

// One (s, t, bound) result. Optional fields are written as empty CSV cells.
struct ReportRow {
  int n = 0;
  int s = 0;
  double t = 0.0;
  BoundKind bound_kind = BoundKind::kAugFact;
  std::optional<double> upper_bound;
  std::optional<double> lower_bound;
  std::optional<double> gap;
  std::optional<int> fixed_to_one;
  std::optional<int> fixed_to_zero;
  std::optional<double> delta_lb;
  std::optional<double> theta_lb;
  int iterations = 0;
  double wall_time_ms = 0.0;
  std::string error;
};

// "2..n-1", "3", "2,4,8", "2..10" and mixes separated by commas. The token
// "n" (optionally "n-K") stands for the dimension.
std::vector<int> parse_s_values(std::string_view spec, int n);
// "0", "min", a number, "grid" or "grid:M".
ShiftSpec parse_shift_spec(std::string_view spec);
// "auto", "ls", "bf" or a number.
LowerBoundSpec parse_lower_bound_spec(std::string_view spec);
// Comma-separated bound names.
std::vector<BoundKind> parse_bounds(std::string_view spec);

// Shifts for one s. Throws ConfigError for an explicit shift outside
// [0, lambda_min + kShiftSlack].
std::vector<double> resolve_shifts(const ShiftSpec& spec,
                                   const CovarianceModel& model);

// Rows ordered by (s, t, bound kind). Failures are recorded per row.
std::vector<ReportRow> run_sweep(const CovarianceModel& model,
                                 const SweepConfig& config);

inline constexpr const char* kCsvVersionLine = "# mesp-bounds v1";

// Writes the version line, the header and one line per row.
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace mesp
