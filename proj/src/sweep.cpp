#include "mesp/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <tuple>

#include "mesp/certificates.hpp"
#include "mesp/errors.hpp"
#include "mesp/primal.hpp"

namespace mesp {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long parse_integer(const std::string& tok) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0') {
    throw ConfigError("bad integer '" + tok + "'");
  }
  return v;
}

double parse_double(const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError("bad number '" + tok + "'");
  }
  return v;
}

// "7", "n", "n-1"
long parse_s_term(const std::string& tok, int n) {
  if (!tok.empty() && tok[0] == 'n') {
    if (tok.size() == 1) return n;
    if (tok[1] == '-') return n - parse_integer(tok.substr(2));
    if (tok[1] == '+') return n + parse_integer(tok.substr(2));
    throw ConfigError("bad s term '" + tok + "'");
  }
  return parse_integer(tok);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

struct LowerBound {
  std::optional<double> value;
  std::string error;
};

LowerBound compute_lower_bound(const CovarianceModel& model, int s,
                               const LowerBoundSpec& spec) {
  LowerBound out;
  try {
    switch (spec.mode) {
      case LowerBoundSpec::Mode::kExplicit:
        out.value = spec.value;
        break;
      case LowerBoundSpec::Mode::kBruteForce:
        out.value = brute_force(model, s).objective;
        break;
      case LowerBoundSpec::Mode::kLocalSearch:
        out.value = local_search(model, s, greedy(model, s)).objective;
        break;
      case LowerBoundSpec::Mode::kAuto:
        if (std::exp(log_binomial(model.dim(), s)) <= kAutoBruteForceLimit) {
          out.value = brute_force(model, s).objective;
        } else {
          out.value = local_search(model, s, greedy(model, s)).objective;
        }
        break;
    }
  } catch (const Error& e) {
    out.error = std::string("lower bound: ") + e.what();
  }
  return out;
}

}  // namespace

std::vector<int> parse_s_values(std::string_view spec, int n) {
  std::vector<int> out;
  for (const std::string& part : split(spec, ',')) {
    if (part.empty()) throw ConfigError("empty entry in s list");
    const auto dots = part.find("..");
    long lo, hi;
    if (dots == std::string::npos) {
      lo = hi = parse_s_term(part, n);
    } else {
      lo = parse_s_term(trim(part.substr(0, dots)), n);
      hi = parse_s_term(trim(part.substr(dots + 2)), n);
    }
    if (lo > hi) {
      throw ConfigError("empty s range '" + part + "'");
    }
    for (long s = lo; s <= hi; ++s) {
      if (s < 1 || s > n) {
        throw ConfigError("s = " + std::to_string(s) + " outside [1, " +
                          std::to_string(n) + "]");
      }
      out.push_back(static_cast<int>(s));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ShiftSpec parse_shift_spec(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  ShiftSpec out;
  if (spec == "min") {
    out.mode = ShiftSpec::Mode::kLambdaMin;
  } else if (spec == "grid") {
    out.mode = ShiftSpec::Mode::kGrid;
  } else if (spec.rfind("grid:", 0) == 0) {
    out.mode = ShiftSpec::Mode::kGrid;
    const long m = parse_integer(spec.substr(5));
    if (m < 2) throw ConfigError("t grid needs at least 2 points");
    out.grid_points = static_cast<int>(m);
  } else {
    const double v = parse_double(spec);
    if (v < 0.0) throw ConfigError("t must be nonnegative");
    out.mode = v == 0.0 ? ShiftSpec::Mode::kZero : ShiftSpec::Mode::kExplicit;
    out.value = v;
  }
  return out;
}

LowerBoundSpec parse_lower_bound_spec(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  LowerBoundSpec out;
  if (spec == "auto") {
    out.mode = LowerBoundSpec::Mode::kAuto;
  } else if (spec == "ls") {
    out.mode = LowerBoundSpec::Mode::kLocalSearch;
  } else if (spec == "bf") {
    out.mode = LowerBoundSpec::Mode::kBruteForce;
  } else {
    out.mode = LowerBoundSpec::Mode::kExplicit;
    out.value = parse_double(spec);
  }
  return out;
}

std::vector<BoundKind> parse_bounds(std::string_view spec) {
  std::vector<BoundKind> out;
  for (const std::string& name : split(spec, ',')) {
    try {
      out.push_back(parse_bound_kind(name));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> resolve_shifts(const ShiftSpec& spec,
                                   const CovarianceModel& model) {
  const double lmin = model.lambda_min();
  switch (spec.mode) {
    case ShiftSpec::Mode::kZero:
      return {0.0};
    case ShiftSpec::Mode::kLambdaMin:
      return {lmin};
    case ShiftSpec::Mode::kExplicit:
      if (spec.value < 0.0 || spec.value > lmin + kShiftSlack) {
        throw ConfigError("t = " + format_double(spec.value) +
                          " outside [0, lambda_min = " + format_double(lmin) +
                          "]");
      }
      return {spec.value};
    case ShiftSpec::Mode::kGrid: {
      std::vector<double> out;
      const int m = spec.grid_points;
      for (int j = 0; j < m; ++j) {
        out.push_back(j == m - 1 ? lmin : lmin * j / (m - 1));
      }
      return out;
    }
  }
  return {};
}

std::vector<ReportRow> run_sweep(const CovarianceModel& model,
                                 const SweepConfig& config) {
  using Clock = std::chrono::steady_clock;
  const int n = model.dim();
  const double lmin = model.lambda_min();
  const std::vector<double> shifts = resolve_shifts(config.shift, model);
  for (int s : config.s_values) {
    if (s < 1 || s > n) {
      throw ConfigError("s = " + std::to_string(s) + " outside [1, " +
                        std::to_string(n) + "]");
    }
  }

  std::vector<ReportRow> rows;
  for (int s : config.s_values) {
    const LowerBound lb = compute_lower_bound(model, s, config.lower_bound);

    std::vector<std::pair<double, BoundKind>> tasks;
    for (BoundKind kind : config.bounds) {
      if (kind == BoundKind::kFact) {
        tasks.emplace_back(0.0, kind);
        continue;
      }
      for (double t : shifts) {
        if (kind == BoundKind::kDdfR && !(t > 0.0)) continue;
        tasks.emplace_back(t, kind);
      }
    }
    std::sort(tasks.begin(), tasks.end());
    tasks.erase(std::unique(tasks.begin(), tasks.end()), tasks.end());

    for (const auto& [t, kind] : tasks) {
      ReportRow row;
      row.n = n;
      row.s = s;
      row.t = t;
      row.bound_kind = kind;
      row.lower_bound = lb.value;
      const auto start = Clock::now();
      try {
        const RelaxationSolution sol =
            solve_bound(model, kind, t, s, config.solver);
        row.upper_bound = sol.certified_ub;
        row.iterations = sol.iterations;
        if (lb.value) row.gap = sol.certified_ub - *lb.value;
        if (kind == BoundKind::kAugFact && t == lmin) {
          const ImprovementCertificate cert =
              improvement_certificate(model, sol);
          row.delta_lb = cert.delta_lb;
          row.theta_lb = cert.theta_lb;
        }
        if (config.fixing && lb.value) {
          const FixingCertificate fix = fix_variables(model, sol, *lb.value);
          row.fixed_to_one = static_cast<int>(fix.fixed_one.size());
          row.fixed_to_zero = static_cast<int>(fix.fixed_zero.size());
        }
        if (!lb.error.empty()) row.error = lb.error;
      } catch (const Error& e) {
        row.error = e.what();
      }
      row.wall_time_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - start)
              .count();
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return std::tie(a.s, a.t, a.bound_kind) <
                            std::tie(b.s, b.t, b.bound_kind);
                   });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << kCsvVersionLine << '\n';
  out << "n,s,t,bound_kind,upper_bound,lower_bound,gap,fixed_to_one,"
         "fixed_to_zero,delta_lb,theta_lb,iterations,wall_time_ms,error\n";
  char ms[32];
  for (const ReportRow& r : rows) {
    std::snprintf(ms, sizeof(ms), "%.3f", r.wall_time_ms);
    out << r.n << ',' << r.s << ',' << format_double(r.t) << ','
        << to_string(r.bound_kind) << ',' << cell(r.upper_bound) << ','
        << cell(r.lower_bound) << ',' << cell(r.gap) << ','
        << cell(r.fixed_to_one) << ',' << cell(r.fixed_to_zero) << ','
        << cell(r.delta_lb) << ',' << cell(r.theta_lb) << ',' << r.iterations
        << ',' << ms << ',' << csv_quote(r.error) << '\n';
  }
}

}  // namespace mesp
