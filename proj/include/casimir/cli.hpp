#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
//   casimir energy     --alpha A [--per-n]
//   casimir sweep      --alpha-min --alpha-max --steps --spacing --quantities
//   casimir fit-p      --alpha-min --alpha-max --steps --mode
//   casimir eccentric  --a --b --L (--eps-tilde | --eps) [--mass --omega0]
//   casimir freq-shift --a --b --L --mass --omega0
//   casimir orbits     --alpha --length-cap
//
// Common options: --config FILE (JSON object keyed by option name with
// underscores, e.g. {"rel_tol": 1e-10}; command-line flags win), --workers,
// --format, --out, and the numerics overrides --rel-tol, --abs-tol,
// --max-subdivisions, --n-tol, --n-hard-cap, --fd-step.

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/exact.hpp"

namespace casimir::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kNotConverged = 3 };

/// Shortest decimal string that reads back to the same double.
[[nodiscard]] std::string format_double(double x);

enum class Spacing { linear, log };

struct SweepRequest {
    double alpha_min = 1.1;
    double alpha_max = 4.0;
    int steps = 30;
    Spacing spacing = Spacing::linear;
    /// Any of e12, e_total, pressure, proximity(p), semiclassical, discrepancy.
    std::vector<std::string> quantities = {"e12", "pressure", "proximity(0.5)", "semiclassical",
                                           "discrepancy"};
};

struct SweepRow {
    double alpha = 0.0;
    /// Column name and value, in output order.
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::pair<std::string, double>> error_estimates;
    /// "ok", "not converged", or an error message.
    std::string status = "ok";
};

/// Alpha grid of the request. Log spacing is uniform in log(alpha - 1).
[[nodiscard]] std::vector<double> sweep_grid(const SweepRequest& req);

/// Column names after "alpha", before "status". Throws std::invalid_argument
/// for an empty or unknown quantity list.
[[nodiscard]] std::vector<std::string> sweep_columns(const SweepRequest& req);

/// Rows in alpha order, computed on `workers` threads.
[[nodiscard]] std::vector<SweepRow> run_sweep(const SweepRequest& req,
                                              const exact::NumericsConfig& cfg, unsigned workers);

/// CSV with header `alpha,<columns>,status`, LF line endings.
[[nodiscard]] std::string sweep_csv(const SweepRequest& req, const std::vector<SweepRow>& rows);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
