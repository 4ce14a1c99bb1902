#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fkdet/algebra.hpp"

namespace fkdet::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kBudget = 3 };

struct TGrid {
  double start = 0.001;
  double stop = 4.0;
  int count = 200;

  /// Parses "start:stop:count"; throws ValidationError.
  static TGrid parse(const std::string& text);
  /// count points from start to stop; the endpoints are exact.
  std::vector<double> points() const;
};

struct SweepConfig {
  std::string op = "free";  // free, symmetric, cyclic, fig8-wirtinger, fig8-twist
  int d = 3;
  TGrid grid{1.0, 1.0, 1};
  int N = 6;
  std::string lambda = "safe";  // safe, paper, or a rational such as 1/9
  std::optional<std::filesystem::path> rep;
  std::size_t budget = 50'000'000;
  unsigned threads = 1;
};

struct SweepRow {
  std::optional<double> t;  // empty for families without a t parameter
  int n = 0;
  double lambda = 0.0;
  double bound = 0.0;
  bool certified = false;
};

/// Worker count from FKDET_THREADS, capped by the hardware.
unsigned worker_threads();

/// printf("%#.12g").
std::string format_value(double x);

std::string cmd_exact(const std::string& family, int d);

struct SeriesResult {
  std::string csv;
  bool verified = true;
};
SeriesResult cmd_series(const std::string& family, int d, int K, bool verify,
                        std::size_t budget);

/// Rows for n = 1..N at every t of the sweep, in grid order.
std::vector<SweepRow> cmd_approx(const SweepConfig& config);
std::string to_csv(const std::vector<SweepRow>& rows);

/// mahler_1d for one-variable input without a grid, else mahler_nd.
double cmd_mahler(const std::string& poly, std::optional<int> grid);

struct FigureData {
  int which = 1;
  std::vector<SweepRow> rows;
  int N = 0;
};

/// Figure 1: fig8-wirtinger, N = 6. Figure 2: fig8-twist scaled by t with
/// the max(1, t) factor, N = 7. The lambda string follows SweepConfig.
FigureData compute_figure(int which, const TGrid& grid, const std::string& lambda,
                          const std::optional<std::filesystem::path>& rep, std::size_t budget,
                          unsigned threads);
std::string render_svg(const FigureData& fig);

std::string cmd_report(int digits = 6);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fkdet::cli
