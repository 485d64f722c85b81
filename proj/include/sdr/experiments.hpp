#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdr/driver.hpp"

namespace sdr {

// f(x) = A(x_1, x_2) + C * [|x| <= 1] with A the 2-D Ackley function. The
// response depends on x only through (x_1, x_2) and |x|; for k = 2 the
// reference projector of the study is e1 e1' + e2 e2'.
double ackley2(double x, double y);
TargetFunction ackley_indicator_target(int n, double C);

// Grid of runs over (n, C, lambda, seed).
struct SweepSpec {
  std::vector<int> dims;
  std::vector<double> C_values;
  std::vector<double> lambdas;
  RunConfig base;    // n, lambda, seed fields are overwritten per cell
  int repetitions = 3;
  std::uint64_t base_seed = 1;
};

struct SweepRow {
  int n = 0;
  double C = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  double acc = std::numeric_limits<double>::quiet_NaN();
  double phi1 = std::numeric_limits<double>::quiet_NaN();
  double phi2 = std::numeric_limits<double>::quiet_NaN();
  double total = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  double runtime_s = 0.0;
  bool failed = false;
};

// Runs every cell of the grid; rows come back in grid order regardless of
// the thread count. A failing cell is flagged and filled with NaNs instead
// of aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

// Schema: n,C,lambda,seed,acc,phi1,phi2,total,gap,runtime_s (header row).
void sweep_to_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void sweep_to_csv_file(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> sweep_from_csv(std::istream& in);
std::vector<SweepRow> sweep_from_csv_file(const std::string& path);

// Accuracy-versus-lambda chart: one polyline per (n, C) group, x on a log
// scale, y the mean accuracy over seeds. Standalone SVG, no scripting.
std::string emit_chart(const std::vector<SweepRow>& rows);
void emit_chart_file(const std::vector<SweepRow>& rows, const std::string& path);

// The paper-scale and desk-scale parameter presets.
RunConfig paper_preset();
RunConfig desk_preset();

}  // namespace sdr
