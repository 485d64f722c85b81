#include "sdr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sdr/rng.hpp"

namespace sdr {

double ackley2(double x, double y) {
  const double e = 2.718281828459045235360287471353;
  const double two_pi = 6.283185307179586476925286766559;
  return -20.0 * std::exp(-0.2 * std::sqrt(0.5 * (x * x + y * y))) -
         std::exp(0.5 * (std::cos(two_pi * x) + std::cos(two_pi * y))) + e + 20.0;
}

TargetFunction ackley_indicator_target(int n, double C) {
  if (n < 2) throw std::invalid_argument("ackley target needs n >= 2");
  return [n, C](const Eigen::VectorXd& x) {
    if (x.size() != n) throw std::invalid_argument("target got a point of the wrong dimension");
    const double bump = x.norm() <= 1.0 ? C : 0.0;
    return ackley2(x(0), x(1)) + bump;
  };
}

RunConfig paper_preset() {
  RunConfig cfg;
  cfg.outer_iters = 200;
  cfg.gauss_samples = 1000;
  cfg.cutoff_samples = 10000;
  cfg.units = 200;
  cfg.gamma = std::numeric_limits<double>::infinity();
  cfg.radius = 0.0;  // Q(0.01, n)
  cfg.quantile_p = 0.01;
  return cfg;
}

RunConfig desk_preset() {
  RunConfig cfg;
  cfg.outer_iters = 50;
  cfg.gauss_samples = 500;
  cfg.cutoff_samples = 2000;
  cfg.units = 64;
  cfg.gamma = std::numeric_limits<double>::infinity();
  cfg.radius = 0.0;
  cfg.quantile_p = 0.01;
  return cfg;
}

namespace {

struct Cell {
  int n;
  double C;
  double lambda;
  std::uint64_t seed;
};

SweepRow run_cell(const SweepSpec& spec, const Cell& cell) {
  SweepRow row;
  row.n = cell.n;
  row.C = cell.C;
  row.lambda = cell.lambda;
  row.seed = cell.seed;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    RunConfig cfg = spec.base;
    cfg.n = cell.n;
    cfg.lambda = cell.lambda;
    cfg.seed = cell.seed;
    cfg.radius = 0.0;  // re-derive Q(p, n) per dimension

    Eigen::MatrixXd P_true = Eigen::MatrixXd::Zero(cell.n, cell.n);
    P_true(0, 0) = 1.0;
    P_true(1, 1) = 1.0;

    const RunResult res =
        run_alternating(cfg, ackley_indicator_target(cell.n, cell.C), &P_true);
    if (!res.trace.empty()) {
      const TraceRow& last = res.trace.back();
      row.acc = last.acc;
      row.phi1 = last.phi1;
      row.phi2 = last.phi2;
      row.total = last.total;
      row.gap = last.gap;
    }
  } catch (const std::exception&) {
    row.failed = true;
  }
  row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  if (spec.dims.empty() || spec.C_values.empty() || spec.lambdas.empty() ||
      spec.repetitions < 1) {
    throw std::invalid_argument("sweep grids must be non-empty");
  }
  if (spec.base.units < 1 || spec.base.gauss_samples < 1) {
    throw std::invalid_argument("sweep base config is invalid");
  }

  std::vector<Cell> cells;
  for (int n : spec.dims) {
    for (double C : spec.C_values) {
      for (double lam : spec.lambdas) {
        for (int rep = 0; rep < spec.repetitions; ++rep) {
          cells.push_back({n, C, lam, derive_seed(spec.base_seed, rep)});
        }
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  const int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = run_cell(spec, cells[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          rows[i] = run_cell(spec, cells[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

void sweep_to_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "n,C,lambda,seed,acc,phi1,phi2,total,gap,runtime_s\n";
  for (const SweepRow& r : rows) {
    out << r.n << ',' << csv_num(r.C) << ',' << csv_num(r.lambda) << ',' << r.seed << ','
        << csv_num(r.acc) << ',' << csv_num(r.phi1) << ',' << csv_num(r.phi2) << ','
        << csv_num(r.total) << ',' << csv_num(r.gap) << ',' << csv_num(r.runtime_s) << '\n';
  }
}

void sweep_to_csv_file(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  sweep_to_csv(rows, f);
}

std::vector<SweepRow> sweep_from_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sweep CSV");
  if (line.rfind("n,C,lambda,seed", 0) != 0) {
    throw std::runtime_error("unexpected sweep CSV header: " + line);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) throw std::runtime_error("bad sweep CSV row: " + line);
    SweepRow r;
    r.n = std::stoi(fields[0]);
    r.C = std::stod(fields[1]);
    r.lambda = std::stod(fields[2]);
    r.seed = std::stoull(fields[3]);
    r.acc = std::stod(fields[4]);
    r.phi1 = std::stod(fields[5]);
    r.phi2 = std::stod(fields[6]);
    r.total = std::stod(fields[7]);
    r.gap = std::stod(fields[8]);
    r.runtime_s = std::stod(fields[9]);
    r.failed = std::isnan(r.acc);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SweepRow> sweep_from_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return sweep_from_csv(f);
}

namespace {

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string emit_chart(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_chart needs a non-empty table");

  // group key (n, C) -> lambda -> mean acc over seeds
  std::map<std::pair<int, double>, std::map<double, std::pair<double, int>>> groups;
  std::set<int> dims;
  for (const SweepRow& r : rows) {
    if (r.failed || std::isnan(r.acc)) continue;
    auto& cell = groups[{r.n, r.C}][r.lambda];
    cell.first += r.acc;
    cell.second += 1;
    dims.insert(r.n);
  }
  if (groups.empty()) throw std::invalid_argument("emit_chart: no successful rows");

  double lx_min = std::numeric_limits<double>::infinity();
  double lx_max = -std::numeric_limits<double>::infinity();
  double y_max = 0.0;
  for (const auto& [key, series] : groups) {
    for (const auto& [lam, acc] : series) {
      const double lx = std::log10(lam);
      lx_min = std::min(lx_min, lx);
      lx_max = std::max(lx_max, lx);
      y_max = std::max(y_max, acc.first / acc.second);
    }
  }
  if (lx_max - lx_min < 1e-12) {
    lx_min -= 0.5;
    lx_max += 0.5;
  }
  y_max = std::max(y_max * 1.1, 1e-12);

  const double W = 560.0, H = 360.0;
  const double ml = 62.0, mr = 140.0, mt = 24.0, mb = 46.0;
  const double pw = W - ml - mr, ph = H - mt - mb;
  auto px = [&](double lx) { return ml + (lx - lx_min) / (lx_max - lx_min) * pw; };
  auto py = [&](double y) { return mt + (1.0 - y / y_max) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << static_cast<int>(W)
      << "\" height=\"" << static_cast<int>(H) << "\" viewBox=\"0 0 " << static_cast<int>(W)
      << ' ' << static_cast<int>(H) << "\">\n";
  svg << "<rect width=\"" << static_cast<int>(W) << "\" height=\"" << static_cast<int>(H)
      << "\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << fmt2(ml) << "\" y=\"" << fmt2(mt) << "\" width=\"" << fmt2(pw)
      << "\" height=\"" << fmt2(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  // x ticks at integer powers of ten inside the range
  for (int e = static_cast<int>(std::ceil(lx_min - 1e-9));
       e <= static_cast<int>(std::floor(lx_max + 1e-9)); ++e) {
    const double x = px(e);
    svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(mt + ph) << "\" x2=\"" << fmt2(x)
        << "\" y2=\"" << fmt2(mt + ph + 5) << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(mt + ph + 20)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">1e" << e
        << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double yv = y_max * i / 4.0;
    const double y = py(yv);
    svg << "<line x1=\"" << fmt2(ml - 5) << "\" y1=\"" << fmt2(y) << "\" x2=\"" << fmt2(ml)
        << "\" y2=\"" << fmt2(y) << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << fmt2(ml - 9) << "\" y=\"" << fmt2(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fmt_sig(yv)
        << "</text>\n";
  }
  svg << "<text x=\"" << fmt2(ml + pw / 2) << "\" y=\"" << fmt2(H - 10)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">lambda</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt2(mt + ph / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 "
      << fmt2(mt + ph / 2) << ")\">acc</text>\n";

  int idx = 0;
  for (const auto& [key, series] : groups) {
    const char* color = kPalette[idx % 8];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [lam, acc] : series) {
      if (!first) svg << ' ';
      first = false;
      svg << fmt2(px(std::log10(lam))) << ',' << fmt2(py(acc.first / acc.second));
    }
    svg << "\"/>\n";
    for (const auto& [lam, acc] : series) {
      svg << "<circle cx=\"" << fmt2(px(std::log10(lam))) << "\" cy=\""
          << fmt2(py(acc.first / acc.second)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    std::ostringstream label;
    if (dims.size() > 1) label << "n=" << key.first << ", ";
    label << "C=" << fmt_sig(key.second);
    const double ly = mt + 14 + 18.0 * idx;
    svg << "<line x1=\"" << fmt2(ml + pw + 10) << "\" y1=\"" << fmt2(ly - 4) << "\" x2=\""
        << fmt2(ml + pw + 30) << "\" y2=\"" << fmt2(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << fmt2(ml + pw + 35) << "\" y=\"" << fmt2(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << label.str() << "</text>\n";
    ++idx;
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_chart_file(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << emit_chart(rows);
}

}  // namespace sdr
