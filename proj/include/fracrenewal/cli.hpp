#pragma once

// Command implementations behind the fracrenewal tool. Every command writes
// CSV to a stream; lines starting with '#' are comments.

#include <fracrenewal/compound.hpp>
#include <fracrenewal/processes.hpp>
#include <fracrenewal/sampling.hpp>
#include <fracrenewal/tfde.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace fracrenewal::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3 };

/// Shortest decimal string that reads back to the same double.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Three significant figures, as in the printed tables.
inline std::string format_sig3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  std::string scale = "lin";  // lin | log

  void validate(const char* name) const {
    const std::string n(name);
    if (count < 1) throw DomainError(n + " grid: count must be >= 1");
    if (!(min <= max)) throw DomainError(n + " grid: min must not exceed max");
    if (scale != "lin" && scale != "log") throw DomainError(n + " grid: scale must be lin or log");
    if (scale == "log" && !(min > 0.0)) throw DomainError(n + " grid: log scale needs min > 0");
    if (count > 1 && min == max) throw DomainError(n + " grid: min equals max with count > 1");
  }

  std::vector<double> points() const {
    if (count == 1) return {min};
    std::vector<double> p(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      p[i] = scale == "log" ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
    }
    p.front() = min;
    p.back() = max;
    return p;
  }
};

struct RunConfig {
  std::string process = "ml";  // poisson | ml | wright
  std::vector<double> betas;   // empty: command default
  double lambda = 1.0;
  GridSpec t_grid{1e-2, 1e2, 41, "log"};
  std::vector<double> times;   // explicit times override t_grid
  GridSpec x_grid{-5.0, 5.0, 101, "lin"};
  int k_max = kCountingCap;
  double tail_tol = 1e-10;
  std::uint64_t seed = 42;
  long walkers = 10000;
  bool full = false;

  void validate() const {
    if (process != "poisson" && process != "ml" && process != "wright") {
      throw DomainError("process must be one of poisson, ml, wright");
    }
    for (double b : betas) OrderParam{b};
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    t_grid.validate("t");
    x_grid.validate("x");
    for (double t : times) {
      if (!(t >= 0.0)) throw DomainError("times must be nonnegative");
    }
    if (k_max < 1) throw DomainError("k-max must be >= 1");
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw DomainError("tail-tol must lie in (0, 1)");
    if (walkers < 1) throw DomainError("walkers must be >= 1");
  }

  std::vector<double> time_points() const { return times.empty() ? t_grid.points() : times; }
};

inline std::unique_ptr<WaitingTimeLaw> make_law(const std::string& process, double beta, double lambda) {
  if (process == "poisson") return std::make_unique<PoissonLaw>(lambda);
  if (process == "ml") return std::make_unique<MittagLefflerLaw>(beta);
  if (process == "wright") return std::make_unique<WrightLaw>(beta);
  throw DomainError("unknown process " + process);
}

inline std::string cell(double v, bool full) { return full ? format_number(v) : format_sig3(v); }

// ---------------------------------------------------------------------------

/// Long-format survival and density curves.
inline void cmd_curves(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::vector<double> betas = cfg.betas;
  if (cfg.process == "poisson") betas = {1.0};
  if (betas.empty()) betas = {0.25, 0.5, 0.75, 1.0};
  out << "# process=" << cfg.process;
  if (cfg.process == "poisson") out << " lambda=" << format_number(cfg.lambda);
  out << "\n";
  out << "beta,t,survival,density\n";
  for (double b : betas) {
    const auto law = make_law(cfg.process, b, cfg.lambda);
    if (law->has_atoms()) out << "# beta=" << format_number(b) << ": waiting time is an atom at t=1, density column is ATOM@1\n";
    for (double t : cfg.time_points()) {
      out << format_number(b) << ',' << format_number(t) << ',' << format_number(law->survival(t)) << ',';
      if (law->has_atoms()) {
        out << "ATOM@1";
      } else {
        out << format_number(law->density(t));
      }
      out << '\n';
    }
  }
}

inline const std::vector<double>& table_times() {
  static const std::vector<double> ts{0.1, 0.5, 1, 2, 5, 10, 20, 50, 100};
  return ts;
}

struct TableRow {
  double t, power_law, mittag_leffler, wright, poisson;
};

/// Survival (which = 0) or density (which = 1) comparison at beta = 1/2.
inline std::vector<TableRow> table_rows(int which) {
  const MittagLefflerLaw ml(0.5);
  const WrightLaw wr(0.5);
  const PoissonLaw po(1.0);
  std::vector<TableRow> rows;
  for (double t : table_times()) {
    if (which == 0) {
      rows.push_back({t, half::power_law_survival(t), ml.survival(t), wr.survival(t), po.survival(t)});
    } else {
      rows.push_back({t, half::power_law_density(t), ml.density(t), wr.density(t), po.density(t)});
    }
  }
  return rows;
}

inline void cmd_tables(const RunConfig& cfg, std::ostream& out) {
  const char* titles[2] = {"# survival functions, beta=1/2", "# density functions, beta=1/2"};
  for (int which = 0; which < 2; ++which) {
    out << titles[which] << "\n";
    out << "t,power_law,mittag_leffler,wright,poisson\n";
    for (const TableRow& r : table_rows(which)) {
      out << format_number(r.t) << ',' << cell(r.power_law, cfg.full) << ',' << cell(r.mittag_leffler, cfg.full) << ','
          << cell(r.wright, cfg.full) << ',' << cell(r.poisson, cfg.full) << '\n';
    }
  }
}

/// P(x, t) of the compound process with Gaussian jumps next to U(x, t).
inline void cmd_compound(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double beta = cfg.process == "poisson" ? 1.0 : (cfg.betas.empty() ? 0.5 : cfg.betas.front());
  const auto law = make_law(cfg.process, beta, cfg.lambda);
  auto jumps = std::make_shared<const GaussianJumpLaw>(2.0);
  const TfdeSolution tfde(beta);
  const std::vector<double> ts = cfg.times.empty() ? std::vector<double>{1.0, 10.0} : cfg.times;
  out << "# process=" << cfg.process << " beta=" << format_number(beta) << " jumps=gaussian(variance=2)\n";
  out << "t,x,P,U\n";
  for (double t : ts) {
    const SojournCDF P = sojourn_cdf(*law, jumps, t, cfg.tail_tol);
    if (P.K() > cfg.k_max) throw TruncationError("series index exceeds k-max", P.tail_bound());
    out << "# t=" << format_number(t) << " atom_mass=" << format_number(P.atom_mass()) << " K=" << P.K()
        << " tail=" << format_number(P.tail_bound()) << "\n";
    for (double x : cfg.x_grid.points()) {
      out << format_number(t) << ',' << format_number(x) << ',' << format_number(P(x)) << ','
          << format_number(tfde.cdf(x, t)) << '\n';
    }
  }
}

/// Per-walker N(t) and x(t) with a summary footer.
inline void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double beta = cfg.process == "poisson" ? 1.0 : (cfg.betas.empty() ? 0.5 : cfg.betas.front());
  const double t = cfg.times.empty() ? 10.0 : cfg.times.front();
  const auto law = make_law(cfg.process, beta, cfg.lambda);
  const GaussianJumpLaw jumps(2.0);
  const auto walkers = static_cast<std::size_t>(cfg.walkers);
  const TrajectoryBatch batch = simulate_ctrw(*law, jumps, t, walkers, cfg.seed);

  out << "# process=" << cfg.process << " beta=" << format_number(beta) << " t=" << format_number(t)
      << " seed=" << cfg.seed << " walkers=" << walkers << "\n";
  out << "walker,N,x\n";
  for (std::size_t w = 0; w < walkers; ++w) {
    out << w << ',' << batch.counts[w] << ',' << format_number(batch.positions[w]) << '\n';
  }
  // waiting times for the KS check come from streams disjoint from the walkers'
  std::vector<double> waits(walkers);
  RngStream rng(cfg.seed, std::uint64_t{1} << 63);
  for (auto& w : waits) w = law->sample(rng);
  const double ks = ks_distance(waits, [&](double x) { return law->cdf(x); });
  const double m = renewal_function(*law, t);
  double var = 0.0;
  const double mean = batch.mean_count();
  for (long n : batch.counts) var += (n - mean) * (n - mean);
  var = walkers > 1 ? var / static_cast<double>(walkers - 1) : 0.0;
  out << "# mean_N=" << format_number(mean) << " m(t)=" << format_number(m)
      << " stderr=" << format_number(std::sqrt(var / static_cast<double>(walkers))) << "\n";
  out << "# ks_wait=" << format_number(ks) << " ks_critical_1pct=" << format_number(ks_critical_1pct(walkers)) << "\n";
}

/// Runs a command; returns the process exit code and reports errors on err.
inline int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (command == "curves") {
      cmd_curves(cfg, out);
    } else if (command == "tables") {
      cmd_tables(cfg, out);
    } else if (command == "compound") {
      cmd_compound(cfg, out);
    } else if (command == "simulate") {
      cmd_simulate(cfg, out);
    } else {
      err << "error: unknown command '" << command << "'\n";
      return kUsage;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}

}  // namespace fracrenewal::cli
