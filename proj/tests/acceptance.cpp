// Acceptance run: one PASS/FAIL line per criterion. With an index argument
// (1..10) only that criterion runs; the exit status is 0 iff all run ones pass.

#include <fracrenewal/fracrenewal.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace fracrenewal;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// printed three-figure tables, t = 0.1 .. 100; NAN marks a dash
const std::vector<double> kTimes{0.1, 0.5, 1, 2, 5, 10, 20, 50, 100};
using Col = std::vector<double>;
const Col kSurvPL{1.78, 7.98e-1, 5.64e-1, 3.99e-1, 2.52e-1, 1.78e-1, 1.26e-1, 7.98e-2, 5.64e-2};
const Col kSurvML{7.24e-1, 5.23e-1, 4.28e-1, 3.36e-1, 2.32e-1, 1.71e-1, 1.23e-1, 7.90e-2, 5.61e-2};
const Col kSurvW{9.74e-1, 6.83e-1, 5.21e-1, 3.83e-1, 2.48e-1, 1.77e-1, 1.26e-1, 7.97e-2, 5.64e-2};
const Col kSurvP{9.05e-1, 6.07e-1, 3.68e-1, 1.35e-1, 6.74e-3, 4.54e-5, 2.06e-9, NAN, NAN};
const Col kDensPL{8.92, 7.98e-1, 2.82e-1, 9.97e-2, 2.52e-2, 8.92e-3, 3.15e-3, 7.98e-4, 2.82e-4};
const Col kDensML{1.06e-1, 2.75e-1, 1.37e-1, 6.27e-2, 2.00e-2, 7.83e-3, 2.94e-3, 7.75e-4, 2.78e-4};
// the last entry is printed as 2.81e-2; the target is 2.81e-4
const Col kDensW{7.32e-1, 4.84e-1, 2.20e-1, 8.80e-2, 2.40e-2, 8.70e-3, 3.11e-3, 7.94e-4, 2.81e-4};
const Col kDensP{9.05e-1, 6.07e-1, 3.68e-1, 1.35e-1, 6.74e-3, 4.54e-5, 2.06e-9, NAN, NAN};

Verdict compare_table(const std::vector<std::pair<const Col*, std::function<double(double)>>>& cols,
                      const char* names[4]) {
  int n = 0, bad = 0;
  std::ostringstream misses;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t i = 0; i < kTimes.size(); ++i) {
      const double printed = (*cols[c].first)[i];
      if (std::isnan(printed)) continue;
      ++n;
      const double v = cols[c].second(kTimes[i]);
      if (!(rel(v, printed) < 5e-3)) {
        ++bad;
        misses << " " << names[c] << "@t=" << kTimes[i] << ":" << fmt("%.3e", v) << "vs" << fmt("%.3g", printed);
      }
    }
  }
  std::ostringstream d;
  d << (n - bad) << "/" << n << " entries within 5e-3" << (bad ? "; misses" : "") << misses.str();
  return {bad == 0, d.str()};
}

// 1
Verdict survival_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const MittagLefflerLaw ml(0.5);
  const WrightLaw w(0.5);
  const PoissonLaw p(1.0);
  const char* names[4] = {"P-L", "M-L", "Wright", "Poisson"};
  Verdict v = compare_table({{&kSurvPL, half::power_law_survival},
                             {&kSurvML, [&](double t) { return ml.survival(t); }},
                             {&kSurvW, [&](double t) { return w.survival(t); }},
                             {&kSurvP, [&](double t) { return p.survival(t); }}},
                            names);
  const double s = seconds_since(t0);
  v.detail += "; " + fmt("%.3f", s) + " s (limit 5 s)";
  v.pass = v.pass && s < 5.0;
  return v;
}

// 2
Verdict density_table() {
  const MittagLefflerLaw ml(0.5);
  const WrightLaw w(0.5);
  const PoissonLaw p(1.0);
  const char* names[4] = {"P-L", "M-L", "Wright", "Poisson"};
  return compare_table({{&kDensPL, half::power_law_density},
                        {&kDensML, [&](double t) { return ml.density(t); }},
                        {&kDensW, [&](double t) { return w.density(t); }},
                        {&kDensP, [&](double t) { return p.density(t); }}},
                       names);
}

// 3: sum of v_k until the terms die out, independent of the series' own stopping rule
Verdict normalization() {
  std::vector<std::pair<std::string, std::shared_ptr<WaitingTimeLaw>>> laws{{"poisson", std::make_shared<PoissonLaw>(1.0)}};
  for (double b : {0.25, 0.5, 0.75, 1.0}) {
    laws.push_back({"ml" + fmt("%.2f", b), std::make_shared<MittagLefflerLaw>(b)});
    laws.push_back({"wright" + fmt("%.2f", b), std::make_shared<WrightLaw>(b)});
  }
  double worst = 0.0;
  std::string where;
  for (const auto& [name, law] : laws) {
    for (double t : {0.1, 1.0, 10.0}) {
      double sum = 0.0, peak = 0.0;
      for (int k = 0; k <= kCountingCap; ++k) {
        const double v = counting_prob(*law, k, t);
        sum += v;
        peak = std::max(peak, v);
        if (k > 2 && v < 1e-18 * peak && v < 1e-18) break;
      }
      const double dev = std::fabs(sum - 1.0);
      if (dev > worst) {
        worst = dev;
        where = name + "@t=" + fmt("%g", t);
      }
    }
  }
  return {worst < 1e-8, "max |sum v_k - 1| = " + fmt("%.2e", worst) + " (" + where + "), tol 1e-8"};
}

// 4
Verdict closed_form_vs_oracle() {
  double worst_ml = 0.0, worst_p = 0.0;
  std::string where_ml, where_p;
  bool flagged = false;
  for (double t : {0.5, 2.0, 10.0}) {
    const TimeGrid grid = TimeGrid::uniform(0.0, t, 2001);
    for (double b : {0.5, 0.75}) {
      const MittagLefflerLaw ml(b);
      for (int k = 1; k <= 5; ++k) {
        const OracleResult r = convolution_oracle(ml, k, grid);
        flagged = flagged || r.coarse;
        const double e = rel(r.counting.back(), ml.counting(k, t));
        if (e > worst_ml) {
          worst_ml = e;
          where_ml = "beta=" + fmt("%g", b) + " k=" + std::to_string(k) + " t=" + fmt("%g", t);
        }
      }
    }
    // the Erlang densities are smooth, so a finer grid reaches the tighter tolerance
    const PoissonLaw p(1.0);
    const TimeGrid fine = TimeGrid::uniform(0.0, t, 8001);
    for (int k = 1; k <= 5; ++k) {
      const OracleResult r = convolution_oracle(p, k, fine);
      for (double e : {rel(r.counting.back(), *p.counting_prob_closed(k, t)), rel(r.density.back(), p.kfold_density(k, t)),
                       rel(r.cdf.back(), p.kfold_cdf(k, t))}) {
        if (e > worst_p) {
          worst_p = e;
          where_p = "k=" + std::to_string(k) + " t=" + fmt("%g", t);
        }
      }
    }
  }
  std::string d = "ML worst rel " + fmt("%.2e", worst_ml) + " (" + where_ml + "), tol 1e-3; Erlang worst rel " +
                  fmt("%.2e", worst_p) + " (" + where_p + "), tol 1e-6";
  if (flagged) d += "; oracle self-check flagged a coarse grid";
  return {worst_ml < 1e-3 && worst_p < 1e-6, d};
}

// 5: closed forms against the general series paths
Verdict half_order_identities() {
  const EvalPolicy wide{1e-13, 20000, 50};
  const WrightLaw general(0.5, WrightLaw::default_policy(), false);
  double worst[4] = {0, 0, 0, 0};
  for (int i = 0; i <= 40; ++i) {
    const double t = std::pow(10.0, -2.0 + 0.1 * i);
    const double x = std::sqrt(t);
    const double ml_surv = mittag_leffler_neg_series(0.5, x, wide);
    const double ml_dens = 0.5 * x / t * mittag_leffler_deriv_series(0.5, 1, -x, wide);
    worst[0] = std::max(worst[0], rel(ml_surv, half::ml_survival(t)));
    worst[1] = std::max(worst[1], rel(ml_dens, half::ml_density(t)));
    worst[2] = std::max(worst[2], rel(general.survival(t), half::wright_survival(t)));
    worst[3] = std::max(worst[3], rel(general.density(t), half::wright_density(t)));
  }
  const double m = std::max(std::max(worst[0], worst[1]), std::max(worst[2], worst[3]));
  return {m < 1e-12, "worst rel: ML survival " + fmt("%.1e", worst[0]) + ", ML density " + fmt("%.1e", worst[1]) +
                         ", Wright survival " + fmt("%.1e", worst[2]) + ", Wright density " + fmt("%.1e", worst[3]) +
                         "; tol 1e-12 on [1e-2, 1e2]"};
}

// 6
Verdict tail_constants_check() {
  bool ok = true;
  std::ostringstream d;
  const double t = 1e3;
  for (double b : {0.25, 0.5, 0.75}) {
    const double A = tail_constants(b).A_inf;
    const double eml = std::pow(t, 1 + b) * MittagLefflerLaw(b).density(t) / A - 1.0;
    const double ew = std::pow(t, 1 + b) * WrightLaw(b).density(t) / A - 1.0;
    ok = ok && std::fabs(eml) < 1e-2 && std::fabs(ew) < 1e-2;
    d << "beta=" << b << ": ML " << fmt("%+.4f", eml) << ", Wright " << fmt("%+.4f", ew) << "; ";
  }
  d << "tol 1e-2 at t=1e3";
  return {ok, d.str()};
}

// 7
Verdict wright_renewal_asymptotics() {
  const double t = 1e4;
  const WrightLaw general(0.5, WrightLaw::default_policy(), false);
  const double m = renewal_function(general, t);
  const double e = m * std::tgamma(1.5) / std::sqrt(t) - 1.0;
  return {std::fabs(e) < 1e-2, "m(1e4) = " + fmt("%.6g", m) + ", m Gamma(3/2) / t^(1/2) - 1 = " + fmt("%+.2e", e) +
                                   ", tol 1e-2"};
}

// 8
Verdict monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 100000;
  const double crit = ks_critical_1pct(n);
  std::vector<std::pair<std::string, std::shared_ptr<WaitingTimeLaw>>> laws{
      {"poisson", std::make_shared<PoissonLaw>(1.0)}};
  for (double b : {0.5, 1.0}) {
    laws.push_back({"ml" + fmt("%g", b), std::make_shared<MittagLefflerLaw>(b)});
    laws.push_back({"wright" + fmt("%g", b), std::make_shared<WrightLaw>(b)});
  }
  bool ok = true;
  std::ostringstream d;
  std::uint64_t seed = 1001;
  for (const auto& [name, law] : laws) {
    RngStream rng(seed++, 0);
    std::vector<double> x(n);
    for (double& v : x) v = sample_wait(*law, rng);
    const double ks = ks_distance(x, [&](double s) { return law->cdf(s); });
    ok = ok && ks < crit;
    d << name << " KS " << fmt("%.4f", ks) << "; ";
    const double b = law->descriptor().beta;
    if (name.rfind("wright", 0) == 0) {
      for (double s : {0.5, 1.0, 2.0}) {
        double m = 0, m2 = 0;
        for (double v : x) {
          const double e = std::exp(-s * v);
          m += e;
          m2 += e * e;
        }
        m /= n;
        // at beta = 1 every wait is 1 and se vanishes; allow n eps of summation rounding
        const double se = std::max(std::sqrt(std::max(m2 / n - m * m, 0.0) / n), n * 0x1p-52 * m / 3.0);
        const double z = std::fabs(m - std::exp(-std::pow(s, b)));
        const bool lt_ok = z <= 3.0 * se;
        ok = ok && lt_ok;
        if (!lt_ok || s == 1.0) d << name << " Laplace s=" << s << " |err|/se " << fmt("%.2f", se > 0 ? z / se : 0.0) << "; ";
      }
    }
  }
  const double secs = seconds_since(t0);
  d << "critical " << fmt("%.4f", crit) << ", seeds 1001..1005; " << fmt("%.1f", secs) << " s (limit 30 s)";
  return {ok && secs < 30.0, d.str()};
}

// 9
Verdict diffusion_limit() {
  const auto g = std::make_shared<const GaussianJumpLaw>(2.0);
  std::vector<double> xs;
  for (int i = 0; i <= 400; ++i) xs.push_back(-20.0 + 0.1 * i);
  bool ok = true;
  std::ostringstream d;
  const std::vector<std::tuple<std::string, std::shared_ptr<WaitingTimeLaw>, double>> cases{
      {"poisson", std::make_shared<PoissonLaw>(1.0), 1.0},
      {"ml", std::make_shared<MittagLefflerLaw>(0.5), 0.5},
      {"wright", std::make_shared<WrightLaw>(0.5), 0.5}};
  for (const auto& [name, law, beta] : cases) {
    const double d1 = diffusion_distance(*law, g, beta, 1.0, xs);
    const double d10 = diffusion_distance(*law, g, beta, 10.0, xs);
    ok = ok && d10 < d1;
    d << name << " " << fmt("%.4f", d1) << " -> " << fmt("%.4f", d10) << "; ";
  }
  double worst = 0.0;
  for (double t : {1.0, 10.0}) {
    for (int i = 0; i <= 200; ++i) {
      const double x = -10.0 + 0.1 * i;
      worst = std::max(worst, std::fabs(tfde_cdf(1.0, x, t) - 0.5 * (1.0 + std::erf(x / (2.0 * std::sqrt(t))))));
    }
  }
  ok = ok && worst < 1e-12;
  d << "U(beta=1) vs erf max diff " << fmt("%.1e", worst) << " (tol 1e-12)";
  return {ok, d.str()};
}

// 10
Verdict unit_order_dichotomy() {
  const auto g = std::make_shared<const GaussianJumpLaw>(2.0);
  double worst = 0.0;
  bool exact = true;
  for (double t : {0.5, 1.0, 2.5, 7.9, 10.0}) {
    const SojournCDF ml = sojourn_cdf(MittagLefflerLaw(1.0), g, t);
    const SojournCDF po = sojourn_cdf(PoissonLaw(1.0), g, t);
    for (int i = 0; i <= 200; ++i) {
      const double x = -10.0 + 0.1 * i;
      worst = std::max(worst, std::fabs(ml(x) - po(x)));
      worst = std::max(worst, std::fabs(compound_ml_cdf(1.0, *g, x, t) - compound_poisson_cdf(1.0, *g, x, t)));
    }
  }
  for (double t : {0.5, 2.5, 7.9}) {
    const SojournCDF clock = sojourn_cdf(WrightLaw(1.0), g, t);
    const int n = static_cast<int>(std::floor(t));
    for (int i = 0; i <= 200; ++i) {
      const double x = -10.0 + 0.1 * i;
      const double expected = n == 0 ? (x >= 0.0 ? 1.0 : 0.0) : g->kfold_cdf(n, x);
      exact = exact && clock(x) == expected && compound_wright_cdf(1.0, *g, x, t) == expected;
    }
  }
  return {worst < 1e-12 && exact, "ML(beta=1) vs Poisson max diff " + fmt("%.1e", worst) +
                                      " (tol 1e-12); clock walk equals W_[t] exactly: " + (exact ? "yes" : "no")};
}

struct Criterion {
  const char* role;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {"survival_table", survival_table},
    {"density_table", density_table},
    {"normalization", normalization},
    {"closed_form_vs_oracle", closed_form_vs_oracle},
    {"half_order_identities", half_order_identities},
    {"tail_constants", tail_constants_check},
    {"wright_renewal_asymptotics", wright_renewal_asymptotics},
    {"monte_carlo", monte_carlo},
    {"diffusion_limit", diffusion_limit},
    {"unit_order_dichotomy", unit_order_dichotomy},
};

}  // namespace

int main(int argc, char** argv) {
  const int count = static_cast<int>(std::size(kCriteria));
  int first = 1, last = count;
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > count) {
      std::fprintf(stderr, "usage: acceptance [1..%d]\n", count);
      return 2;
    }
  }
  bool all = true;
  for (int i = first; i <= last; ++i) {
    const Criterion& c = kCriteria[i - 1];
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", i, c.role, v.detail.c_str());
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
