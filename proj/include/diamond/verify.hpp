#pragma once

// Monte Carlo verification harness: runs the invariants of every module on
// seeded random networks. Trial t uses trial_seed(master, t), so a failing
// trial can be replayed on its own.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "diamond/af.hpp"
#include "diamond/cuts.hpp"
#include "diamond/model.hpp"
#include "diamond/random.hpp"
#include "diamond/selection.hpp"

namespace diamond {

enum class KMode { all, one };

inline KMode parse_kmode(const std::string& s) {
  if (s == "all") return KMode::all;
  if (s == "one") return KMode::one;
  throw ValidationError("unknown k mode '" + s + "' (expected all|one)");
}

struct VerifyConfig {
  std::size_t trials = 1000;
  std::size_t nmax = 12;
  KMode kmode = KMode::all;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  std::size_t alpha_samples = 10;          // random AF coefficient vectors per trial
  std::optional<std::size_t> tight_k;      // also check the tight configuration for this k
};

struct VerifyFailure {
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::string invariant;
  std::string details;
  double violation = 0.0;
};

struct VerifyReport {
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::vector<VerifyFailure> failures;  // sorted by (seed, invariant)
  double max_violation = 0.0;
  double elapsed_seconds = 0.0;
  std::vector<std::string> notes;
};

// Largest N for the exhaustive oracles inside the harness.
inline constexpr std::size_t kMaxVerifyRelays = 16;

namespace detail {

inline constexpr double kDiscrete = std::numeric_limits<double>::infinity();

class Checker {
 public:
  Checker(VerifyReport& report, double tolerance) : report_(report), tolerance_(tolerance) {}

  void set_trial(std::size_t trial, std::uint64_t seed) {
    trial_ = trial;
    seed_ = seed;
  }

  // `violation` is how far an inequality is broken (<= 0 means satisfied).
  void check(const char* invariant, double violation, const std::string& details) {
    ++report_.checks;
    if (std::isnan(violation)) violation = kDiscrete;
    if (violation > report_.max_violation) report_.max_violation = violation;
    if (violation > tolerance_) report_.failures.push_back({seed_, trial_, invariant, details, violation});
  }

  void require(const char* invariant, bool ok, const std::string& details) {
    check(invariant, ok ? 0.0 : kDiscrete, details);
  }

 private:
  VerifyReport& report_;
  double tolerance_;
  std::size_t trial_ = 0;
  std::uint64_t seed_ = 0;
};

template <typename... Args>
std::string fmt(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

inline void check_tight_config(Checker& c, std::size_t k, std::vector<std::string>& notes) {
  const auto rt = tight_config(k, 1.0);
  const auto fast = omega_fast(rt);
  const auto brute = omega_bruteforce(rt);
  c.require("tight.omega", fast.value == static_cast<double>(k + 1) && brute.value == fast.value,
            fmt("k=", k, " omega=", fast.value));
  bool all_exact = true;
  std::vector<std::size_t> subset;
  for (std::size_t skip = 0; skip <= k; ++skip) {
    subset.clear();
    for (std::size_t i = 0; i <= k; ++i) {
      if (i != skip) subset.push_back(i);
    }
    all_exact = all_exact && omega_of_subset(rt, subset) == static_cast<double>(k);
  }
  c.require("tight.subsets", all_exact, fmt("k=", k));
  const double rk = ratio_rk(rt, k);
  const double expected = static_cast<double>(k) / static_cast<double>(k + 1);
  c.check("tight.ratio", std::abs(rk - expected) > 1e-12 ? kDiscrete : 0.0, fmt("k=", k, " r_k=", rk));
  notes.push_back(fmt("tight k=", k, ": omega=", fast.value, " omega_k=", omega_k_bruteforce(rt, k).value,
                      " r_k=", rk, (all_exact ? " (every k-subset exact)" : " (MISMATCH)")));
}

inline void run_trial(Checker& c, const VerifyConfig& cfg, std::size_t trial, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = rng.integer(1, cfg.nmax);
  const auto dist = trial % 2 == 0 ? GainDistribution::make_rayleigh(1.0) : GainDistribution::make_loguniform(0.1, 10.0);
  const double snr = rng.loguniform(0.1, 1000.0);
  const auto net = generate_network(n, dist, snr, splitmix64(seed));
  const auto rt = rate_table(net);

  // omega: fast path against the exhaustive oracle
  const auto fast = omega_fast(rt);
  const Rate omega = fast.value;
  c.require("omega.budget", fast.comparisons <= omega_fast_comparison_budget(n),
            fmt("N=", n, " comparisons=", fast.comparisons));
  const auto brute = omega_bruteforce(rt);
  c.require("omega.oracle", fast.value == brute.value, fmt("fast=", fast.value, " brute=", brute.value));
  c.require("omega.argmin", cut_value(rt, fast.argmin_cut) == fast.value &&
                                cut_value(rt, brute.argmin_cut) == brute.value,
            "argmin cut value differs from omega");

  // sandwich chain
  const auto sw = sandwich(rt);
  const double chain = std::max({sw.omega - sw.lower, sw.lower - sw.upper, sw.upper - (sw.omega + sw.gap), 0.0});
  c.check("sandwich.chain", chain,
          fmt("omega=", sw.omega, " lower=", sw.lower, " upper=", sw.upper, " G=", sw.gap));

  // augmentation by a zero relay
  const auto augmented = rt.appended(0.0, 0.0);
  c.require("omega.augment", omega_fast(augmented).value == omega, "zero relay changed omega");

  // k/(k+1) guarantee, selection, and its budget
  if (n >= 2 && omega > 0.0) {
    std::vector<std::size_t> ks;
    if (cfg.kmode == KMode::all) {
      for (std::size_t k = 1; k < n; ++k) ks.push_back(k);
    } else {
      ks.push_back(rng.integer(1, n - 1));
    }
    double prev_rk = 0.0;
    for (auto k : ks) {
      const double frac = static_cast<double>(k) / static_cast<double>(k + 1);
      const double rk = omega_k_bruteforce(rt, k).value / omega;
      c.check("ratio.lower", frac - rk, fmt("k=", k, " r_k=", rk));
      c.check("ratio.upper", rk - 1.0, fmt("k=", k, " r_k=", rk));
      if (cfg.kmode == KMode::all) c.check("ratio.monotone", prev_rk - rk, fmt("k=", k));
      prev_rk = rk;

      try {
        const auto sel = select(rt, k, omega);
        c.require("select.size", !sel.gamma.empty() && sel.gamma.size() <= k, fmt("k=", k, " |Gamma|=", sel.gamma.size()));
        c.check("select.guarantee", frac * omega - sel.omega_gamma,
                fmt("k=", k, " omega=", omega, " omega_gamma=", sel.omega_gamma));
        c.require("select.verify", verify_selection(rt, sel, k, omega), fmt("k=", k));
        c.require("select.budget", sel.comparisons <= select_comparison_budget(n, k),
                  fmt("k=", k, " comparisons=", sel.comparisons));
        const auto& lv = sel.certificate.levels;
        bool cert_ok = sel.certificate.a <= static_cast<int>(k) - 1;
        for (std::size_t i = 1; i < lv.size(); ++i) cert_ok = cert_ok && lv[i - 1] < lv[i] && lv[i] < sel.certificate.a;
        c.require("select.certificate", cert_ok, fmt("k=", k, " a=", sel.certificate.a));
        const auto sel_aug = select(augmented, k, omega);
        c.require("select.augment", sel_aug.omega_gamma == sel.omega_gamma, fmt("k=", k));
      } catch (const std::exception& e) {
        c.require("select.error", false, fmt("k=", k, ": ", e.what()));
      }
    }
  }

  // amplify-and-forward ceiling
  const auto [bound, c1] = af_upper_bound(rt);
  for (std::size_t s = 0; s < cfg.alpha_samples; ++s) {
    std::vector<double> a(n);
    for (auto& x : a) x = rng.uniform();
    const Rate r = af_rate(net, AfCoefficients(std::move(a)));
    c.check("af.ceiling", r - bound, fmt("rate=", r, " bound=", bound));
  }
  const auto opt = af_optimize(net, 1e-10);
  c.check("af.ceiling", opt.rate - bound, fmt("optimized rate=", opt.rate, " bound=", bound));
  const Rate start = af_rate(net, AfCoefficients::ones(n));
  c.check("af.optimizer", start - opt.rate, fmt("start=", start, " optimized=", opt.rate));

  // inequality behind the AF ceiling, with boundary b values mixed in
  std::vector<double> u_d(n), u_s(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    u_d[i] = rng.loguniform(1e-3, 1e3);
    u_s[i] = rng.loguniform(1e-3, 1e3);
    const double pick = rng.uniform();
    b[i] = pick < 0.2 ? 0.0 : pick < 0.4 ? 1.0 : rng.uniform();
  }
  const auto sides = coefficient_inequality_sides(u_d, u_s, b);
  c.check("af.coefficient_inequality", sides.rhs - sides.lhs, fmt("lhs=", sides.lhs, " rhs=", sides.rhs));
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyConfig& cfg) {
  if (!(cfg.tolerance >= 0.0) || !std::isfinite(cfg.tolerance)) throw ValidationError("tolerance must be finite and >= 0");
  if (cfg.nmax < 1 || cfg.nmax > kMaxVerifyRelays) {
    throw SizeError("nmax must lie in [1, " + std::to_string(kMaxVerifyRelays) + "]");
  }
  if (cfg.trials > 10'000'000) throw SizeError("too many trials");
  if (cfg.tight_k && (*cfg.tight_k < 1 || *cfg.tight_k + 1 > kMaxVerifyRelays)) {
    throw SizeError("tight k must lie in [1, " + std::to_string(kMaxVerifyRelays - 1) + "]");
  }

  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport report;
  report.trials = cfg.trials;
  detail::Checker checker(report, cfg.tolerance);

  if (cfg.tight_k) {
    checker.set_trial(0, cfg.seed);
    detail::check_tight_config(checker, *cfg.tight_k, report.notes);
  }
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const auto seed = trial_seed(cfg.seed, t);
    checker.set_trial(t, seed);
    try {
      detail::run_trial(checker, cfg, t, seed);
    } catch (const std::exception& e) {
      checker.require("trial.error", false, e.what());
    }
  }

  std::sort(report.failures.begin(), report.failures.end(), [](const VerifyFailure& a, const VerifyFailure& b) {
    return std::tie(a.seed, a.invariant, a.trial) < std::tie(b.seed, b.invariant, b.trial);
  });
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace diamond
