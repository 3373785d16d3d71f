#pragma once

// Command implementations behind the `diamond` CLI. Each command writes its
// report to an output stream and returns the process exit status:
//   0  success
//   1  an invariant or bound check failed
//   2  bad input (parse, validation, or size guard)
//
// Text output prints one "key: value" per line with rates at 6 significant
// digits; machine output is a single JSON object at full precision. Relay
// indices are 1-based in all output.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diamond/af.hpp"
#include "diamond/cuts.hpp"
#include "diamond/io.hpp"
#include "diamond/model.hpp"
#include "diamond/random.hpp"
#include "diamond/selection.hpp"
#include "diamond/verify.hpp"

namespace diamond::cli {

enum class Format { text, machine };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "machine") return Format::machine;
  throw ValidationError("unknown format '" + s + "' (expected text|machine)");
}

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

inline std::string format_rate(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <typename Range>
std::vector<std::size_t> one_based(const Range& indices) {
  std::vector<std::size_t> out;
  for (auto i : indices) out.push_back(i + 1);
  return out;
}

inline std::string format_set(const std::vector<std::size_t>& one_based_indices) {
  std::string s = "{";
  for (std::size_t i = 0; i < one_based_indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(one_based_indices[i]);
  }
  return s + "}";
}

namespace detail {

class Report {
 public:
  explicit Report(Format f) : format_(f) {}

  void rate(const std::string& key, double v) {
    json_[key] = v;
    lines_.push_back(key + ": " + format_rate(v));
  }
  void count(const std::string& key, std::uint64_t v) {
    json_[key] = v;
    lines_.push_back(key + ": " + std::to_string(v));
  }
  void set(const std::string& key, const std::vector<std::size_t>& one_based_indices) {
    json_[key] = one_based_indices;
    lines_.push_back(key + ": " + format_set(one_based_indices));
  }
  void text(const std::string& key, const std::string& v) {
    json_[key] = v;
    lines_.push_back(key + ": " + v);
  }
  void flag(const std::string& key, bool v) {
    json_[key] = v;
    lines_.push_back(key + ": " + (v ? "pass" : "FAIL"));
  }
  // Machine-only structured payload, with a pre-rendered text block.
  void structured(const std::string& key, nlohmann::ordered_json value, const std::vector<std::string>& text_lines) {
    json_[key] = std::move(value);
    lines_.insert(lines_.end(), text_lines.begin(), text_lines.end());
  }

  void write(std::ostream& out) const {
    if (format_ == Format::machine) {
      out << json_.dump(2) << "\n";
    } else {
      for (const auto& l : lines_) out << l << "\n";
    }
  }

 private:
  Format format_;
  nlohmann::ordered_json json_ = nlohmann::ordered_json::object();
  std::vector<std::string> lines_;
};

inline nlohmann::ordered_json tradeoff_json(const TradeoffTable& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"k", r.k},
                    {"lower_bound", r.lower_bound_ck},
                    {"multiplicative_term", r.multiplicative_term},
                    {"strategy_gap", r.strategy_gap},
                    {"beamforming_gap", r.beamforming_gap}});
  }
  return {{"best_k", t.best_k}, {"best_bound", t.best_bound}, {"additive_baseline", t.additive_baseline},
          {"rows", rows}};
}

}  // namespace detail

struct OmegaOptions {
  bool brute = false;
  bool counts = false;
  Format format = Format::text;
};

inline int cmd_omega(const NetworkFile& file, const OmegaOptions& opt, std::ostream& out) {
  const auto& rt = file.rates;
  if (opt.brute && rt.size() > kMaxBruteForceRelays) {
    throw SizeError("--brute supports N <= " + std::to_string(kMaxBruteForceRelays));
  }
  const auto fast = omega_fast(rt);
  detail::Report r(opt.format);
  r.count("relays", rt.size());
  r.rate("omega", fast.value);
  r.set("argmin_cut", one_based(fast.argmin_cut.members()));
  r.count("comparisons", fast.comparisons);
  bool ok = true;
  if (opt.counts) {
    const auto budget = omega_fast_comparison_budget(rt.size());
    r.count("comparison_budget", budget);
    r.flag("within_budget", fast.comparisons <= budget);
    ok = ok && fast.comparisons <= budget;
  }
  if (opt.brute) {
    const auto brute = omega_bruteforce(rt);
    r.rate("omega_bruteforce", brute.value);
    r.set("argmin_cut_bruteforce", one_based(brute.argmin_cut.members()));
    r.count("comparisons_bruteforce", brute.comparisons);
    const bool equal = brute.value == fast.value;
    r.flag("oracle_match", equal);
    ok = ok && equal;
  }
  r.write(out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct SelectCliOptions {
  std::size_t k = 1;
  bool verify = false;
  GapModel gap_model = GapModel::nnc;
  Format format = Format::text;
};

inline int cmd_select(const NetworkFile& file, const SelectCliOptions& opt, std::ostream& out) {
  const auto& rt = file.rates;
  const std::size_t n = rt.size();
  if (opt.k < 1) throw ValidationError("k must be >= 1");
  if (opt.gap_model == GapModel::routing && opt.k != 1) throw ValidationError("routing gap model applies to k = 1 only");
  const Rate omega = omega_fast(rt).value;
  const auto sel = select(rt, opt.k, omega);

  detail::Report r(opt.format);
  r.count("relays", n);
  r.count("k", opt.k);
  r.rate("omega", omega);
  r.set("gamma", one_based(sel.gamma));
  r.rate("omega_gamma", sel.omega_gamma);
  if (omega > 0.0) r.rate("ratio", sel.omega_gamma / omega);
  r.count("certificate_a", static_cast<std::uint64_t>(sel.certificate.a));
  {
    std::string levels;
    for (std::size_t i = 0; i < sel.certificate.levels.size(); ++i) {
      levels += (i ? "," : "") + std::to_string(sel.certificate.levels[i]);
    }
    nlohmann::ordered_json lv = sel.certificate.levels;
    r.structured("certificate_levels", lv, {"certificate_levels: [" + levels + "]"});
  }
  const auto g = guarantee(omega, std::min(opt.k, n), n, opt.gap_model);
  r.text("gap_model", std::string(to_string(opt.gap_model)));
  r.rate("guarantee", g.lower_bound_ck);
  r.count("comparisons", sel.comparisons);

  bool ok = true;
  if (opt.verify) {
    const std::size_t kk = std::min(opt.k, n);
    const bool verified = verify_selection(rt, sel, kk, omega);
    const bool budget = sel.comparisons <= select_comparison_budget(n, opt.k);
    r.flag("verified", verified);
    r.flag("within_budget", budget);
    ok = verified && budget;
  }
  r.write(out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct BoundsOptions {
  bool table = false;
  Format format = Format::text;
};

/// Omega, the cut-set sandwich (N <= 24), the best-relay gap, and the hybrid
/// k-tradeoff per gap model. The tradeoff uses omega as the cut-set estimate,
/// which never exceeds the true cut-set bound.
inline int cmd_bounds(const NetworkFile& file, const BoundsOptions& opt, std::ostream& out) {
  const auto& rt = file.rates;
  const std::size_t n = rt.size();
  const Rate omega = omega_fast(rt).value;
  const auto [af_bound, c1] = af_upper_bound(rt);
  (void)af_bound;

  detail::Report r(opt.format);
  r.count("relays", n);
  r.rate("omega", omega);
  r.rate("gap_constant", gap_constant(n));
  r.rate("c1", c1);
  bool ok = true;
  if (n <= kMaxBruteForceRelays) {
    const auto sw = sandwich(rt);
    r.rate("lower", sw.lower);
    r.rate("upper", sw.upper);
    r.rate("upper_minus_c1", sw.upper - c1);
    const bool chain = sw.omega <= sw.lower + 1e-9 && sw.lower <= sw.upper + 1e-9 && sw.upper <= sw.omega + sw.gap + 1e-9;
    r.flag("sandwich_chain", chain);
    ok = chain;
  } else {
    r.text("lower", "skipped (N > " + std::to_string(kMaxBruteForceRelays) + ")");
    r.text("upper", "skipped (N > " + std::to_string(kMaxBruteForceRelays) + ")");
  }

  for (auto model : {GapModel::nnc, GapModel::optimized, GapModel::routing}) {
    const auto t = hybrid_tradeoff(omega, n, model);
    const std::string prefix = "tradeoff." + std::string(to_string(model));
    std::vector<std::string> lines = {prefix + ".best_k: " + std::to_string(t.best_k),
                                      prefix + ".best_bound: " + format_rate(t.best_bound)};
    if (model == GapModel::nnc) lines.push_back(prefix + ".additive_baseline: " + format_rate(t.additive_baseline));
    if (opt.table) {
      for (const auto& row : t.rows) {
        lines.push_back(prefix + ".k" + std::to_string(row.k) + ": " + format_rate(row.lower_bound_ck));
      }
    }
    r.structured(prefix, detail::tradeoff_json(t), lines);
  }
  r.write(out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct AfCliOptions {
  std::optional<std::vector<double>> alpha;
  bool optimize = false;
  double tol = 1e-9;
  Format format = Format::text;
};

inline int cmd_af(const NetworkFile& file, const AfCliOptions& opt, std::ostream& out) {
  if (!file.network) throw ValidationError("af needs channel gains: a gains-form file, or a rates-form file with snr");
  if (opt.alpha && opt.optimize) throw ValidationError("--alpha and --optimize are mutually exclusive");
  const auto& net = *file.network;
  const auto [bound, c1] = af_upper_bound(file.rates);

  detail::Report r(opt.format);
  r.count("relays", net.size());
  Rate rate = 0.0;
  std::vector<double> alpha;
  if (opt.optimize) {
    const auto rep = af_optimize(net, opt.tol);
    rate = rep.rate;
    alpha.assign(rep.alpha.values().begin(), rep.alpha.values().end());
    r.count("cycles", static_cast<std::uint64_t>(rep.cycles));
  } else {
    alpha = opt.alpha.value_or(std::vector<double>(net.size(), 1.0));
    if (alpha.size() == 1 && net.size() > 1) alpha.assign(net.size(), alpha.front());
    rate = af_rate(net, AfCoefficients(alpha));
  }
  {
    std::string s;
    for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + format_rate(alpha[i]);
    nlohmann::ordered_json aj = alpha;
    r.structured("alpha", aj, {"alpha: [" + s + "]"});
  }
  r.rate("af_rate", rate);
  r.rate("c1", c1);
  r.rate("upper_bound", bound);
  const bool ok = rate <= bound + 1e-9;
  r.flag("within_bound", ok);
  r.write(out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct GenOptions {
  std::size_t n = 1;
  GainDistribution dist;
  double snr = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::string> label;
};

inline int cmd_gen(const GenOptions& opt, std::ostream& out) {
  const auto net = generate_network(opt.n, opt.dist, opt.snr, opt.seed);
  out << to_json(net, opt.label).dump(2) << "\n";
  return kExitOk;
}

inline int cmd_tight(std::size_t k, double base_rate, std::ostream& out) {
  const auto rt = tight_config(k, base_rate);
  out << to_json(rt, "tight k=" + std::to_string(k)).dump(2) << "\n";
  return kExitOk;
}

inline int cmd_verify(const VerifyConfig& cfg, Format format, std::ostream& out) {
  const auto rep = run_verify(cfg);
  if (format == Format::machine) {
    nlohmann::ordered_json j;
    j["trials"] = rep.trials;
    j["checks"] = rep.checks;
    j["max_violation"] = std::isfinite(rep.max_violation) ? nlohmann::ordered_json(rep.max_violation)
                                                          : nlohmann::ordered_json("inf");
    auto& f = j["failures"] = nlohmann::ordered_json::array();
    for (const auto& x : rep.failures) {
      f.push_back({{"seed", x.seed}, {"trial", x.trial}, {"invariant", x.invariant}, {"details", x.details}});
    }
    j["notes"] = rep.notes;
    j["elapsed_seconds"] = rep.elapsed_seconds;
    out << j.dump(2) << "\n";
  } else {
    out << "trials: " << rep.trials << "\n";
    out << "checks: " << rep.checks << "\n";
    out << "failures: " << rep.failures.size() << "\n";
    out << "max_violation: " << format_rate(rep.max_violation) << "\n";
    for (const auto& n : rep.notes) out << "note: " << n << "\n";
    for (const auto& x : rep.failures) {
      out << "failure: seed=" << x.seed << " trial=" << x.trial << " " << x.invariant << " " << x.details << "\n";
    }
    out << "elapsed_seconds: " << format_rate(rep.elapsed_seconds) << "\n";
  }
  return rep.failures.empty() ? kExitOk : kExitCheckFailed;
}

}  // namespace diamond::cli
