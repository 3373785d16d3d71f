#pragma once

// Relay selection: find at most k relays whose subnetwork keeps a k/(k+1)
// fraction of omega, plus the bound calculators that turn omega-level
// statements into capacity guarantees.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/cuts.hpp"
#include "diamond/error.hpp"
#include "diamond/model.hpp"

namespace diamond {

/// Threshold levels produced while building the selection. `a == 0` means the
/// first relay found already met the k/(k+1) level on both hops.
struct SelectionCertificate {
  int a = 0;
  std::vector<int> levels;  // a_0 = 0 < a_1 < ... < a_l < a, empty when a == 0
};

struct SelectionResult {
  std::vector<std::size_t> gamma;  // 0-based, ascending
  Rate omega_gamma = 0.0;
  SelectionCertificate certificate;
  std::uint64_t comparisons = 0;
};

struct SelectOptions {
  // Recompute omega with omega_fast and reject a caller value that disagrees.
  bool check_omega = false;
  double omega_tolerance = 1e-9;
};

/// omega restricted to the relays in `gamma`, by exhaustive enumeration.
inline Rate omega_of_subset(const RateTable& rt, std::span<const std::size_t> gamma) {
  return omega_bruteforce(rt.restricted_to(gamma)).value;
}

/// Selection budget 2Nk - (k-1)k/2 + 2N, floored at 2N for k >= N.
inline std::uint64_t select_comparison_budget(std::size_t n, std::size_t k) {
  const auto ni = static_cast<std::int64_t>(n);
  const auto ki = static_cast<std::int64_t>(k);
  const std::int64_t budget = 2 * ni * ki - (ki - 1) * ki / 2 + 2 * ni;
  return static_cast<std::uint64_t>(std::max(budget, 2 * ni));
}

namespace detail {

inline std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

/// Picks <= k relays with omega(Gamma) >= k/(k+1) * omega.
///
/// With thresholds tau_j = j * omega / (k+1):
///   1. p = first relay with R_ps >= tau_k and R_pd >= tau_1. If R_pd >= tau_k, Gamma = {p}.
///   2. a in [1, k-1] with tau_{k-a} <= R_pd < tau_{k-a+1}; a_0 = 0.
///   3. Round r: y = first unused relay with R_ys >= tau_{a_{r-1}+1} and
///      R_yd >= tau_{k-a_{r-1}}. If R_ys >= tau_a, stop with the collected
///      relays plus y and p. Otherwise a_r is the level of R_ys and y joins
///      the collected set.
/// The levels a_r strictly increase below a, so step 3 stops within a rounds.
inline SelectionResult select(const RateTable& rt, std::size_t k, Rate omega, const SelectOptions& opts = {}) {
  const std::size_t n = rt.size();
  if (k < 1) throw ValidationError("k must be >= 1");
  if (n < 1) throw ValidationError("selection needs at least one relay");
  if (!std::isfinite(omega) || omega < 0.0) throw ValidationError("omega must be finite and >= 0");
  if (opts.check_omega) {
    const Rate actual = omega_fast(rt).value;
    if (std::abs(actual - omega) > opts.omega_tolerance * std::max(1.0, std::abs(actual))) {
      throw ValidationError("supplied omega " + std::to_string(omega) + " disagrees with computed " +
                            std::to_string(actual));
    }
  }

  SelectionResult out;
  auto finish = [&](std::vector<std::size_t> gamma) {
    out.gamma = detail::sorted(std::move(gamma));
    out.omega_gamma = omega_of_subset(rt, out.gamma);
    return out;
  };

  if (omega == 0.0) return finish({0});

  if (k >= n) {
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < n; ++i) {
      out.comparisons += 2;
      if (rt.r_s(i) > 0.0 && rt.r_d(i) > 0.0) nonzero.push_back(i);
    }
    if (nonzero.empty()) {
      nonzero.resize(n);
      std::iota(nonzero.begin(), nonzero.end(), std::size_t{0});
    }
    if (nonzero.size() > k) nonzero.resize(k);
    return finish(std::move(nonzero));
  }

  const auto ki = static_cast<int>(k);
  std::vector<Rate> tau(k + 1);
  for (std::size_t j = 0; j <= k; ++j) tau[j] = static_cast<double>(j) * omega / static_cast<double>(k + 1);

  std::vector<bool> used(n, false);
  auto find_first = [&](Rate min_s, Rate min_d) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      ++out.comparisons;
      if (rt.r_s(i) < min_s) continue;
      ++out.comparisons;
      if (rt.r_d(i) >= min_d) return i;
    }
    return std::nullopt;
  };

  const auto p = find_first(tau[k], tau[1]);
  if (!p) throw std::logic_error("no relay reaches the k/(k+1) and 1/(k+1) levels; omega is inconsistent");
  used[*p] = true;
  ++out.comparisons;
  if (rt.r_d(*p) >= tau[k]) return finish({*p});

  // Largest j in [1, k-1] with R_pd >= tau_j; then a = k - j.
  int j = ki - 1;
  for (; j > 1; --j) {
    ++out.comparisons;
    if (rt.r_d(*p) >= tau[static_cast<std::size_t>(j)]) break;
  }
  const int a = ki - j;
  out.certificate.a = a;
  out.certificate.levels.push_back(0);

  std::vector<std::size_t> collected;
  for (;;) {
    const int prev = out.certificate.levels.back();
    const auto y = find_first(tau[static_cast<std::size_t>(prev + 1)], tau[static_cast<std::size_t>(ki - prev)]);
    if (!y) throw std::logic_error("threshold round found no qualifying relay; omega is inconsistent");
    used[*y] = true;
    collected.push_back(*y);
    ++out.comparisons;
    if (rt.r_s(*y) >= tau[static_cast<std::size_t>(a)]) {
      collected.push_back(*p);
      return finish(std::move(collected));
    }
    // Level of R_ys in (prev, a): largest level whose threshold it reaches.
    int level = a - 1;
    for (; level > prev + 1; --level) {
      ++out.comparisons;
      if (rt.r_s(*y) >= tau[static_cast<std::size_t>(level)]) break;
    }
    out.certificate.levels.push_back(level);
  }
}

/// Brute-force check that `sel.gamma` keeps at least k/(k+1) of omega.
inline bool verify_selection(const RateTable& rt, const SelectionResult& sel, std::size_t k, Rate omega) {
  if (sel.gamma.empty()) throw ValidationError("selection is empty");
  if (sel.gamma.size() > kMaxBruteForceRelays) throw SizeError("selection too large to verify");
  const double frac = static_cast<double>(k) / static_cast<double>(k + 1);
  return omega_of_subset(rt, sel.gamma) >= frac * omega - 1e-9;
}

inline constexpr double kMaxSubsetEnumeration = 1e6;

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

struct OmegaK {
  Rate value = 0.0;
  std::vector<std::size_t> subset;  // lexicographically smallest maximizer
};

/// max over |Gamma| = k of omega(Gamma), enumerating every k-subset.
inline OmegaK omega_k_bruteforce(const RateTable& rt, std::size_t k) {
  const std::size_t n = rt.size();
  if (k < 1 || k > n) throw ValidationError("omega_k needs 1 <= k <= N");
  if (k > kMaxBruteForceRelays) throw SizeError("subset too large for brute-force omega");
  if (binomial(n, k) > kMaxSubsetEnumeration) {
    throw SizeError("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds the enumeration guard");
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  OmegaK best;
  bool have = false;
  for (;;) {
    const Rate v = omega_of_subset(rt, idx);
    if (!have || v > best.value) {
      best.value = v;
      best.subset = idx;
      have = true;
    }
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return best;
}

/// r_k = omega_k / omega.
inline double ratio_rk(const RateTable& rt, std::size_t k) {
  const Rate omega = omega_fast(rt).value;
  if (omega == 0.0) throw DegenerateNetworkError("r_k undefined: omega = 0");
  return omega_k_bruteforce(rt, k).value / omega;
}

/// N = k+1 relays with R_is = i R and R_id = (k+2-i) R, where every k-subset
/// keeps exactly k/(k+1) of omega.
inline RateTable tight_config(std::size_t k, Rate base_rate) {
  if (k < 1) throw ValidationError("k must be >= 1");
  detail::require_finite_positive(base_rate, "base_rate");
  std::vector<Rate> s(k + 1), d(k + 1);
  for (std::size_t i = 1; i <= k + 1; ++i) {
    s[i - 1] = static_cast<double>(i) * base_rate;
    d[i - 1] = static_cast<double>(k + 2 - i) * base_rate;
  }
  return RateTable(std::move(s), std::move(d));
}

// Achievability gap of the relaying scheme used on the chosen k relays.
enum class GapModel {
  nnc,        // 1.3 k (noisy network coding)
  optimized,  // log2(k+1) + log2(k) + 1 (optimized quantization)
  routing,    // 0, single relay decode-and-forward; k = 1 only
};

inline std::string_view to_string(GapModel m) {
  switch (m) {
    case GapModel::nnc:
      return "nnc";
    case GapModel::optimized:
      return "optimized";
    case GapModel::routing:
      return "routing";
  }
  return "?";
}

inline GapModel parse_gap_model(std::string_view s) {
  if (s == "nnc") return GapModel::nnc;
  if (s == "optimized") return GapModel::optimized;
  if (s == "routing") return GapModel::routing;
  throw ValidationError("unknown gap model '" + std::string(s) + "' (expected nnc|optimized|routing)");
}

inline Rate strategy_gap(GapModel m, std::size_t k) {
  const double kd = static_cast<double>(k);
  switch (m) {
    case GapModel::nnc:
      return 1.3 * kd;
    case GapModel::optimized:
      return std::log2(kd + 1.0) + std::log2(kd) + 1.0;
    case GapModel::routing:
      return 0.0;
  }
  return 0.0;
}

struct GuaranteeReport {
  std::size_t k = 0;
  Rate lower_bound_ck = 0.0;
  GapModel gap_model = GapModel::nnc;
  Rate multiplicative_term = 0.0;  // k/(k+1) * c_bar
  Rate strategy_gap = 0.0;
  Rate beamforming_gap = 0.0;  // k/(k+1) * G(n)
};

/// Lower bound on the best k-relay capacity C_k:
///   max(0, k/(k+1) c_bar - s(k) - k/(k+1) G(n)).
inline GuaranteeReport guarantee(Rate c_bar, std::size_t k, std::size_t n, GapModel model) {
  if (!std::isfinite(c_bar) || c_bar < 0.0) throw ValidationError("c_bar must be finite and >= 0");
  if (k < 1 || k > n) throw ValidationError("guarantee needs 1 <= k <= n");
  if (model == GapModel::routing && k != 1) throw ValidationError("routing gap model applies to k = 1 only");
  GuaranteeReport g;
  g.k = k;
  g.gap_model = model;
  const double frac = static_cast<double>(k) / static_cast<double>(k + 1);
  g.multiplicative_term = frac * c_bar;
  g.strategy_gap = strategy_gap(model, k);
  g.beamforming_gap = frac * gap_constant(n);
  g.lower_bound_ck = std::max(0.0, g.multiplicative_term - g.strategy_gap - g.beamforming_gap);
  return g;
}

struct TradeoffTable {
  std::vector<GuaranteeReport> rows;
  Rate additive_baseline = 0.0;  // max(0, c_bar - 1.3 n)
  std::size_t best_k = 1;
  Rate best_bound = 0.0;
};

/// Scans k = 1..n (k = 1 only for the routing model) and keeps the best
/// guarantee, smallest k on ties.
inline TradeoffTable hybrid_tradeoff(Rate c_bar, std::size_t n, GapModel model) {
  if (n < 1) throw ValidationError("hybrid_tradeoff needs n >= 1");
  TradeoffTable t;
  t.additive_baseline = std::max(0.0, c_bar - 1.3 * static_cast<double>(n));
  const std::size_t k_max = model == GapModel::routing ? 1 : n;
  for (std::size_t k = 1; k <= k_max; ++k) {
    t.rows.push_back(guarantee(c_bar, k, n, model));
    if (k == 1 || t.rows.back().lower_bound_ck > t.best_bound) {
      t.best_bound = t.rows.back().lower_bound_ck;
      t.best_k = k;
    }
  }
  return t;
}

}  // namespace diamond
