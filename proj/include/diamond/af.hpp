#pragma once

// Amplify-and-forward over the diamond network. Relay i transmits
// beta_i * Y_i with |beta_i|^2 = snr |alpha_i|^2 / (1 + |h_is|^2 snr) and
// |alpha_i| <= 1. Relay phases are chosen to cancel the channel phases, so the
// end-to-end gain is sum_i |h_id| |h_is| beta_i with beta_i >= 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "diamond/error.hpp"
#include "diamond/model.hpp"

namespace diamond {

/// Normalized amplification magnitudes, each in [0, 1].
class AfCoefficients {
 public:
  AfCoefficients() = default;
  explicit AfCoefficients(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    for (double a : alpha_) {
      if (!std::isfinite(a) || a < 0.0 || a > 1.0) {
        throw ValidationError("amplification coefficient must lie in [0, 1], got " + std::to_string(a));
      }
    }
  }
  static AfCoefficients ones(std::size_t n) { return AfCoefficients(std::vector<double>(n, 1.0)); }

  std::size_t size() const noexcept { return alpha_.size(); }
  std::span<const double> values() const noexcept { return alpha_; }
  double operator[](std::size_t i) const { return alpha_[i]; }

 private:
  std::vector<double> alpha_;
};

struct AfReport {
  Rate rate = 0.0;
  AfCoefficients alpha;
  Rate upper_bound = 0.0;  // c1 + 2 log2 N
  Rate c1 = 0.0;           // best single-relay routing rate
  int cycles = 0;
};

namespace detail {

// Per-relay constants of the AF objective:
//   rate = log2(1 + snr (sum_i c_i alpha_i)^2 / (1 + sum_i d_i alpha_i^2)),
// c_i = |h_id| |h_is| sqrt(snr / (1 + |h_is|^2 snr)), d_i = |h_id|^2 snr / (1 + |h_is|^2 snr).
struct AfTerms {
  std::vector<double> c;
  std::vector<double> d;
  double snr = 1.0;
};

inline AfTerms af_terms(const Network& net) {
  AfTerms t;
  t.snr = net.snr();
  for (const auto& r : net.relays()) {
    const double scale = net.snr() / (1.0 + r.gain_s * r.gain_s * net.snr());
    t.c.push_back(r.gain_d * r.gain_s * std::sqrt(scale));
    t.d.push_back(r.gain_d * r.gain_d * scale);
  }
  return t;
}

inline double af_rate_from_sums(double snr, double amp, double noise) {
  return log2_1p(snr * amp * amp / (1.0 + noise));
}

}  // namespace detail

/// Achievable AF rate for fixed amplification magnitudes.
inline Rate af_rate(const Network& net, const AfCoefficients& alpha) {
  if (alpha.size() != net.size()) throw ValidationError("alpha length does not match relay count");
  const auto t = detail::af_terms(net);
  double amp = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    amp += t.c[i] * alpha[i];
    noise += t.d[i] * alpha[i] * alpha[i];
  }
  return detail::af_rate_from_sums(t.snr, amp, noise);
}

/// Routing over the best single relay, c1 = max_i min(R_is, R_id), and the
/// AF ceiling c1 + 2 log2 N.
inline std::pair<Rate, Rate> af_upper_bound(const RateTable& rt) {
  if (rt.empty()) throw ValidationError("af_upper_bound needs at least one relay");
  Rate c1 = 0.0;
  for (std::size_t i = 0; i < rt.size(); ++i) c1 = std::max(c1, std::min(rt.r_s(i), rt.r_d(i)));
  return {c1 + 2.0 * std::log2(static_cast<double>(rt.size())), c1};
}

/// Maximizes f over [lo, hi] by golden-section search; f must be unimodal.
template <typename F>
double golden_section_maximize(F&& f, double lo, double hi, double x_tol = 1e-10) {
  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > x_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

/// Cyclic coordinate ascent over alpha in [0,1]^N starting from all ones.
/// Relays with a zero gain on either hop are held at alpha = 0. Stops once a
/// full cycle gains less than `tol`. Each coordinate's objective rises then
/// falls, so golden-section search finds its maximum; endpoints are checked
/// explicitly since the maximum is often at alpha = 1.
inline AfReport af_optimize(const Network& net, double tol = 1e-9, int max_cycles = 10000) {
  detail::require_finite_positive(tol, "tol");
  const std::size_t n = net.size();
  const auto t = detail::af_terms(net);

  std::vector<double> alpha(n, 1.0);
  std::vector<bool> pinned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = net.relay(i);
    if (r.gain_s == 0.0 || r.gain_d == 0.0) {
      alpha[i] = 0.0;
      pinned[i] = true;
    }
  }

  double amp = 0.0, noise = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    amp += t.c[i] * alpha[i];
    noise += t.d[i] * alpha[i] * alpha[i];
  }
  double current = detail::af_rate_from_sums(t.snr, amp, noise);

  AfReport out;
  for (; out.cycles < max_cycles;) {
    ++out.cycles;
    const double cycle_start = current;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) continue;
      const double amp_rest = amp - t.c[i] * alpha[i];
      const double noise_rest = noise - t.d[i] * alpha[i] * alpha[i];
      auto f = [&](double x) {
        return detail::af_rate_from_sums(t.snr, amp_rest + t.c[i] * x, noise_rest + t.d[i] * x * x);
      };
      double best_x = alpha[i];
      double best_f = f(best_x);
      for (double x : {golden_section_maximize(f, 0.0, 1.0), 0.0, 1.0}) {
        const double fx = f(x);
        if (fx > best_f) {
          best_f = fx;
          best_x = x;
        }
      }
      alpha[i] = best_x;
      amp = amp_rest + t.c[i] * best_x;
      noise = noise_rest + t.d[i] * best_x * best_x;
      current = best_f;
    }
    if (current - cycle_start < tol) break;
  }

  // Recompute from scratch so the reported rate matches af_rate exactly.
  out.alpha = AfCoefficients(std::move(alpha));
  out.rate = af_rate(net, out.alpha);
  std::tie(out.upper_bound, out.c1) = af_upper_bound(rate_table(net));
  return out;
}

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of the inequality used to cap AF by the best relay:
///   lhs = max(1, max_i u_d,i b_i / (1 + u_s,i)) * max_i min(u_d,i, u_s,i)
///   rhs = max_i b_i u_d,i u_s,i / (1 + u_s,i)
inline InequalitySides coefficient_inequality_sides(std::span<const double> u_d, std::span<const double> u_s, std::span<const double> b) {
  if (u_d.size() != u_s.size() || u_d.size() != b.size()) throw ValidationError("inequality inputs must have equal length");
  if (u_d.empty()) throw ValidationError("inequality needs at least one term");
  double noise_gain = 1.0, best_min = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < u_d.size(); ++i) {
    if (!std::isfinite(u_d[i]) || !(u_d[i] > 0.0) || !std::isfinite(u_s[i]) || !(u_s[i] > 0.0)) {
      throw ValidationError("u values must be finite and > 0");
    }
    if (!std::isfinite(b[i]) || b[i] < 0.0 || b[i] > 1.0) throw ValidationError("b values must lie in [0, 1]");
    // rhs_i is evaluated as q_i * u_s,i so that it shares rounding with the lhs term q_i * min(.).
    const double q = u_d[i] * b[i] / (1.0 + u_s[i]);
    noise_gain = std::max(noise_gain, q);
    best_min = std::max(best_min, std::min(u_d[i], u_s[i]));
    rhs = std::max(rhs, q * u_s[i]);
  }
  return {noise_gain * best_min, rhs};
}

}  // namespace diamond
