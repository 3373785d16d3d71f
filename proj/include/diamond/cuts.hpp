#pragma once

// Cut values and the combinatorial capacity approximation
//
//   omega = min over cuts L of ( max_{i in L} R_id + max_{i not in L} R_is ),
//
// where L is the set of relays on the destination side. The maximum over an
// empty set is 0, so L = {} is the pure broadcast cut and L = [N] the pure
// multiple-access cut.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "diamond/error.hpp"
#include "diamond/model.hpp"

namespace diamond {

inline constexpr std::size_t kMaxBruteForceRelays = 24;

/// Destination-side relay set, stored as sorted 0-based indices.
class Cut {
 public:
  Cut() = default;

  explicit Cut(std::vector<std::size_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw ValidationError("cut members must be distinct");
    }
  }

  /// Bit i of `mask` set iff relay i is on the destination side.
  static Cut from_mask(std::uint64_t mask, std::size_t n) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) m.push_back(i);
    }
    return Cut(std::move(m));
  }

  std::span<const std::size_t> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }

  /// Numeric order of the membership bitmasks; defined for any N.
  friend bool bitmask_less(const Cut& a, const Cut& b) {
    auto ia = a.members_.rbegin();
    auto ib = b.members_.rbegin();
    for (; ia != a.members_.rend() && ib != b.members_.rend(); ++ia, ++ib) {
      if (*ia != *ib) return *ia < *ib;
    }
    return ia == a.members_.rend() && ib != b.members_.rend();
  }

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::vector<std::size_t> members_;
};

struct OmegaResult {
  Rate value = 0.0;
  Cut argmin_cut;
  std::uint64_t comparisons = 0;
};

/// max_{i in L} R_id + max_{i not in L} R_is.
inline Rate cut_value(const RateTable& rt, const Cut& cut) {
  const std::size_t n = rt.size();
  std::vector<bool> in_cut(n, false);
  for (auto i : cut.members()) {
    if (i >= n) throw ValidationError("cut index " + std::to_string(i + 1) + " exceeds N = " + std::to_string(n));
    in_cut[i] = true;
  }
  Rate max_d = 0.0;
  Rate max_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_cut[i]) {
      max_d = std::max(max_d, rt.r_d(i));
    } else {
      max_s = std::max(max_s, rt.r_s(i));
    }
  }
  return max_d + max_s;
}

/// Exhaustive minimum over all 2^N cuts. Ties go to the numerically smallest bitmask.
inline OmegaResult omega_bruteforce(const RateTable& rt) {
  const std::size_t n = rt.size();
  if (n > kMaxBruteForceRelays) {
    throw SizeError("brute-force omega limited to N <= " + std::to_string(kMaxBruteForceRelays) + ", got " +
                    std::to_string(n));
  }
  const auto r_s = rt.r_s();
  const auto r_d = rt.r_d();
  const std::uint64_t count = std::uint64_t{1} << n;

  OmegaResult best;
  std::uint64_t best_mask = 0;
  bool have = false;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Rate max_d = 0.0;
    Rate max_s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        max_d = std::max(max_d, r_d[i]);
      } else {
        max_s = std::max(max_s, r_s[i]);
      }
    }
    best.comparisons += n + 1;
    const Rate v = max_d + max_s;
    if (!have || v < best.value) {
      best.value = v;
      best_mask = mask;
      have = true;
    }
  }
  best.argmin_cut = Cut::from_mask(best_mask, n);
  return best;
}

/// O(N log N) omega. After sorting relays by R_is ascending, some minimizing
/// cut is a suffix of the sorted order, so only the N + 1 suffix cuts are
/// evaluated, using suffix maxima of R_id. Produces the same floating-point
/// value as omega_bruteforce.
inline OmegaResult omega_fast(const RateTable& rt) {
  const std::size_t n = rt.size();
  const auto r_s = rt.r_s();
  const auto r_d = rt.r_d();
  OmegaResult out;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t sort_comparisons = 0;
  // Stable: equal R_is keep original index order.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    ++sort_comparisons;
    return r_s[a] < r_s[b];
  });
  out.comparisons = sort_comparisons;

  // suffix_d[m] = max R_id over sorted positions m..n-1; suffix_d[n] = 0.
  std::vector<Rate> suffix_d(n + 1, 0.0);
  for (std::size_t m = n; m-- > 0;) {
    suffix_d[m] = std::max(suffix_d[m + 1], r_d[order[m]]);
    ++out.comparisons;
  }

  // Candidate m puts sorted positions [0, m) on the source side. Larger m means
  // a nested, numerically smaller cut mask, so ties prefer the later candidate.
  std::size_t best_m = 0;
  Rate best = 0.0;
  for (std::size_t m = 0; m <= n; ++m) {
    const Rate source_side = m == 0 ? 0.0 : std::max(0.0, r_s[order[m - 1]]);
    const Rate v = suffix_d[m] + source_side;
    if (m == 0 || v <= best) {
      best = v;
      best_m = m;
    }
    ++out.comparisons;
  }

  out.value = best;
  out.argmin_cut = Cut(std::vector<std::size_t>(order.begin() + static_cast<std::ptrdiff_t>(best_m), order.end()));
  return out;
}

/// Comparison budget asserted for omega_fast: 2 N ceil(log2 N) + 3 N + 2.
inline std::uint64_t omega_fast_comparison_budget(std::size_t n) {
  std::uint64_t ceil_log = 0;
  while ((std::uint64_t{1} << ceil_log) < n) ++ceil_log;
  return 2 * n * ceil_log + 3 * n + 2;
}

/// Beamforming gap max(3 log2 n - log2(27/4), 2 log2 n) between omega and the
/// SIMO/MISO cut-set upper bound.
inline Rate gap_constant(std::size_t n) {
  if (n < 1) throw ValidationError("gap_constant needs n >= 1");
  const double l = std::log2(static_cast<double>(n));
  return std::max(3.0 * l - std::log2(27.0 / 4.0), 2.0 * l);
}

struct SandwichReport {
  Rate omega = 0.0;
  Rate lower = 0.0;  // min over cuts with independent Gaussian inputs
  Rate upper = 0.0;  // min over cuts of SIMO + MISO capacities
  Rate gap = 0.0;    // gap_constant(N)
};

/// Brackets the cut-set bound: omega <= lower <= cut-set <= upper <= omega + G(N).
/// Per cut, with t^2 = 2^R - 1:
///   lower(L) = log2(1 + sum_{not L} t_s^2) + log2(1 + sum_L t_d^2)
///   upper(L) = log2(1 + sum_{not L} t_s^2) + log2(1 + (sum_L t_d)^2)
inline SandwichReport sandwich(const RateTable& rt) {
  const std::size_t n = rt.size();
  if (n > kMaxBruteForceRelays) {
    throw SizeError("sandwich bounds limited to N <= " + std::to_string(kMaxBruteForceRelays));
  }
  std::vector<double> ps(n), pd(n), td(n);
  for (std::size_t i = 0; i < n; ++i) {
    ps[i] = exp2_m1(rt.r_s(i));
    pd[i] = exp2_m1(rt.r_d(i));
    td[i] = std::sqrt(pd[i]);
    if (!std::isfinite(ps[i]) || !std::isfinite(pd[i])) throw ValidationError("rate too large for sandwich bounds");
  }

  SandwichReport out;
  out.omega = omega_bruteforce(rt).value;
  out.gap = gap_constant(n);
  const std::uint64_t count = std::uint64_t{1} << n;
  bool first = true;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double sum_ps = 0.0, sum_pd = 0.0, sum_td = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        sum_pd += pd[i];
        sum_td += td[i];
      } else {
        sum_ps += ps[i];
      }
    }
    const Rate simo = log2_1p(sum_ps);
    const Rate lo = simo + log2_1p(sum_pd);
    const Rate hi = simo + log2_1p(sum_td * sum_td);
    if (first || lo < out.lower) out.lower = lo;
    if (first || hi < out.upper) out.upper = hi;
    first = false;
  }
  return out;
}

}  // namespace diamond
