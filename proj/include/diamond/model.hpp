#pragma once

// Network data model for the Gaussian N-relay diamond network: a source
// broadcasts to N relays which share a multiple-access channel to the
// destination. Only channel magnitudes are stored; every quantity computed by
// this library depends on |h| alone.
//
// All rates are in bits/s/Hz (base-2 logarithms).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diamond/error.hpp"

namespace diamond {

using Rate = double;

namespace detail {

inline void require_finite_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ValidationError(std::string(what) + " must be finite and >= 0, got " + std::to_string(v));
  }
}

inline void require_finite_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw ValidationError(std::string(what) + " must be finite and > 0, got " + std::to_string(v));
  }
}

}  // namespace detail

/// log2(1 + x) for x >= 0, accurate both for tiny x and for large x.
inline double log2_1p(double x) {
  if (x < 1.0) return std::log1p(x) / std::numbers::ln2;
  return std::log2(1.0 + x);
}

/// Inverse of log2_1p: 2^r - 1 for r >= 0.
inline double exp2_m1(double r) {
  if (r < 1.0) return std::expm1(r * std::numbers::ln2);
  return std::exp2(r) - 1.0;
}

/// Channel magnitudes |h_is| (source to relay) and |h_id| (relay to destination).
struct RelayChannels {
  double gain_s = 0.0;
  double gain_d = 0.0;

  friend bool operator==(const RelayChannels&, const RelayChannels&) = default;
};

/// Capacity of a point-to-point AWGN link, log2(1 + snr * gain^2).
inline Rate point_capacity(double snr, double gain) {
  detail::require_finite_positive(snr, "snr");
  detail::require_finite_nonnegative(gain, "gain");
  return log2_1p(snr * gain * gain);
}

/// Physical description of a diamond network: SNR = P/(N0 W) plus per-relay magnitudes.
class Network {
 public:
  Network(double snr, std::vector<RelayChannels> relays) : snr_(snr), relays_(std::move(relays)) {
    detail::require_finite_positive(snr_, "snr");
    if (relays_.empty()) throw ValidationError("a network needs at least one relay");
    for (const auto& r : relays_) {
      detail::require_finite_nonnegative(r.gain_s, "gain_s");
      detail::require_finite_nonnegative(r.gain_d, "gain_d");
      if (!std::isfinite(snr_ * r.gain_s * r.gain_s) || !std::isfinite(snr_ * r.gain_d * r.gain_d)) {
        throw ValidationError("snr * gain^2 overflows");
      }
    }
  }

  double snr() const noexcept { return snr_; }
  std::size_t size() const noexcept { return relays_.size(); }
  std::span<const RelayChannels> relays() const noexcept { return relays_; }
  const RelayChannels& relay(std::size_t i) const { return relays_.at(i); }

 private:
  double snr_;
  std::vector<RelayChannels> relays_;
};

/// Point-to-point rates (R_is, R_id) per relay. This is the canonical
/// description consumed by every combinatorial routine.
class RateTable {
 public:
  RateTable() = default;

  RateTable(std::vector<Rate> r_s, std::vector<Rate> r_d) : r_s_(std::move(r_s)), r_d_(std::move(r_d)) {
    if (r_s_.size() != r_d_.size()) throw ValidationError("r_s and r_d must have equal length");
    for (std::size_t i = 0; i < r_s_.size(); ++i) {
      detail::require_finite_nonnegative(r_s_[i], "r_s");
      detail::require_finite_nonnegative(r_d_[i], "r_d");
    }
  }

  std::size_t size() const noexcept { return r_s_.size(); }
  bool empty() const noexcept { return r_s_.empty(); }
  std::span<const Rate> r_s() const noexcept { return r_s_; }
  std::span<const Rate> r_d() const noexcept { return r_d_; }
  Rate r_s(std::size_t i) const noexcept { return r_s_[i]; }
  Rate r_d(std::size_t i) const noexcept { return r_d_[i]; }

  /// Sub-table over the given relay indices, in the given order.
  RateTable restricted_to(std::span<const std::size_t> indices) const {
    std::vector<Rate> s, d;
    s.reserve(indices.size());
    d.reserve(indices.size());
    for (auto i : indices) {
      if (i >= size()) throw ValidationError("relay index out of range");
      s.push_back(r_s_[i]);
      d.push_back(r_d_[i]);
    }
    return RateTable(std::move(s), std::move(d));
  }

  /// Copy with one more relay appended.
  RateTable appended(Rate r_s, Rate r_d) const {
    auto s = r_s_;
    auto d = r_d_;
    s.push_back(r_s);
    d.push_back(r_d);
    return RateTable(std::move(s), std::move(d));
  }

  friend bool operator==(const RateTable&, const RateTable&) = default;

 private:
  std::vector<Rate> r_s_;
  std::vector<Rate> r_d_;
};

inline RateTable rate_table(const Network& net) {
  std::vector<Rate> s, d;
  s.reserve(net.size());
  d.reserve(net.size());
  for (const auto& r : net.relays()) {
    s.push_back(point_capacity(net.snr(), r.gain_s));
    d.push_back(point_capacity(net.snr(), r.gain_d));
  }
  return RateTable(std::move(s), std::move(d));
}

/// Gain magnitude that realizes `rate` at `snr`: sqrt((2^rate - 1) / snr).
inline double gain_for_rate(Rate rate, double snr) {
  detail::require_finite_nonnegative(rate, "rate");
  detail::require_finite_positive(snr, "snr");
  return std::sqrt(exp2_m1(rate) / snr);
}

inline Network network_from(const RateTable& rt, double snr) {
  detail::require_finite_positive(snr, "snr");
  std::vector<RelayChannels> relays;
  relays.reserve(rt.size());
  for (std::size_t i = 0; i < rt.size(); ++i) {
    relays.push_back({gain_for_rate(rt.r_s(i), snr), gain_for_rate(rt.r_d(i), snr)});
  }
  return Network(snr, std::move(relays));
}

}  // namespace diamond
