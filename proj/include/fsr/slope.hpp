#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsr/euclidean.hpp"

namespace fsr {

/// Primitive integer vector up to sign; the first nonzero coordinate is positive.
struct SlopeClass {
  std::int64_t p = 1;
  std::int64_t q = 0;

  /// Normalizes any nonzero vector to its primitive class.
  static SlopeClass of(std::int64_t p, std::int64_t q);
  static SlopeClass parse(const std::string& text);  // "p,q"
  std::string to_string() const;
  friend bool operator==(const SlopeClass&, const SlopeClass&) = default;
  friend auto operator<=>(const SlopeClass&, const SlopeClass&) = default;
};

/// Curves of slope w pull back to g curves of slope u, each mapping with degree m.
struct PullbackStep {
  SlopeClass w;
  SlopeClass u;
  std::int64_t g = 1;
  std::int64_t m = 1;
};

PullbackStep pullback_slope(const IntMatrix2& a, SlopeClass w);

struct OrbitReport {
  std::vector<PullbackStep> steps;
  bool cycle = false;
  int period = 0;
  int preperiod = 0;
  /// Length of the initial run of degree-1 steps; empty when every step of a
  /// detected cycle is univalent, so the run never ends.
  std::optional<int> univalent_prefix;
  double min_growth = 0;  // min / max of |u_{i+1}| / |u_i|
  double max_growth = 0;
  double eigen_angle = -1;  // radians from the last slope to the contracting eigenline; -1 if none

  std::string verdict() const;
};

OrbitReport pullback_orbit(const IntMatrix2& a, SlopeClass w0, int n);

struct WanderingVerdict {
  enum Kind { YesWithin, Cycle, NonUnivalent } kind = YesWithin;
  int index = 0;  // step at which the cycle closes, or the non-univalent step

  std::string to_string() const;
};

WanderingVerdict is_wandering_univalent_within(const IntMatrix2& a, SlopeClass w0, int n);

}  // namespace fsr
