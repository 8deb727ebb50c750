#include "fsr/slope.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace fsr {

SlopeClass SlopeClass::of(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw Error("slope vector must be nonzero");
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

SlopeClass SlopeClass::parse(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error("slope must be written p,q");
  try {
    std::size_t a = 0, b = 0;
    const std::string first = text.substr(0, comma), second = text.substr(comma + 1);
    const std::int64_t p = std::stoll(first, &a), q = std::stoll(second, &b);
    if (a != first.size() || b != second.size()) throw Error("slope must be written p,q");
    return of(p, q);
  } catch (const std::logic_error&) {
    throw Error("slope must be written p,q");
  }
}

std::string SlopeClass::to_string() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

PullbackStep pullback_slope(const IntMatrix2& a, SlopeClass w) {
  const std::int64_t d = std::llabs(a.det());
  if (d < 2) throw Error("determinant must satisfy |det| >= 2");
  const IntMatrix2 j = a.adj();
  const std::int64_t x = j.a11 * w.p + j.a12 * w.q;
  const std::int64_t y = j.a21 * w.p + j.a22 * w.q;
  PullbackStep s;
  s.w = w;
  s.g = std::gcd(x, y);
  s.u = SlopeClass::of(x, y);
  s.m = d / s.g;
  return s;
}

std::string OrbitReport::verdict() const {
  std::ostringstream os;
  if (cycle)
    os << "cycle period=" << period << " preperiod=" << preperiod;
  else
    os << "no-cycle-within=" << steps.size() << " min_growth=" << min_growth << " max_growth=" << max_growth;
  os << " univalent_prefix=" << (univalent_prefix ? std::to_string(*univalent_prefix) : std::string("unbounded"));
  if (eigen_angle >= 0) os << " eigen_angle=" << eigen_angle;
  return os.str();
}

OrbitReport pullback_orbit(const IntMatrix2& a, SlopeClass w0, int n) {
  OrbitReport r;
  std::map<SlopeClass, int> seen{{w0, 0}};
  SlopeClass w = w0;
  auto length = [](SlopeClass s) { return std::hypot(double(s.p), double(s.q)); };
  for (int i = 0; i < n; ++i) {
    const PullbackStep s = pullback_slope(a, w);
    r.steps.push_back(s);
    const double growth = length(s.u) / length(s.w);
    if (i == 0 || growth < r.min_growth) r.min_growth = growth;
    if (i == 0 || growth > r.max_growth) r.max_growth = growth;
    w = s.u;
    auto [it, fresh] = seen.emplace(w, i + 1);
    if (!fresh) {
      r.cycle = true;
      r.preperiod = it->second;
      r.period = i + 1 - it->second;
      break;
    }
  }
  for (std::size_t i = 0; i < r.steps.size() && !r.univalent_prefix; ++i)
    if (r.steps[i].m != 1) r.univalent_prefix = static_cast<int>(i);
  if (!r.univalent_prefix && !r.cycle) r.univalent_prefix = static_cast<int>(r.steps.size());

  const std::int64_t t = a.trace(), det = a.det(), disc = t * t - 4 * det;
  if (disc > 0 && !r.steps.empty()) {
    // Eigenline of A for the smaller-modulus eigenvalue.
    const double root = std::sqrt(double(disc));
    const double l1 = (t + root) / 2, l2 = (t - root) / 2;
    const double lam = std::fabs(l1) < std::fabs(l2) ? l1 : l2;
    double ex = double(a.a12), ey = lam - double(a.a11);
    if (a.a12 == 0) {
      ex = lam - double(a.a22);
      ey = double(a.a21);
      if (ex == 0 && ey == 0) ex = 1;
    }
    const SlopeClass last = r.steps.back().u;
    const double cross = ex * double(last.q) - ey * double(last.p);
    const double dot = ex * double(last.p) + ey * double(last.q);
    r.eigen_angle = std::fabs(std::atan2(cross, dot));
    if (r.eigen_angle > M_PI / 2) r.eigen_angle = M_PI - r.eigen_angle;
  }
  return r;
}

std::string WanderingVerdict::to_string() const {
  switch (kind) {
    case YesWithin: return "yes-within=" + std::to_string(index);
    case Cycle: return "no: cycle at step " + std::to_string(index);
    case NonUnivalent: return "no: non-univalent step at index " + std::to_string(index);
  }
  return "?";
}

WanderingVerdict is_wandering_univalent_within(const IntMatrix2& a, SlopeClass w0, int n) {
  std::map<SlopeClass, int> seen{{w0, 0}};
  SlopeClass w = w0;
  for (int i = 0; i < n; ++i) {
    const PullbackStep s = pullback_slope(a, w);
    if (s.m != 1) return {WanderingVerdict::NonUnivalent, i};
    if (!seen.emplace(s.u, i + 1).second) return {WanderingVerdict::Cycle, i + 1};
    w = s.u;
  }
  return {WanderingVerdict::YesWithin, n};
}

}  // namespace fsr
