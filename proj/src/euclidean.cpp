#include "fsr/euclidean.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>

namespace fsr {

IntMatrix2 IntMatrix2::parse(const std::string& text) {
  std::vector<std::int64_t> v;
  std::string flat = text;
  if (flat.find('[') != std::string::npos) {  // nested form written by to_string
    std::erase_if(flat, [](char ch) { return ch == ' '; });
    if (flat.size() < 4 || flat.rfind("[[", 0) != 0 || flat.substr(flat.size() - 2) != "]]" ||
        std::count(flat.begin(), flat.end(), '[') != 3 || flat.find("],[") == std::string::npos)
      throw Error("matrix '" + text + "' is not of the form [[a11,a12],[a21,a22]]");
    std::erase_if(flat, [](char ch) { return ch == '[' || ch == ']'; });
  }
  std::stringstream ss(flat);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      v.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      throw Error("matrix entry '" + item + "' is not an integer");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw Error("matrix entry '" + item + "' is not an integer");
  }
  if (v.size() != 4) throw Error("matrix needs four comma-separated integers a11,a12,a21,a22");
  return {v[0], v[1], v[2], v[3]};
}

std::string IntMatrix2::to_string() const {
  std::ostringstream os;
  os << "[[" << a11 << "," << a12 << "],[" << a21 << "," << a22 << "]]";
  return os.str();
}

std::string to_string(EuclidCase c) {
  switch (c) {
    case EuclidCase::Expanding: return "expanding";
    case EuclidCase::UnitEigenvalue: return "unit-eigenvalue";
    case EuclidCase::Contracting: return "contracting";
  }
  return "?";
}

Real EuclidClass::lambda() const {
  if (discriminant < 0) return sqrt(Real(det));
  const Real root = sqrt(Real(discriminant));
  if (kind == EuclidCase::Contracting) return (Real(trace) + lambda_root * root) / 2;
  const Real r1 = (Real(trace) + root) / 2, r2 = (Real(trace) - root) / 2;
  return abs(r1) < abs(r2) ? r1 : r2;
}

std::string EuclidClass::describe() const {
  std::ostringstream os;
  os << "case=" << to_string(kind) << " trace=" << trace << " det=" << det << " discriminant=" << discriminant;
  if (kind == EuclidCase::UnitEigenvalue) os << " unit_eigenvalue=" << unit_sign << " other_eigenvalue=" << det * unit_sign;
  if (kind == EuclidCase::Contracting)
    os << " lambda=(" << trace << (lambda_root > 0 ? "+" : "-") << "sqrt(" << discriminant
       << "))/2 lambda_value=" << lambda().str(20);
  return os.str();
}

EuclidClass classify(const IntMatrix2& a) {
  EuclidClass k;
  k.trace = a.trace();
  k.det = a.det();
  if (std::llabs(k.det) < 2) throw Error("determinant must satisfy |det| >= 2, got " + std::to_string(k.det));
  k.discriminant = k.trace * k.trace - 4 * k.det;
  const std::int64_t p_plus = 1 - k.trace + k.det;   // p(1)
  const std::int64_t p_minus = 1 + k.trace + k.det;  // p(-1)
  if (p_plus == 0 || p_minus == 0) {
    k.kind = EuclidCase::UnitEigenvalue;
    k.unit_sign = p_plus == 0 ? 1 : -1;
  } else if (k.discriminant <= 0) {
    k.kind = EuclidCase::Expanding;  // |λ|² = det >= 2
  } else if ((p_plus < 0) != (p_minus < 0)) {
    // Exactly one real root lies strictly between -1 and 1; both cannot,
    // since their product has modulus |det| >= 2.
    k.kind = EuclidCase::Contracting;
    k.lambda_root = k.trace > 0 ? -1 : 1;
  } else {
    k.kind = EuclidCase::Expanding;
  }
  return k;
}

namespace {

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::llabs(a);
  }
  std::int64_t x1 = 0, y1 = 0;
  const std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

bool NormalForm::certifies(const IntMatrix2& a) const {
  if (u.det() != 1) return false;
  const IntMatrix2 b = sign > 0 ? a : -a;
  return u.adj() * b * u == form();
}

NormalForm normal_form(const IntMatrix2& a) {
  const EuclidClass k = classify(a);
  if (k.kind != EuclidCase::UnitEigenvalue) throw Error("normal form needs a ±1 eigenvalue; matrix is " + to_string(k.kind));
  NormalForm nf;
  nf.sign = k.unit_sign;
  const IntMatrix2 b = nf.sign > 0 ? a : -a;
  nf.d = b.det();
  std::int64_t p = b.a12, q = nf.d - b.a11;
  if (p == 0 && q == 0) {
    p = nf.d - b.a22;
    q = b.a21;
  }
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  nf.eigenvector = {p, q};
  std::int64_t x = 0, y = 0;
  ext_gcd(p, q, x, y);  // p x + q y = 1
  IntMatrix2 u{p, -y, q, x};
  const IntMatrix2 m = u.adj() * b * u;
  const std::int64_t mod = nf.d - 1;
  const std::int64_t span = std::llabs(mod);
  const std::int64_t reduced = ((m.a12 % span) + span) % span;
  const std::int64_t t = (reduced - m.a12) / mod;
  nf.u = u * IntMatrix2{1, t, 0, 1};
  nf.c = reduced;
  if (!nf.certifies(a)) throw Error("internal: normal form certificate failed for " + a.to_string());
  return nf;
}

namespace {

using Vec = std::array<Real, 2>;

Real norm(const Vec& v) { return sqrt(v[0] * v[0] + v[1] * v[1]); }

Vec unit(Vec v) {
  const Real n = norm(v);
  return {v[0] / n, v[1] / n};
}

// Unit eigenvectors for the smaller- and larger-modulus eigenvalues.
std::array<Vec, 2> eigenbasis(const IntMatrix2& a) {
  const EuclidClass k = [&] {
    EuclidClass c;
    c.trace = a.trace();
    c.det = a.det();
    c.discriminant = c.trace * c.trace - 4 * c.det;
    return c;
  }();
  if (a.a12 == 0 && a.a21 == 0) {
    if (std::llabs(a.a11) <= std::llabs(a.a22)) return {Vec{1, 0}, Vec{0, 1}};
    return {Vec{0, 1}, Vec{1, 0}};
  }
  if (k.discriminant <= 0) throw Error("matrix has no real eigenbasis");
  const Real root = sqrt(Real(k.discriminant));
  Real r1 = (Real(k.trace) + root) / 2, r2 = (Real(k.trace) - root) / 2;
  if (abs(r1) > abs(r2)) std::swap(r1, r2);
  auto vector_for = [&](const Real& rho, bool is_a22) -> Vec {
    if (a.a12 != 0) return unit({Real(a.a12), rho - a.a11});
    // Lower triangular: eigenvalues are a11 and a22.
    if (is_a22) return {Real(0), Real(1)};
    return unit({Real(a.a11 - a.a22), Real(a.a21)});
  };
  if (a.a12 != 0) return {vector_for(r1, false), vector_for(r2, false)};
  const bool small_is_a22 = std::llabs(a.a22) < std::llabs(a.a11);
  return {vector_for(r1, small_is_a22), vector_for(r2, !small_is_a22)};
}

Vec apply_inverse(const IntMatrix2& a, const Vec& v) {
  const IntMatrix2 j = a.adj();
  const Real d = a.det();
  return {(j.a11 * v[0] + j.a12 * v[1]) / d, (j.a21 * v[0] + j.a22 * v[1]) / d};
}

}  // namespace

Real eigenbasis_condition(const IntMatrix2& a) {
  const auto [v, w] = eigenbasis(a);
  const Real det = abs(v[0] * w[1] - v[1] * w[0]);
  const Real s = v[0] * v[0] + v[1] * v[1] + w[0] * w[0] + w[1] * w[1];
  const Real gap = s * s - 4 * det * det;
  const Real sigma1_sq = (s + sqrt(gap > 0 ? gap : Real(0))) / 2;
  return sigma1_sq / det;
}

ContractionConstant contraction_constant(const IntMatrix2& a, std::uint64_t seed, int n_max, int samples) {
  const EuclidClass k = classify(a);
  if (k.kind != EuclidCase::Contracting) throw Error("contraction constant needs a contracting matrix");
  ContractionConstant out;
  out.lambda = abs(k.lambda());
  out.k = eigenbasis_condition(a) * (1 + Real("1e-12"));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-1000, 1000);
  out.worst_ratio = 0;
  for (int s = 0; s < samples; ++s) {
    Vec w{Real(entry(rng)), Real(entry(rng))};
    if (w[0] == 0 && w[1] == 0) w[0] = 1;
    const Real w_norm = norm(w);
    Vec cur = w;
    Real lambda_pow = 1;
    for (int n = 1; n <= n_max; ++n) {
      cur = apply_inverse(a, cur);
      lambda_pow *= out.lambda;
      const Real ratio = norm(cur) * lambda_pow / w_norm;
      if (ratio > out.worst_ratio) out.worst_ratio = ratio;
    }
    ++out.samples;
  }
  out.verified = out.worst_ratio <= out.k;
  return out;
}

GrowthCertificate growth_certificate(const IntMatrix2& a, const Real& j, int n_max, std::uint64_t seed) {
  if (j <= 0) throw Error("J must be positive");
  const ContractionConstant kc = contraction_constant(a, seed);
  GrowthCertificate g;
  g.a = a;
  g.lambda = kc.lambda;
  g.k = kc.k;
  g.j = j;
  g.threshold = 2 * j * g.k / (1 / g.lambda - 1);
  const Vec v = eigenbasis(a)[0];
  const Real scale = 2 * g.threshold + 1;
  g.x = {v[0] * scale, v[1] * scale};
  const Real x_norm = norm(g.x);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
  auto perturbation = [&]() -> Vec {
    const double angle = 2 * 3.14159265358979323846 * unit_interval(rng);
    const Real r = j * Real(unit_interval(rng));
    return {r * Real(std::cos(angle)), r * Real(std::sin(angle))};
  };

  Vec ax = g.x, gx = g.x, g0{0, 0};
  Real lambda_inv_pow = 1;
  for (int n = 0; n <= n_max; ++n) {
    GrowthRow row;
    row.n = n;
    row.actual = norm(ax);
    row.lower_bound = (x_norm - g.threshold) * lambda_inv_pow;
    row.perturbed = norm({gx[0] - g0[0], gx[1] - g0[1]});
    const Vec next = apply_inverse(a, ax);
    row.ratio = norm(next) / row.actual;
    g.rows.push_back(row);

    ax = next;
    const Vec yx = perturbation(), y0 = perturbation();
    const Vec gx_next = apply_inverse(a, gx), g0_next = apply_inverse(a, g0);
    gx = {gx_next[0] + yx[0], gx_next[1] + yx[1]};
    g0 = {g0_next[0] + y0[0], g0_next[1] + y0[1]};
    lambda_inv_pow /= g.lambda;
  }
  g.lower_bound_monotone = true;
  g.actual_dominates = true;
  g.perturbed_dominates = true;
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const GrowthRow& r = g.rows[i];
    if (i > 0 && g.rows[i - 1].lower_bound > 0 && !(r.lower_bound > g.rows[i - 1].lower_bound))
      g.lower_bound_monotone = false;
    if (r.actual < r.lower_bound) g.actual_dominates = false;
    if (r.perturbed < r.lower_bound) g.perturbed_dominates = false;
  }
  g.ratio_error = abs(g.rows.back().ratio - 1 / g.lambda);
  return g;
}

std::array<std::array<std::int64_t, 2>, 4> cone_points(const IntMatrix2& a) {
  if (std::llabs(a.det()) < 2) throw Error("determinant must satisfy |det| >= 2");
  return {{{0, 0}, {a.a11, a.a21}, {a.a12, a.a22}, {a.a11 + a.a12, a.a21 + a.a22}}};
}

bool same_cone_class(const IntMatrix2& a, std::array<std::int64_t, 2> p, std::array<std::int64_t, 2> q) {
  const std::int64_t dx = p[0] - q[0], dy = p[1] - q[1];
  const IntMatrix2 j = a.adj();
  const std::int64_t m = 2 * a.det();
  return (j.a11 * dx + j.a12 * dy) % m == 0 && (j.a21 * dx + j.a22 * dy) % m == 0;
}

}  // namespace fsr
