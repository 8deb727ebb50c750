#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "fsr/subdivision.hpp"

namespace fsr {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>, boost::multiprecision::et_off>;

struct IntMatrix2 {
  std::int64_t a11 = 0, a12 = 0, a21 = 0, a22 = 0;

  std::int64_t trace() const { return a11 + a22; }
  std::int64_t det() const { return a11 * a22 - a12 * a21; }
  IntMatrix2 operator*(const IntMatrix2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22, a21 * o.a11 + a22 * o.a21,
            a21 * o.a12 + a22 * o.a22};
  }
  IntMatrix2 operator-() const { return {-a11, -a12, -a21, -a22}; }
  /// Adjugate; equals det * inverse.
  IntMatrix2 adj() const { return {a22, -a12, -a21, a11}; }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;

  static IntMatrix2 identity() { return {1, 0, 0, 1}; }
  /// "a11,a12,a21,a22"
  static IntMatrix2 parse(const std::string& text);
  std::string to_string() const;
};

enum class EuclidCase { Expanding, UnitEigenvalue, Contracting };

std::string to_string(EuclidCase c);

/// Eigenvalues are (trace ± sqrt(discriminant)) / 2.
struct EuclidClass {
  EuclidCase kind = EuclidCase::Expanding;
  std::int64_t trace = 0;
  std::int64_t det = 0;
  std::int64_t discriminant = 0;
  int unit_sign = 0;    // ±1 when kind == UnitEigenvalue
  int lambda_root = 0;  // when Contracting: λ = (trace + lambda_root·√Δ) / 2

  /// Smallest-modulus eigenvalue for real spectra.
  Real lambda() const;
  std::string describe() const;
};

/// Exact decision by integer sign tests. Throws when |det| < 2.
EuclidClass classify(const IntMatrix2& a);

/// U⁻¹ (sign·A) U = [[d, c], [0, 1]], det U = 1.
struct NormalForm {
  std::int64_t d = 0;
  std::int64_t c = 0;
  IntMatrix2 u = IntMatrix2::identity();
  int sign = 1;
  std::array<std::int64_t, 2> eigenvector{};  // primitive (p, q) for eigenvalue d

  IntMatrix2 form() const { return {d, c, 0, 1}; }
  /// Checks the conjugation identity in exact arithmetic.
  bool certifies(const IntMatrix2& a) const;
};

/// Requires a ±1 eigenvalue. For det > 0 the result has 0 <= c <= d - 2;
/// for det < 0 it has 0 <= c <= |d - 1| - 1.
NormalForm normal_form(const IntMatrix2& a);

/// Operator-norm condition number of a unit eigenbasis (1 for diagonal
/// matrices). Requires real eigenvalues.
Real eigenbasis_condition(const IntMatrix2& a);

struct ContractionConstant {
  Real k;
  Real lambda;             // |λ|
  Real worst_ratio;        // max ‖A⁻ⁿw‖ / (λ⁻ⁿ‖w‖) over the samples
  int samples = 0;
  bool verified = false;   // worst_ratio <= k
};

/// K with ‖A⁻ⁿw‖ <= K λ⁻ⁿ ‖w‖, checked on random integer w for n <= n_max.
ContractionConstant contraction_constant(const IntMatrix2& a, std::uint64_t seed = 1, int n_max = 30,
                                         int samples = 100);

struct GrowthRow {
  int n = 0;
  Real actual;       // ‖A⁻ⁿx − A⁻ⁿ0‖
  Real lower_bound;  // (‖x‖ − 2JK(λ⁻¹−1)⁻¹) λ⁻ⁿ
  Real perturbed;    // ‖G⁻ⁿx − G⁻ⁿ0‖ for a J-bounded random perturbation G of A
  Real ratio;        // ‖A⁻⁽ⁿ⁺¹⁾x‖ / ‖A⁻ⁿx‖
};

struct GrowthCertificate {
  IntMatrix2 a;
  Real lambda, k, j, threshold;
  std::array<Real, 2> x;
  std::vector<GrowthRow> rows;
  bool lower_bound_monotone = false;  // strictly increasing once positive
  bool actual_dominates = false;
  bool perturbed_dominates = false;
  Real ratio_error;  // |ratio − λ⁻¹| at the last row
};

GrowthCertificate growth_certificate(const IntMatrix2& a, const Real& j, int n_max, std::uint64_t seed = 1);

/// Representatives 0, a₁, a₂, a₁+a₂ of Λ/2Λ, where a₁, a₂ are the columns.
std::array<std::array<std::int64_t, 2>, 4> cone_points(const IntMatrix2& a);

/// Whether two integer vectors agree modulo 2Λ.
bool same_cone_class(const IntMatrix2& a, std::array<std::int64_t, 2> p, std::array<std::int64_t, 2> q);

/// One-tile-type rule of F(x, y) = (dx + cy, y), 2 <= d, 0 <= c <= d - 2.
SubdivisionRule build_case2_fsr(int d, int c);

}  // namespace fsr
