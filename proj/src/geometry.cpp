#include "vi/geometry.hpp"

#include <cmath>
#include <numbers>

#include "vi/errors.hpp"

namespace vi {

namespace {

constexpr double kSmallAngle = 1e-4;
constexpr double kSkewTolerance = 1e-10;
constexpr double kPiGuard = 1e-6;

// sin(x)/x and (1-cos(x))/x^2
void rodrigues_coefficients(double x, double& a, double& b) {
  if (x < kSmallAngle) {
    const double x2 = x * x;
    a = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    b = 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
  } else {
    a = std::sin(x) / x;
    b = (1.0 - std::cos(x)) / (x * x);
  }
}

Vec3 operator_series(const Vec3& xi, const Vec3& v, int first_denominator, int max_terms) {
  // term_n = ad^n v / (n + first_denominator)!
  double factorial = 1.0;
  for (int k = 2; k <= first_denominator; ++k) factorial *= k;
  Vec3 term = v / factorial;
  Vec3 sum = term;
  for (int n = 1; n < max_terms; ++n) {
    term = xi.cross(term) / static_cast<double>(n + first_denominator);
    sum += term;
    if (term.norm() < 1e-16 * sum.norm()) break;
  }
  return sum;
}

}  // namespace

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  const double asym = (0.5 * (m + m.transpose())).cwiseAbs().maxCoeff();
  if (asym > kSkewTolerance) throw NotSkew(asym);
  return Vec3(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1)));
}

double orthogonality_error(const Mat3& r) {
  return (Mat3::Identity() - r.transpose() * r).norm();
}

Rotation::Rotation(const Mat3& m) : m_(m) {
  if (!m.allFinite()) throw NotOrthogonal("rotation has non-finite entries");
  const double err = orthogonality_error(m);
  if (err > kOrthogonalityTolerance)
    throw NotOrthogonal("matrix is not orthogonal (error " + std::to_string(err) + ")");
  if (m.determinant() <= 0.0) throw NotOrthogonal("matrix has non-positive determinant");
}

Rotation unchecked_rotation(const Mat3& m) { return Rotation(m, Rotation::Unchecked{}); }

Rotation exp_so3(const Vec3& f) {
  double a = 0.0;
  double b = 0.0;
  rodrigues_coefficients(f.norm(), a, b);
  const Mat3 s = hat(f);
  return Rotation(Mat3::Identity() + a * s + b * s * s, Rotation::Unchecked{});
}

Vec3 log_so3(const Rotation& r) {
  const Mat3& m = r.matrix();
  const Vec3 axis_sin(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));  // 2 sin(t) n
  const double cos_t = 0.5 * (m.trace() - 1.0);
  // Same angle as acos((tr - 1)/2), without its loss of precision near 0.
  const double theta = std::atan2(0.5 * axis_sin.norm(), cos_t);
  if (theta >= std::numbers::pi - kPiGuard) throw NearPiAngle(theta);
  double scale = 0.0;
  if (theta < kSmallAngle) {
    const double t2 = theta * theta;
    scale = 0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0);
  } else {
    scale = 0.5 * theta / std::sin(theta);
  }
  return scale * axis_sin;
}

Rotation cayley(const Vec3& f) {
  // (I + S)(I - S)^{-1} = I + 2 (S + S^2) / (1 + |f|^2) on so(3)
  const Mat3 s = hat(f);
  return Rotation(Mat3::Identity() + (2.0 / (1.0 + f.squaredNorm())) * (s + s * s),
                  Rotation::Unchecked{});
}

Vec3 dexp_ad(const Vec3& xi, const Vec3& v, int max_terms) {
  return operator_series(xi, v, 1, max_terms);
}

Vec3 ddexp_ad(const Vec3& xi, const Vec3& v, int max_terms) {
  return operator_series(xi, v, 2, max_terms);
}

}  // namespace vi
