#pragma once

#include <Eigen/Dense>

namespace vi {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Skew-symmetric matrix with hat(v) * w == v.cross(w).
Mat3 hat(const Vec3& v);

/// Inverse of hat. Throws NotSkew if the symmetric part exceeds 1e-10.
Vec3 vee(const Mat3& m);

/// Frobenius norm of I - R^T R.
double orthogonality_error(const Mat3& r);

/// A 3x3 special orthogonal matrix.
///
/// The public constructor checks ||R^T R - I||_F <= 1e-12 and det(R) > 0.
/// Products of rotations are not re-checked, so long compositions may drift
/// from the group by accumulated round-off.
class Rotation {
 public:
  static constexpr double kOrthogonalityTolerance = 1e-12;

  Rotation() : m_(Mat3::Identity()) {}
  explicit Rotation(const Mat3& m);

  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return Rotation(m_.transpose(), Unchecked{}); }
  Rotation operator*(const Rotation& other) const { return Rotation(m_ * other.m_, Unchecked{}); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  struct Unchecked {};
  Rotation(const Mat3& m, Unchecked) : m_(m) {}

  friend Rotation exp_so3(const Vec3& f);
  friend Rotation cayley(const Vec3& f);
  friend Rotation unchecked_rotation(const Mat3& m);

  Mat3 m_;
};

/// Wraps a matrix that is orthogonal up to accumulated round-off without
/// checking it. Used for attitudes built from long products.
Rotation unchecked_rotation(const Mat3& m);

/// Rodrigues formula, with Taylor coefficients for |f| < 1e-4.
Rotation exp_so3(const Vec3& f);

/// Principal logarithm. Throws NearPiAngle for angles within 1e-6 of pi.
Vec3 log_so3(const Rotation& r);

/// (I + S(f)) (I - S(f))^{-1}, a rotation about f by 2 atan |f|.
Rotation cayley(const Vec3& f);

// Operator series sum_n ad_xi^n v / (n+1)! and sum_n ad_xi^n v / (n+2)!,
// with ad_xi = hat(xi). Truncated once a term drops below 1e-16 of the
// running sum, or after max_terms terms.
inline constexpr int kSeriesTermCap = 30;
Vec3 dexp_ad(const Vec3& xi, const Vec3& v, int max_terms = kSeriesTermCap);
Vec3 ddexp_ad(const Vec3& xi, const Vec3& v, int max_terms = kSeriesTermCap);

}  // namespace vi
