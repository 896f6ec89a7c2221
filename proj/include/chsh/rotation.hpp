#pragma once

#include <array>

namespace chsh {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Proper rotation R = Rz(alpha) Ry(beta) Rz(gamma), angles in radians.
struct RotationSO3 {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  Mat3 to_matrix() const;
  /// Z-Y-Z angles of a proper rotation matrix; beta in [0, pi].
  static RotationSO3 from_matrix(const Mat3& r);

  bool operator==(const RotationSO3&) const = default;
};

Vec3 apply(const Mat3& r, const Vec3& v);
Vec3 apply_transpose(const Mat3& r, const Vec3& v);
Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& r);
double determinant(const Mat3& r);
double norm(const Vec3& v);
Vec3 cross(const Vec3& a, const Vec3& b);

}  // namespace chsh
