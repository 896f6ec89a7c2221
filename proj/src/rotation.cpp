#include "chsh/rotation.hpp"

#include <algorithm>
#include <cmath>

namespace chsh {

Mat3 RotationSO3::to_matrix() const {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  return {{{ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb},
           {sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb},
           {-sb * cg, sb * sg, cb}}};
}

RotationSO3 RotationSO3::from_matrix(const Mat3& r) {
  RotationSO3 out;
  const double cb = std::clamp(r[2][2], -1.0, 1.0);
  const double sb = std::hypot(r[0][2], r[1][2]);
  out.beta = std::atan2(sb, cb);
  if (sb > 1e-12) {
    out.alpha = std::atan2(r[1][2], r[0][2]);
    out.gamma = std::atan2(r[2][1], -r[2][0]);
  } else if (cb > 0) {
    // gimbal lock at beta = 0: only alpha + gamma is defined
    out.alpha = std::atan2(r[1][0], r[0][0]);
    out.gamma = 0.0;
  } else {
    // beta = pi: only alpha - gamma is defined
    out.alpha = std::atan2(-r[1][0], -r[0][0]);
    out.gamma = 0.0;
  }
  return out;
}

Vec3 apply(const Mat3& r, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += r[i][j] * v[j];
  return out;
}

Vec3 apply_transpose(const Mat3& r, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[j] += r[i][j] * v[i];
  return out;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

Mat3 transpose(const Mat3& r) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[j][i] = r[i][j];
  return out;
}

double determinant(const Mat3& r) {
  return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
         r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
         r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace chsh
