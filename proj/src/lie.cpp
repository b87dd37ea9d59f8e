#include "jpcm/lie.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <stdexcept>

namespace jpcm {

namespace {
constexpr double kSmallAngle = 1e-8;
constexpr double kPiGuard = 1e-6;
constexpr double kOrthoDriftTol = 1e-11;
}  // namespace

Mat3 skew(const Vec3& v) {
  Mat3 m;
  // clang-format off
  m <<     0, -v.z(),  v.y(),
       v.z(),      0, -v.x(),
      -v.y(),  v.x(),      0;
  // clang-format on
  return m;
}

Vec3 vee(const Mat3& m) {
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Mat3 exp_so3(const Vec3& theta) {
  const double t2 = theta.squaredNorm();
  const Mat3 w = skew(theta);
  if (t2 < kSmallAngle * kSmallAngle) {
    return Mat3::Identity() + w + 0.5 * w * w;
  }
  const double t = std::sqrt(t2);
  return Mat3::Identity() + (std::sin(t) / t) * w +
         ((1.0 - std::cos(t)) / t2) * w * w;
}

Vec3 log_so3(const Mat3& R) {
  // w = sin(θ)·axis; θ recovered via atan2 for stability at small angles.
  const Vec3 w = 0.5 * vee(R - R.transpose());
  const double s = w.norm();
  const double c = 0.5 * (R.trace() - 1.0);
  const double t = std::atan2(s, c);
  if (t >= M_PI - kPiGuard) {
    throw std::domain_error("log_so3: rotation angle within 1e-6 of pi");
  }
  if (t < kSmallAngle) {
    return w;
  }
  return (t / s) * w;
}

Mat3 right_jacobian_so3(const Vec3& theta) {
  const double t2 = theta.squaredNorm();
  const Mat3 w = skew(theta);
  if (t2 < kSmallAngle * kSmallAngle) {
    return Mat3::Identity() - 0.5 * w + (1.0 / 6.0) * w * w;
  }
  const double t = std::sqrt(t2);
  return Mat3::Identity() - ((1.0 - std::cos(t)) / t2) * w +
         ((t - std::sin(t)) / (t2 * t)) * w * w;
}

Mat3 right_jacobian_inv_so3(const Vec3& theta) {
  const double t2 = theta.squaredNorm();
  const Mat3 w = skew(theta);
  if (t2 < kSmallAngle * kSmallAngle) {
    return Mat3::Identity() + 0.5 * w + (1.0 / 12.0) * w * w;
  }
  const double t = std::sqrt(t2);
  const double coeff = 1.0 / t2 - (1.0 + std::cos(t)) / (2.0 * t * std::sin(t));
  return Mat3::Identity() + 0.5 * w + coeff * w * w;
}

Mat3 left_jacobian_inv_so3(const Vec3& theta) {
  return right_jacobian_inv_so3(-theta);
}

double Rot3::orthonormality_error() const {
  return (m_ * m_.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
}

Rot3 operator*(const Rot3& a, const Rot3& b) {
  Rot3 out(a.m_ * b.m_);
  if (out.orthonormality_error() > kOrthoDriftTol) {
    // Nearest rotation via Gram-Schmidt on the first two columns.
    Vec3 c0 = out.m_.col(0).normalized();
    Vec3 c1 = (out.m_.col(1) - c0 * c0.dot(out.m_.col(1))).normalized();
    out.m_.col(0) = c0;
    out.m_.col(1) = c1;
    out.m_.col(2) = c0.cross(c1);
  }
  return out;
}

}  // namespace jpcm
