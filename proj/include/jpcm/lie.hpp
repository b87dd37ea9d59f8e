#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

// SO(3)/SE(3) primitives. All rotation Jacobians in this codebase follow the
// right (local) perturbation convention: R ⊕ δ = R · exp_so3(δ).
namespace jpcm {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

Mat3 skew(const Vec3& v);
Vec3 vee(const Mat3& m);

// Rodrigues. Safe for all inputs.
Mat3 exp_so3(const Vec3& theta);

// Principal log. Throws std::domain_error when the rotation angle
// reaches pi - 1e-6 (axis becomes ill-defined).
Vec3 log_so3(const Mat3& R);

// d/dδ log(exp(θ)·exp(δ)) at δ=0, and its inverse.
Mat3 right_jacobian_so3(const Vec3& theta);
Mat3 right_jacobian_inv_so3(const Vec3& theta);
// Left counterparts: Jl(θ) = Jr(-θ).
Mat3 left_jacobian_inv_so3(const Vec3& theta);

class Rot3 {
 public:
  Rot3() : m_(Mat3::Identity()) {}
  explicit Rot3(const Mat3& m) : m_(m) {}

  static Rot3 exp(const Vec3& theta) { return Rot3(exp_so3(theta)); }
  Vec3 log() const { return log_so3(m_); }

  const Mat3& matrix() const { return m_; }
  Rot3 inverse() const { return Rot3(m_.transpose()); }
  Vec3 rotate(const Vec3& v) const { return m_ * v; }
  Vec3 unrotate(const Vec3& v) const { return m_.transpose() * v; }

  // Composition re-orthonormalizes when accumulated drift exceeds tolerance,
  // so long chains stay on the manifold.
  friend Rot3 operator*(const Rot3& a, const Rot3& b);

  // Frobenius-style drift from orthonormality, used by tests.
  double orthonormality_error() const;

 private:
  Mat3 m_;
};

// Rigid transform (R, t): x_world = R x_local + t. The tangent chart is the
// product retraction [θ; ρ] → (exp_so3(θ), ρ); composition and inverse are
// the usual SE(3) group operations.
class Pose3 {
 public:
  Pose3() : t_(Vec3::Zero()) {}
  Pose3(const Rot3& R, const Vec3& t) : R_(R), t_(t) {}

  static Pose3 exp(const Vec6& xi) {
    return Pose3(Rot3::exp(xi.head<3>()), xi.tail<3>());
  }
  Vec6 log() const {
    Vec6 xi;
    xi.head<3>() = R_.log();
    xi.tail<3>() = t_;
    return xi;
  }

  const Rot3& rotation() const { return R_; }
  const Vec3& translation() const { return t_; }

  Pose3 inverse() const {
    return Pose3(R_.inverse(), -R_.unrotate(t_));
  }
  friend Pose3 operator*(const Pose3& a, const Pose3& b) {
    return Pose3(a.R_ * b.R_, a.t_ + a.R_.rotate(b.t_));
  }

 private:
  Rot3 R_;
  Vec3 t_;
};

}  // namespace jpcm
