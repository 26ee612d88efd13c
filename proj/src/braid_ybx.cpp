#include "kkbar/braid_ybx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kkbar {

const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

BraidSpec::BraidSpec(Sign sign, double phi) : sign_(sign) {
  if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi_ = std::fmod(phi, two_pi);
  if (phi_ < 0.0) phi_ += two_pi;
  if (phi_ >= two_pi) phi_ = 0.0;
}

cplx BraidSpec::q() const { return std::polar(1.0, phi_); }

SpectralPoint::SpectralPoint(double x, double theta, double cos_t, double sin_t, double phi)
    : x_(x), theta_(theta), cos_(cos_t), sin_(sin_t), phi_(phi) {}

SpectralPoint::SpectralPoint(double x, double phi) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::invalid_argument("spectral parameter must be finite and >= 0, got " + std::to_string(x));
  }
  if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
  const double r = std::sqrt(1.0 + x * x);
  *this = SpectralPoint(x, std::atan(x), 1.0 / r, x / r, phi);
}

SpectralPoint SpectralPoint::from_theta(double theta, double phi) {
  if (!(theta >= 0.0 && theta < std::numbers::pi / 2)) {
    throw std::invalid_argument("theta must lie in [0, pi/2), got " + std::to_string(theta));
  }
  if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
  return SpectralPoint(std::tan(theta), theta, std::cos(theta), std::sin(theta), phi);
}

Matrix4 braid_matrix(const BraidSpec& spec, BraidVariant variant) {
  const cplx q = spec.q();
  const double s = sign_value(spec.sign());
  const double stray = variant == BraidVariant::uncorrected ? 1.0 : 0.0;
  return Matrix4{
      {1.0, 0.0, 0.0, q},
      {0.0, 1.0, s, 0.0},
      {0.0, -s, 1.0, stray},
      {-1.0 / q, 0.0, 0.0, 1.0},
  };
}

Matrix4 unitary_braid(const BraidSpec& spec) {
  return braid_matrix(spec) / std::sqrt(2.0);
}

Matrix8 embed_first(const Matrix4& m) { return tensor_product(m, Matrix2::identity()); }
Matrix8 embed_second(const Matrix4& m) { return tensor_product(Matrix2::identity(), m); }

double braid_relation_residual(const Matrix4& b) {
  const Matrix8 b1 = embed_first(b);
  const Matrix8 b2 = embed_second(b);
  return (b1 * b2 * b1 - b2 * b1 * b2).frobenius_norm();
}

double check_braid_relation(const BraidSpec& spec, BraidVariant variant) {
  return braid_relation_residual(braid_matrix(spec, variant));
}

Matrix4 yang_baxterize(const BraidSpec& spec, double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::invalid_argument("spectral parameter must be finite and >= 0, got " + std::to_string(x));
  }
  const Matrix4 b = braid_matrix(spec);
  // b·b† = 2I, so b⁻¹ = b†/2 exactly.
  const Matrix4 b_inv = b.adjoint() / 2.0;
  return b + (x * kEigenvalueProduct) * b_inv;
}

double check_qybe(const BraidSpec& spec, double x, double y) {
  const Matrix4 rx = yang_baxterize(spec, x);
  const Matrix4 ry = yang_baxterize(spec, y);
  const Matrix4 rxy = yang_baxterize(spec, x * y);
  const Matrix8 lhs = embed_first(rx) * embed_second(rxy) * embed_first(ry);
  const Matrix8 rhs = embed_second(ry) * embed_first(rxy) * embed_second(rx);
  return (lhs - rhs).frobenius_norm();
}

Matrix4 unitary_r(const SpectralPoint& point, Sign sign) {
  const Matrix4 bt = unitary_braid(BraidSpec(sign, point.phi()));
  return point.cos_theta() * bt + point.sin_theta() * bt.adjoint();
}

RhoReport rho_check(const BraidSpec& spec, double t) {
  if (!std::isfinite(t) || t <= 0.0) {
    throw std::domain_error("rho_check needs t > 0, got " + std::to_string(t));
  }
  const Matrix4 rho = yang_baxterize(spec, t) * yang_baxterize(spec, 1.0 / t);

  cplx mean = 0.0;
  for (std::size_t k = 0; k < 4; ++k) mean += rho(k, k);
  mean /= 4.0;

  double off2 = 0.0;
  double spread = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (r == c) {
        spread = std::max(spread, std::abs(rho(r, c) - mean));
      } else {
        off2 += std::norm(rho(r, c));
      }
    }
  }
  const double off = std::sqrt(off2);

  const cplx q = spec.q();
  const double printed = (q * q + 1.0 / (q * q)).real() - t - 1.0 / t;
  return {off < kRhoScalarTolerance && spread < kRhoScalarTolerance, mean, off, spread, printed};
}

}  // namespace kkbar
