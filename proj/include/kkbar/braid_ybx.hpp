// Eight-vertex braid matrices, their Yang-Baxterization, and the unitary
// spectral family built from them.
#pragma once

#include "kkbar/tensor_algebra.hpp"

namespace kkbar {

enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
const char* to_string(Sign s);

/// Sign variant and deformation phase of b±(φ), with q = e^{iφ}.
class BraidSpec {
 public:
  /// Throws std::invalid_argument for non-finite phi. phi is reduced to [0, 2π).
  BraidSpec(Sign sign, double phi);

  Sign sign() const { return sign_; }
  double phi() const { return phi_; }
  cplx q() const;

 private:
  Sign sign_;
  double phi_;
};

/// Spectral parameter x ≥ 0 and its angle θ = arctan x, so that
/// cos θ = 1/√(1+x²) and sin θ = x/√(1+x²).
class SpectralPoint {
 public:
  SpectralPoint(double x, double phi);
  static SpectralPoint from_theta(double theta, double phi);

  double x() const { return x_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double cos_theta() const { return cos_; }
  double sin_theta() const { return sin_; }

 private:
  SpectralPoint(double x, double theta, double cos_t, double sin_t, double phi);
  double x_;
  double theta_;
  double cos_;
  double sin_;
  double phi_;
};

/// Which (3,4) entry to use. The printed form carries a stray 1 that breaks the
/// braid relation; it exists only so diagnostics can demonstrate that failure.
enum class BraidVariant { corrected, uncorrected };

/// b± = [[1,0,0,q],[0,1,±1,0],[0,∓1,1,0],[−1/q,0,0,1]]. Satisfies b·b† = 2I.
Matrix4 braid_matrix(const BraidSpec& spec, BraidVariant variant = BraidVariant::corrected);

/// b̃± = b±/√2, unitary with eigenvalues e^{±iπ/4}.
Matrix4 unitary_braid(const BraidSpec& spec);

/// Lifts of a two-site operator onto three sites: m⊗I₂ and I₂⊗m.
Matrix8 embed_first(const Matrix4& m);
Matrix8 embed_second(const Matrix4& m);

/// ‖b₁b₂b₁ − b₂b₁b₂‖_F on (C²)⊗³.
double check_braid_relation(const BraidSpec& spec, BraidVariant variant = BraidVariant::corrected);
double braid_relation_residual(const Matrix4& b);

/// Product of the two distinct eigenvalues of b±, (1+i)(1−i) = 2.
inline constexpr double kEigenvalueProduct = 2.0;

/// R±(x) = b + x·λ₁λ₂·b⁻¹, unnormalized. Requires x ≥ 0.
Matrix4 yang_baxterize(const BraidSpec& spec, double x);

/// ‖R₁(x)R₂(xy)R₁(y) − R₂(y)R₁(xy)R₂(x)‖_F. Requires x, y ≥ 0.
double check_qybe(const BraidSpec& spec, double x, double y);

/// R̃±(θ,φ) = cos θ·b̃ + sin θ·b̃⁻¹, exactly unitary.
Matrix4 unitary_r(const SpectralPoint& point, Sign sign);

struct RhoReport {
  bool is_scalar;
  cplx scalar;
  double off_diagonal;     // Frobenius mass off the diagonal
  double diagonal_spread;  // max distance of a diagonal entry from the mean
  double printed_formula;  // q² + q⁻² − t − t⁻¹, real since |q| = 1
};

inline constexpr double kRhoScalarTolerance = 1e-12;

/// R(t)·R(1/t) from the unnormalized R; should be 2(t + 1/t)·I. Requires t > 0.
RhoReport rho_check(const BraidSpec& spec, double t);

/// The scalar the inversion relation takes, 2(t + 1/t).
inline double rho_scalar_closed_form(double t) { return 2.0 * (t + 1.0 / t); }

}  // namespace kkbar
