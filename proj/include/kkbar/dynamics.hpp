// Time-dependent Hamiltonians H±(t) generated by the unitary braid matrix, and
// the exact evolution of two-kaon states under them.
#pragma once

#include "kkbar/braid_ybx.hpp"
#include "kkbar/kaon_states.hpp"
#include "kkbar/tensor_algebra.hpp"

#include <array>
#include <cmath>

namespace kkbar {

/// Envelope f(t) = 1/(1+t²). Even in t.
inline double time_profile(double t) { return 1.0 / (1.0 + t * t); }

/// ∫₀ᵗ f = arctan t.
inline double integrated_profile(double t) { return std::atan(t); }

/// H(t) = f(t)·H₀ with the constant Hermitian generator H₀ = −i·b̃², H₀² = I.
class HamiltonianFamily {
 public:
  explicit HamiltonianFamily(const BraidSpec& spec);

  const BraidSpec& spec() const { return spec_; }
  const Matrix4& generator() const { return generator_; }
  Matrix4 at(double t) const { return time_profile(t) * generator_; }

 private:
  BraidSpec spec_;
  Matrix4 generator_;
};

Matrix4 hamiltonian_at(const BraidSpec& spec, double t);

/// exp(−i·(arctan t1 − arctan t0)·H₀). The H(t) commute with each other, so
/// no time ordering is needed.
Matrix4 propagator(const BraidSpec& spec, double t0, double t1);

/// Ψ(t1) = U(t1, t0)·Ψ(t0). The state type already enforces unit norm.
TwoKaonState evolve_state(const TwoKaonState& state, const BraidSpec& spec, double t0, double t1);

inline constexpr double kMaxSchrodingerStep = 1e-3;

/// ‖i·(Ψ(t+dt) − Ψ(t−dt))/(2dt) − H(t)Ψ(t)‖ along the trajectory that starts
/// at state0 at time 0. Requires 0 < dt ≤ 1e-3.
double schrodinger_residual(const TwoKaonState& state0, const BraidSpec& spec, double t, double dt);

/// ‖R̃(θ(t))·R̃(0)⁻¹ − U(t, 0)‖_F with θ(t) = arctan t. Requires t ≥ 0.
double r_vs_hamiltonian_consistency(const BraidSpec& spec, double t);

/// H(1) applied to the column of basis kets, one ket per row, with the common
/// factor i/2 taken out; next to the row pattern as it is usually printed,
/// (−e^{−iφ}K̄K̄, ∓K̄K, ±KK̄, e^{−iφ}KK).
struct HamiltonianImageComparison {
  std::array<Vector4, 4> computed;
  std::array<Vector4, 4> printed;
  std::array<double, 4> delta;  // ‖computed − printed‖ per row
};

HamiltonianImageComparison compare_hamiltonian_images(const BraidSpec& spec);

}  // namespace kkbar
