#include "kkbar/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kkbar {

HamiltonianFamily::HamiltonianFamily(const BraidSpec& spec)
    : spec_(spec), generator_([&] {
        const Matrix4 bt = unitary_braid(spec);
        return -kI * (bt * bt);
      }()) {}

Matrix4 hamiltonian_at(const BraidSpec& spec, double t) { return HamiltonianFamily(spec).at(t); }

Matrix4 propagator(const BraidSpec& spec, double t0, double t1) {
  const double angle = integrated_profile(t1) - integrated_profile(t0);
  if (angle == 0.0) return Matrix4::identity();
  const HamiltonianFamily family(spec);
  return matrix_exponential_normal(cplx(0.0, -angle) * family.generator());
}

TwoKaonState evolve_state(const TwoKaonState& state, const BraidSpec& spec, double t0, double t1) {
  if (t0 == t1) return state;
  return TwoKaonState(propagator(spec, t0, t1) * state.vector());
}

double schrodinger_residual(const TwoKaonState& state0, const BraidSpec& spec, double t, double dt) {
  if (!(dt > 0.0 && dt <= kMaxSchrodingerStep)) {
    throw ValidationError("schrodinger_residual needs 0 < dt <= 1e-3, got " + std::to_string(dt));
  }
  const Vector4& psi0 = state0.vector();
  const Vector4 before = propagator(spec, 0.0, t - dt) * psi0;
  const Vector4 now = propagator(spec, 0.0, t) * psi0;
  const Vector4 after = propagator(spec, 0.0, t + dt) * psi0;
  const Vector4 lhs = (after - before) * cplx(0.0, 1.0 / (2.0 * dt));
  return (lhs - hamiltonian_at(spec, t) * now).norm();
}

double r_vs_hamiltonian_consistency(const BraidSpec& spec, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("consistency check needs finite t >= 0, got " + std::to_string(t));
  }
  const Matrix4 r_t = unitary_r(SpectralPoint(t, spec.phi()), spec.sign());
  const Matrix4 r_0 = unitary_r(SpectralPoint(0.0, spec.phi()), spec.sign());
  return (r_t * r_0.adjoint() - propagator(spec, 0.0, t)).frobenius_norm();
}

HamiltonianImageComparison compare_hamiltonian_images(const BraidSpec& spec) {
  const Matrix4 h = hamiltonian_at(spec, 1.0) / cplx(0.0, 0.5);
  const cplx conj_q = std::conj(spec.q());
  const double s = sign_value(spec.sign());

  HamiltonianImageComparison out;
  out.printed = {
      Vector4{0.0, 0.0, 0.0, -conj_q},
      Vector4{0.0, 0.0, -s, 0.0},
      Vector4{0.0, s, 0.0, 0.0},
      Vector4{conj_q, 0.0, 0.0, 0.0},
  };
  for (std::size_t k = 0; k < 4; ++k) {
    out.computed[k] = h.row(k);
    out.delta[k] = (out.computed[k] - out.printed[k]).norm();
  }
  return out;
}

}  // namespace kkbar
