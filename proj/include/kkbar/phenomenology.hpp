// Single neutral-kaon mixing: the K_S / K_L basis, decaying evolution and
// flavor oscillation probabilities. Natural units, ħ = c = 1.
#pragma once

#include "kkbar/tensor_algebra.hpp"

#include <utility>
#include <vector>

namespace kkbar {

/// Decay rates and masses of the short- and long-lived states.
class KaonParams {
 public:
  /// Throws ValidationError for negative or non-finite rates, non-finite masses.
  KaonParams(double gamma_s, double gamma_l, double m_s, double m_l);

  /// Masses enter only through Δm = m_L − m_S; m_S is pinned to 0.
  static KaonParams from_mass_difference(double gamma_s, double gamma_l, double delta_m);

  /// τ_S = 1 scaling: γ_S = 1, γ_L = 0.00175, Δm = 0.474. External input, not derived here.
  static KaonParams scaled_defaults();

  double gamma_s() const { return gamma_s_; }
  double gamma_l() const { return gamma_l_; }
  double m_s() const { return m_s_; }
  double m_l() const { return m_l_; }
  double delta_m() const { return m_l_ - m_s_; }
  cplx alpha_s() const { return {gamma_s_ / 2.0, m_s_}; }
  cplx alpha_l() const { return {gamma_l_ / 2.0, m_l_}; }

 private:
  double gamma_s_;
  double gamma_l_;
  double m_s_;
  double m_l_;
};

enum class Flavor { K, Kbar };

/// Amplitudes on |K⟩ and |K̄⟩.
struct FlavorAmplitudes {
  cplx c_k;
  cplx c_kbar;

  cplx operator[](Flavor f) const { return f == Flavor::K ? c_k : c_kbar; }
  double total_probability() const { return std::norm(c_k) + std::norm(c_kbar); }
};

/// Amplitudes on |S⟩ = (|K⟩+|K̄⟩)/√2 and |L⟩ = (|K⟩−|K̄⟩)/√2.
struct SLAmplitudes {
  cplx c_s;
  cplx c_l;
};

/// Flavor → S/L coordinates. The transform is real orthogonal and its own inverse.
SLAmplitudes to_sl_basis(const FlavorAmplitudes& flavor);
FlavorAmplitudes from_sl_basis(const SLAmplitudes& sl);

struct UFactors {
  cplx u_s;
  cplx u_l;
};

/// U_{S,L}(t) = exp(−α_{S,L}·t). Throws std::domain_error for t < 0.
UFactors u_factors(const KaonParams& params, double t);

/// |K(t)⟩ = ½(U_S+U_L)|K⟩ + ½(U_S−U_L)|K̄⟩.
FlavorAmplitudes evolve_k(const KaonParams& params, double t);
/// |K̄(t)⟩ = ½(U_S−U_L)|K⟩ + ½(U_S+U_L)|K̄⟩.
FlavorAmplitudes evolve_kbar(const KaonParams& params, double t);

/// |⟨to|from(t)⟩|² from the evolved amplitudes.
double transition_probability(const KaonParams& params, double t, Flavor from, Flavor to);

/// ¼(e^{−γ_S t} + e^{−γ_L t} − 2e^{−(γ_S+γ_L)t/2}·cos(Δm·t)).
double mixing_probability_closed_form(const KaonParams& params, double t);
/// ¼(e^{−γ_S t} + e^{−γ_L t} + 2e^{−(γ_S+γ_L)t/2}·cos(Δm·t)).
double survival_probability_closed_form(const KaonParams& params, double t);

/// |S(t)⟩ = U_S|S(0)⟩, |L(t)⟩ = U_L|L(0)⟩, with the flavor content of each.
struct SLEvolution {
  UFactors factors;
  FlavorAmplitudes s_flavor;  // U_S·(1, 1)/√2
  FlavorAmplitudes l_flavor;  // U_L·(1, −1)/√2
};

SLEvolution evolve_sl_states(const KaonParams& params, double t);

struct OscillationRow {
  double t;
  double p_kk;
  double p_kkbar;
  double asymmetry;  // (P_KK − P_KK̄)/(P_KK + P_KK̄)
};

/// `steps` uniform samples over [0, t_max], both ends included.
/// Throws ValidationError unless t_max > 0 and steps ≥ 2.
std::vector<OscillationRow> oscillation_curve(const KaonParams& params, double t_max, int steps);

}  // namespace kkbar
