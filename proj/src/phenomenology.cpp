#include "kkbar/phenomenology.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kkbar {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error("proper time must be finite and >= 0, got " + std::to_string(t));
  }
}

}  // namespace

KaonParams::KaonParams(double gamma_s, double gamma_l, double m_s, double m_l)
    : gamma_s_(gamma_s), gamma_l_(gamma_l), m_s_(m_s), m_l_(m_l) {
  if (!std::isfinite(gamma_s) || !std::isfinite(gamma_l) || gamma_s < 0.0 || gamma_l < 0.0) {
    std::ostringstream msg;
    msg << "decay rates must be finite and >= 0 (gamma_s=" << gamma_s << ", gamma_l=" << gamma_l << ")";
    throw ValidationError(msg.str());
  }
  if (!std::isfinite(m_s) || !std::isfinite(m_l)) throw ValidationError("masses must be finite");
}

KaonParams KaonParams::from_mass_difference(double gamma_s, double gamma_l, double delta_m) {
  return KaonParams(gamma_s, gamma_l, 0.0, delta_m);
}

KaonParams KaonParams::scaled_defaults() { return from_mass_difference(1.0, 0.00175, 0.474); }

SLAmplitudes to_sl_basis(const FlavorAmplitudes& f) {
  return {(f.c_k + f.c_kbar) * kInvSqrt2, (f.c_k - f.c_kbar) * kInvSqrt2};
}

FlavorAmplitudes from_sl_basis(const SLAmplitudes& sl) {
  return {(sl.c_s + sl.c_l) * kInvSqrt2, (sl.c_s - sl.c_l) * kInvSqrt2};
}

UFactors u_factors(const KaonParams& params, double t) {
  require_time(t);
  return {std::exp(-params.alpha_s() * t), std::exp(-params.alpha_l() * t)};
}

FlavorAmplitudes evolve_k(const KaonParams& params, double t) {
  const auto [us, ul] = u_factors(params, t);
  return {(us + ul) / 2.0, (us - ul) / 2.0};
}

FlavorAmplitudes evolve_kbar(const KaonParams& params, double t) {
  const auto [us, ul] = u_factors(params, t);
  return {(us - ul) / 2.0, (us + ul) / 2.0};
}

double transition_probability(const KaonParams& params, double t, Flavor from, Flavor to) {
  const FlavorAmplitudes amp = from == Flavor::K ? evolve_k(params, t) : evolve_kbar(params, t);
  return std::norm(amp[to]);
}

double mixing_probability_closed_form(const KaonParams& params, double t) {
  require_time(t);
  const double gs = params.gamma_s();
  const double gl = params.gamma_l();
  return 0.25 * (std::exp(-gs * t) + std::exp(-gl * t) -
                 2.0 * std::exp(-(gs + gl) * t / 2.0) * std::cos(params.delta_m() * t));
}

double survival_probability_closed_form(const KaonParams& params, double t) {
  require_time(t);
  const double gs = params.gamma_s();
  const double gl = params.gamma_l();
  return 0.25 * (std::exp(-gs * t) + std::exp(-gl * t) +
                 2.0 * std::exp(-(gs + gl) * t / 2.0) * std::cos(params.delta_m() * t));
}

SLEvolution evolve_sl_states(const KaonParams& params, double t) {
  const UFactors u = u_factors(params, t);
  return {u, {u.u_s * kInvSqrt2, u.u_s * kInvSqrt2}, {u.u_l * kInvSqrt2, -u.u_l * kInvSqrt2}};
}

std::vector<OscillationRow> oscillation_curve(const KaonParams& params, double t_max, int steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw ValidationError("oscillation curve needs t_max > 0");
  }
  if (steps < 2) throw ValidationError("oscillation curve needs at least 2 samples");

  std::vector<OscillationRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = i == steps - 1 ? t_max : t_max * i / (steps - 1);
    const double p_kk = transition_probability(params, t, Flavor::K, Flavor::K);
    const double p_kkbar = transition_probability(params, t, Flavor::K, Flavor::Kbar);
    const double total = p_kk + p_kkbar;
    rows.push_back({t, p_kk, p_kkbar, total > 0.0 ? (p_kk - p_kkbar) / total : 0.0});
  }
  return rows;
}

}  // namespace kkbar
