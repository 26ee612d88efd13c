#include "kkbar/kaon_states.hpp"

#include <cmath>
#include <sstream>

namespace kkbar {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_hermitian(const SingleKaonOp& op, const char* which) {
  if (const Check c = is_hermitian(op.matrix(), kHermitianTolerance); !c) {
    std::ostringstream msg;
    msg << "correlation needs Hermitian operators; " << which << " has residual " << c.residual;
    throw ValidationError(msg.str());
  }
}

}  // namespace

std::string_view to_string(BasisLabel label) {
  switch (label) {
    case BasisLabel::KK: return "KK";
    case BasisLabel::KKbar: return "KKbar";
    case BasisLabel::KbarK: return "KbarK";
    case BasisLabel::KbarKbar: return "KbarKbar";
  }
  return "?";
}

std::optional<BasisLabel> parse_basis_label(std::string_view text) {
  for (BasisLabel l : {BasisLabel::KK, BasisLabel::KKbar, BasisLabel::KbarK, BasisLabel::KbarKbar}) {
    if (text == to_string(l)) return l;
  }
  return std::nullopt;
}

TwoKaonState::TwoKaonState(const Vector4& amplitudes) : amplitudes_(amplitudes) {
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "two-kaon state must have unit norm, got " << n;
    throw ValidationError(msg.str());
  }
}

TwoKaonState::TwoKaonState(cplx a0, cplx a1, cplx a2, cplx a3)
    : TwoKaonState(Vector4{a0, a1, a2, a3}) {}

TwoKaonState TwoKaonState::normalized(const Vector4& amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  return TwoKaonState(amplitudes * cplx(1.0 / n));
}

TwoKaonState TwoKaonState::basis(BasisLabel label) {
  return TwoKaonState(Vector4::unit(static_cast<std::size_t>(label)));
}

TwoKaonState TwoKaonState::product(const Vector2& first, const Vector2& second) {
  if (first.norm() == 0.0 || second.norm() == 0.0) {
    throw ValidationError("product factors must be nonzero");
  }
  return normalized(tensor_product(first * cplx(1.0 / first.norm()), second * cplx(1.0 / second.norm())));
}

std::array<TwoKaonState, 4> canonical_basis() {
  return {TwoKaonState::basis(BasisLabel::KK), TwoKaonState::basis(BasisLabel::KKbar),
          TwoKaonState::basis(BasisLabel::KbarK), TwoKaonState::basis(BasisLabel::KbarKbar)};
}

Matrix4 rbar_matrix(const RbarCoefficients& a) {
  return Matrix4{
      {a[0], 0.0, 0.0, 0.0},
      {0.0, 0.0, a[3], 0.0},
      {0.0, a[2], 0.0, 0.0},
      {0.0, 0.0, 0.0, a[1]},
  };
}

TwoKaonState apply_rbar(const RbarCoefficients& coeffs, const TwoKaonState& state) {
  const Matrix4 r = rbar_matrix(coeffs);
  if (const Check c = is_unitary(r, kNormTolerance); !c) {
    std::ostringstream msg;
    msg << "R-bar coefficients do not give a unitary map (residual " << c.residual << ")";
    throw ValidationError(msg.str());
  }
  // R̄ acts on the column of basis kets, so amplitudes transform with R̄ᵀ.
  return TwoKaonState(r.transpose() * state.vector());
}

double rbar_entanglement_criterion(const RbarCoefficients& a) {
  return std::abs(a[0] * a[1] - a[2] * a[3]);
}

cplx amplitude_determinant(const TwoKaonState& s) { return s[0] * s[3] - s[1] * s[2]; }

double concurrence(const TwoKaonState& state) {
  return 2.0 * std::abs(amplitude_determinant(state));
}

bool is_separable(const TwoKaonState& state, double tol) { return concurrence(state) <= tol; }

BellQuartet bell_quartet() {
  const double h = kInvSqrt2;
  return {{
      TwoKaonState(h, 0.0, 0.0, h),
      TwoKaonState(h, 0.0, 0.0, -h),
      TwoKaonState(0.0, h, h, 0.0),
      TwoKaonState(0.0, -h, h, 0.0),
  }};
}

TwoKaonState deformed_bell(double phi) {
  return TwoKaonState(kInvSqrt2, 0.0, 0.0, std::polar(kInvSqrt2, phi));
}

std::array<TwoKaonState, 4> braid_action_images(const BraidSpec& spec) {
  const Matrix4 bt = unitary_braid(spec);
  return {TwoKaonState(bt.row(0)), TwoKaonState(bt.row(1)), TwoKaonState(bt.row(2)),
          TwoKaonState(bt.row(3))};
}

SingleKaonOp SingleKaonOp::strangeness() { return SingleKaonOp(Matrix2{{1.0, 0.0}, {0.0, -1.0}}); }

SingleKaonOp SingleKaonOp::cp() { return SingleKaonOp(Matrix2{{0.0, -1.0}, {-1.0, 0.0}}); }

Matrix4 lift_two_kaon(const SingleKaonOp& op) { return tensor_product(op.matrix(), op.matrix()); }

std::array<EigentableRow, 4> cp_s_eigentable() {
  const Matrix4 s = lift_two_kaon(SingleKaonOp::strangeness());
  const Matrix4 cp = lift_two_kaon(SingleKaonOp::cp());
  const BellQuartet bell = bell_quartet();

  std::array<EigentableRow, 4> table;
  for (std::size_t k = 0; k < 4; ++k) {
    const Vector4& v = bell[k].vector();
    // Rayleigh quotient, then the residual of the eigen-equation.
    const cplx s_val = v.dot(s * v);
    const cplx cp_val = v.dot(cp * v);
    const double s_res = (s * v - v * s_val).norm();
    const double cp_res = (cp * v - v * cp_val).norm();
    const std::string name = "Phi" + std::to_string(k + 1);
    if (s_res > kEigenvectorTolerance || cp_res > kEigenvectorTolerance) {
      std::ostringstream msg;
      msg << name << " is not a simultaneous eigenvector (S residual " << s_res << ", CP residual "
          << cp_res << ")";
      throw ConsistencyError(msg.str());
    }
    table[k] = {name, static_cast<int>(std::lround(s_val.real())),
                static_cast<int>(std::lround(cp_val.real())), s_res, cp_res};
  }
  return table;
}

double correlation(const TwoKaonState& state, const SingleKaonOp& a, const SingleKaonOp& b) {
  require_hermitian(a, "first operator");
  require_hermitian(b, "second operator");
  const Matrix4 ab = tensor_product(a.matrix(), b.matrix());
  return state.vector().dot(ab * state.vector()).real();
}

}  // namespace kkbar
