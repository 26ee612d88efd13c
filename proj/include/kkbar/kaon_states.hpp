// Two-kaon states over the canonical basis (|KK⟩, |KK̄⟩, |K̄K⟩, |K̄K̄⟩),
// entanglement, Bell states and the strangeness / CP observables.
#pragma once

#include "kkbar/braid_ybx.hpp"
#include "kkbar/tensor_algebra.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace kkbar {

enum class BasisLabel { KK = 0, KKbar = 1, KbarK = 2, KbarKbar = 3 };

std::string_view to_string(BasisLabel label);
std::optional<BasisLabel> parse_basis_label(std::string_view text);

inline constexpr double kNormTolerance = 1e-9;

/// Unit vector a0|KK⟩ + a1|KK̄⟩ + a2|K̄K⟩ + a3|K̄K̄⟩.
class TwoKaonState {
 public:
  /// Throws ValidationError unless | ‖v‖ − 1 | ≤ 1e-9.
  explicit TwoKaonState(const Vector4& amplitudes);
  TwoKaonState(cplx a0, cplx a1, cplx a2, cplx a3);

  /// Rescales to unit norm; throws ValidationError for the zero vector.
  static TwoKaonState normalized(const Vector4& amplitudes);
  static TwoKaonState basis(BasisLabel label);
  /// ψ ⊗ χ for single-kaon vectors over (|K⟩, |K̄⟩); both are normalized first.
  static TwoKaonState product(const Vector2& first, const Vector2& second);

  cplx operator[](std::size_t k) const { return amplitudes_[k]; }
  const Vector4& vector() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  cplx inner(const TwoKaonState& other) const { return amplitudes_.dot(other.amplitudes_); }

 private:
  Vector4 amplitudes_;
};

std::array<TwoKaonState, 4> canonical_basis();

/// Coefficients (a0, a1, a2, a3) of the R̄ map.
using RbarCoefficients = std::array<cplx, 4>;

/// R̄ = [[a0,0,0,0],[0,0,a3,0],[0,a2,0,0],[0,0,0,a1]].
Matrix4 rbar_matrix(const RbarCoefficients& coeffs);

/// Applies R̄ as a map on basis kets: KK→a0·KK, KK̄→a3·K̄K, K̄K→a2·KK̄, K̄K̄→a1·K̄K̄.
/// Throws ValidationError if R̄ is not unitary within 1e-9.
TwoKaonState apply_rbar(const RbarCoefficients& coeffs, const TwoKaonState& state);

/// |a0·a1 − a2·a3|: nonzero exactly when R̄ entangles the uniform product state.
double rbar_entanglement_criterion(const RbarCoefficients& coeffs);

/// a0·a3 − a1·a2, the determinant of the 2×2 amplitude matrix.
cplx amplitude_determinant(const TwoKaonState& state);

/// C = 2|a0·a3 − a1·a2|.
double concurrence(const TwoKaonState& state);

bool is_separable(const TwoKaonState& state, double tol);

/// Φ₁,₂ = (|KK⟩ ± |K̄K̄⟩)/√2, Φ₃,₄ = (|K̄K⟩ ± |KK̄⟩)/√2.
struct BellQuartet {
  std::array<TwoKaonState, 4> states;
  const TwoKaonState& operator[](std::size_t k) const { return states[k]; }
};

BellQuartet bell_quartet();

/// (|KK⟩ + e^{iφ}|K̄K̄⟩)/√2.
TwoKaonState deformed_bell(double phi);

/// Rows of b̃±(φ) read as kets, i.e. b̃ applied to the column of basis kets:
/// image k = Σ_j b̃(k, j)|j⟩. At φ = 0 these are Bell states.
std::array<TwoKaonState, 4> braid_action_images(const BraidSpec& spec);

/// Single-kaon operator over (|K⟩, |K̄⟩).
class SingleKaonOp {
 public:
  explicit SingleKaonOp(const Matrix2& m) : matrix_(m) {}

  /// Ŝ = diag(+1, −1).
  static SingleKaonOp strangeness();
  /// CP = [[0, −1], [−1, 0]]: CP|K⟩ = −|K̄⟩, CP|K̄⟩ = −|K⟩.
  static SingleKaonOp cp();

  const Matrix2& matrix() const { return matrix_; }

 private:
  Matrix2 matrix_;
};

/// op ⊗ op.
Matrix4 lift_two_kaon(const SingleKaonOp& op);

struct EigentableRow {
  std::string name;
  int strangeness;
  int cp;
  double strangeness_residual;  // ‖(Ŝ⊗Ŝ)Φ − s·Φ‖
  double cp_residual;
};

class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kEigenvectorTolerance = 1e-12;

/// Ŝ⊗Ŝ and CP⊗CP eigenvalues of Φ₁…Φ₄. Throws ConsistencyError if some Φ is
/// not an eigenvector.
std::array<EigentableRow, 4> cp_s_eigentable();

inline constexpr double kHermitianTolerance = 1e-12;

/// ⟨Ψ|A⊗B|Ψ⟩ for Hermitian A, B. Throws ValidationError otherwise.
double correlation(const TwoKaonState& state, const SingleKaonOp& a, const SingleKaonOp& b);

}  // namespace kkbar
