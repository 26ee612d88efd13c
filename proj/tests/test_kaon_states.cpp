#include "kkbar/kaon_states.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

using namespace kkbar;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = 1.0 / std::sqrt(2.0);

int schmidt_rank(const TwoKaonState& s, double tol) {
  Eigen::Matrix2cd m;
  m << s[0], s[1], s[2], s[3];
  const auto sv = Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues();
  return (sv(0) > tol) + (sv(1) > tol);
}

TwoKaonState random_product(std::mt19937_64& rng) {
  return TwoKaonState::product(kkbar::test::random_vector<2>(rng), kkbar::test::random_vector<2>(rng));
}

}  // namespace

TEST_CASE("canonical basis") {
  const auto basis = canonical_basis();
  CHECK((basis[0].vector() - Vector4{1.0, 0.0, 0.0, 0.0}).norm() == 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(basis[i].inner(basis[j]) == cplx(i == j ? 1.0 : 0.0));
  }
  // |K⟩⊗|K̄⟩ is the second element.
  const TwoKaonState kkbar_state = TwoKaonState::product(Vector2{1.0, 0.0}, Vector2{0.0, 1.0});
  CHECK((kkbar_state.vector() - basis[1].vector()).norm() == 0.0);
  CHECK(parse_basis_label("KbarK") == BasisLabel::KbarK);
  CHECK_FALSE(parse_basis_label("KL").has_value());
}

TEST_CASE("state normalization is enforced") {
  CHECK_THROWS_AS(TwoKaonState(1.0, 1.0, 0.0, 0.0), ValidationError);
  CHECK_NOTHROW(TwoKaonState(0.5, 0.5, 0.5, 0.5));
  CHECK_THROWS_AS(TwoKaonState::normalized(Vector4{}), ValidationError);
}

TEST_CASE("R-bar map") {
  // All-ones coefficients swap the two middle amplitudes.
  const TwoKaonState normed =
      TwoKaonState::normalized(Vector4{cplx(0.1, 0.2), cplx(0.3, -0.4), cplx(0.5, 0.0), cplx(0.0, 0.0)});
  const TwoKaonState out = apply_rbar({1.0, 1.0, 1.0, 1.0}, normed);
  CHECK(out[0] == normed[0]);
  CHECK(out[1] == normed[2]);
  CHECK(out[2] == normed[1]);
  CHECK(out[3] == normed[3]);

  // Basis images: KK→a0·KK, KK̄→a3·K̄K, K̄K→a2·KK̄, K̄K̄→a1·K̄K̄.
  const RbarCoefficients a{std::polar(1.0, 0.1), std::polar(1.0, 0.2), std::polar(1.0, 0.3), std::polar(1.0, 0.4)};
  const auto basis = canonical_basis();
  CHECK((apply_rbar(a, basis[0]).vector() - basis[0].vector() * a[0]).norm() < 1e-15);
  CHECK((apply_rbar(a, basis[1]).vector() - basis[2].vector() * a[3]).norm() < 1e-15);
  CHECK((apply_rbar(a, basis[2]).vector() - basis[1].vector() * a[2]).norm() < 1e-15);
  CHECK((apply_rbar(a, basis[3]).vector() - basis[3].vector() * a[1]).norm() < 1e-15);

  // a0·a1 ≠ a2·a3 entangles the uniform product state.
  const TwoKaonState uniform(0.5, 0.5, 0.5, 0.5);
  const RbarCoefficients b{std::polar(1.0, 0.3), 1.0, 1.0, 1.0};
  CHECK(rbar_entanglement_criterion(b) > 0.0);
  CHECK(concurrence(apply_rbar(b, uniform)) > 0.1);
  CHECK(concurrence(apply_rbar(b, uniform)) == doctest::Approx(rbar_entanglement_criterion(b) / 2));
  // a0·a1 = a2·a3 keeps it a product.
  const RbarCoefficients c{std::polar(1.0, 0.3), std::polar(1.0, 0.5), std::polar(1.0, 0.6), std::polar(1.0, 0.2)};
  CHECK(concurrence(apply_rbar(c, uniform)) < 1e-12);

  CHECK_THROWS_AS(apply_rbar({0.5, 1.0, 1.0, 1.0}, uniform), ValidationError);
}

TEST_CASE("concurrence of reference states") {
  CHECK(concurrence(TwoKaonState(0.5, 0.5, 0.5, 0.5)) < 1e-12);
  CHECK(concurrence(TwoKaonState(0.0, kH, kH, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(is_separable(TwoKaonState(0.5, 0.5, 0.5, 0.5), 1e-10));
  CHECK_FALSE(is_separable(bell_quartet()[0], 1e-10));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) CHECK(concurrence(random_product(rng)) < 1e-12);
}

TEST_CASE("separability agrees with the Schmidt rank on 1000 random states") {
  std::mt19937_64 rng(123);
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const TwoKaonState s =
        i % 2 ? random_product(rng) : TwoKaonState::normalized(kkbar::test::random_vector<4>(rng));
    if (is_separable(s, 1e-10) == (schmidt_rank(s, 1e-10) == 1)) ++agree;
  }
  CHECK(agree == 1000);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 50; ++i) {
    const TwoKaonState psi = TwoKaonState::normalized(kkbar::test::random_vector<4>(rng));
    const Matrix4 local = tensor_product(kkbar::test::random_unitary<2>(rng), kkbar::test::random_unitary<2>(rng));
    const TwoKaonState moved = TwoKaonState::normalized(local * psi.vector());
    CHECK(std::abs(concurrence(psi) - concurrence(moved)) < 1e-10);
  }
}

TEST_CASE("Bell quartet") {
  const BellQuartet bell = bell_quartet();
  CHECK((bell[0].vector() - Vector4{kH, 0.0, 0.0, kH}).norm() == 0.0);
  CHECK((bell[3].vector() - Vector4{0.0, -kH, kH, 0.0}).norm() == 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(concurrence(bell[i]) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(bell[i].inner(bell[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("braid action images") {
  const BellQuartet bell = bell_quartet();
  const auto img = braid_action_images(BraidSpec(Sign::plus, 0.0));
  CHECK((img[0].vector() - bell[0].vector()).norm() < 1e-15);
  CHECK((img[1].vector() - bell[2].vector()).norm() < 1e-15);
  CHECK((img[2].vector() - bell[3].vector()).norm() < 1e-15);
  CHECK((img[3].vector() + bell[1].vector()).norm() < 1e-15);

  // φ = π: first image (|KK⟩ − |K̄K̄⟩)/√2.
  const auto flipped = braid_action_images(BraidSpec(Sign::plus, kPi));
  CHECK((flipped[0].vector() - bell[1].vector()).norm() < 1e-15);

  // Phase e^{iφ} on K̄K̄ in the first image, e^{−iφ} on KK in the last.
  const double phi = 0.9;
  const auto deformed = braid_action_images(BraidSpec(Sign::minus, phi));
  CHECK(std::abs(deformed[0][3] - std::polar(kH, phi)) < 1e-15);
  CHECK(std::abs(deformed[3][0] + std::polar(kH, -phi)) < 1e-15);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  for (int k = 0; k < 20; ++k) {
    const auto images = braid_action_images(BraidSpec(k % 2 ? Sign::plus : Sign::minus, phase(rng)));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(images[i].norm() - 1.0) < 1e-14);
      CHECK(concurrence(images[i]) == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs(images[i].inner(images[j])) < 1e-14);
    }
  }
}

TEST_CASE("strangeness and CP lifts") {
  const Matrix4 s = lift_two_kaon(SingleKaonOp::strangeness());
  const Matrix4 cp = lift_two_kaon(SingleKaonOp::cp());
  const BellQuartet bell = bell_quartet();

  CHECK((s * bell[0].vector() - bell[0].vector()).norm() < 1e-15);
  CHECK((cp * bell[1].vector() + bell[1].vector()).norm() < 1e-15);
  const Vector4 kkbar_state = Vector4::unit(1);
  CHECK((s * kkbar_state + kkbar_state).norm() == 0.0);

  CHECK(commutator(s, cp).frobenius_norm() == 0.0);
  CHECK(s * s == Matrix4::identity());
  CHECK(cp * cp == Matrix4::identity());
}

TEST_CASE("S / CP eigentable") {
  const auto table = cp_s_eigentable();
  const int expected[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(table[k].name == "Phi" + std::to_string(k + 1));
    CHECK(table[k].strangeness == expected[k][0]);
    CHECK(table[k].cp == expected[k][1]);
    CHECK(table[k].strangeness_residual < 1e-15);
    CHECK(table[k].cp_residual < 1e-15);
  }
}

TEST_CASE("correlations on the deformed Bell state") {
  const SingleKaonOp s = SingleKaonOp::strangeness();
  const SingleKaonOp cp = SingleKaonOp::cp();
  for (int j = 0; j <= 24; ++j) {
    const double phi = 2 * kPi * j / 24;
    const TwoKaonState psi = deformed_bell(phi);
    CHECK(correlation(psi, cp, cp) == doctest::Approx(std::cos(phi)).epsilon(1e-12));
    CHECK(std::abs(correlation(psi, cp, cp) - std::cos(phi)) < 1e-12);
    CHECK(std::abs(correlation(psi, s, s) - 1.0) < 1e-12);
    CHECK(std::abs(concurrence(psi) - 1.0) < 1e-12);
  }
  CHECK(correlation(bell_quartet()[2], s, s) == doctest::Approx(-1.0));

  const SingleKaonOp raising(Matrix2{{0.0, 1.0}, {0.0, 0.0}});
  CHECK_THROWS_AS(correlation(deformed_bell(0.0), raising, s), ValidationError);
}
