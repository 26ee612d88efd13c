#include "kkbar/tensor_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace kkbar {

template <std::size_t N>
NormalEigensystem<N> eigensystem_normal(const Matrix<N>& m) {
  using Storage = typename Matrix<N>::Storage;
  const double scale = std::max(1.0, m.frobenius_norm());
  if (const Check c = is_normal(m, kNormalityTolerance * scale); !c) {
    std::ostringstream msg;
    msg << "matrix is not normal (commutator residual " << c.residual << ")";
    throw NormalityError(msg.str());
  }

  // A normal matrix splits into commuting Hermitian parts m = A + iB. Diagonalize A,
  // then B inside each degenerate eigenspace of A.
  const Storage a = (m.eigen() + m.eigen().adjoint()) / 2.0;
  const Storage b = (m.eigen() - m.eigen().adjoint()) / cplx(0.0, 2.0);

  Eigen::SelfAdjointEigenSolver<Storage> solve_a(a);
  Storage v = solve_a.eigenvectors();
  const auto& ev_a = solve_a.eigenvalues();

  const double cluster_tol = 1e-9 * scale;
  Eigen::Index start = 0;
  const auto n = static_cast<Eigen::Index>(N);
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && ev_a(end) - ev_a(end - 1) <= cluster_tol) ++end;
    const Eigen::Index width = end - start;
    if (width > 1) {
      const Eigen::MatrixXcd block = v.middleCols(start, width);
      const Eigen::MatrixXcd projected = block.adjoint() * b * block;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve_b(projected);
      v.middleCols(start, width) = block * solve_b.eigenvectors();
    }
    start = end;
  }

  const Storage diag = v.adjoint() * m.eigen() * v;
  NormalEigensystem<N> out{{}, Matrix<N>(v)};
  for (std::size_t k = 0; k < N; ++k) {
    out.eigenvalues[k] = diag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  }
  return out;
}

template <std::size_t N>
std::array<cplx, N> eigenvalues(const Matrix<N>& m) {
  Eigen::ComplexEigenSolver<typename Matrix<N>::Storage> solver(m.eigen(), false);
  std::array<cplx, N> out{};
  for (std::size_t k = 0; k < N; ++k) out[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
  return out;
}

template <std::size_t N>
Matrix<N> matrix_exponential_normal(const Matrix<N>& m) {
  const NormalEigensystem<N> es = eigensystem_normal(m);
  std::array<cplx, N> exp_diag{};
  std::transform(es.eigenvalues.begin(), es.eigenvalues.end(), exp_diag.begin(),
                 [](cplx z) { return std::exp(z); });
  return es.eigenvectors * Matrix<N>::diagonal(exp_diag) * es.eigenvectors.adjoint();
}

template <std::size_t N>
double multiset_distance(const std::array<cplx, N>& a, const std::array<cplx, N>& b) {
  std::array<std::size_t, N> perm{};
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t k = 0; k < N; ++k) worst = std::max(worst, std::abs(a[k] - b[perm[k]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

#define KKBAR_INSTANTIATE(N)                                                          \
  template NormalEigensystem<N> eigensystem_normal<N>(const Matrix<N>&);              \
  template std::array<cplx, N> eigenvalues<N>(const Matrix<N>&);                      \
  template Matrix<N> matrix_exponential_normal<N>(const Matrix<N>&);                  \
  template double multiset_distance<N>(const std::array<cplx, N>&, const std::array<cplx, N>&);

KKBAR_INSTANTIATE(2)
KKBAR_INSTANTIATE(4)
KKBAR_INSTANTIATE(8)

#undef KKBAR_INSTANTIATE

}  // namespace kkbar
