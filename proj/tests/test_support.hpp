// Random generators and small oracles shared by the unit tests.
#pragma once

#include "kkbar/tensor_algebra.hpp"

#include <random>

namespace kkbar::test {

template <std::size_t N>
Matrix<N> random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  typename Matrix<N>::Storage m;
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(N); ++r) {
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(N); ++c) m(r, c) = cplx(g(rng), g(rng));
  }
  return Matrix<N>(m);
}

template <std::size_t N>
Vector<N> random_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  typename Vector<N>::Storage v;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(N); ++k) v(k) = cplx(g(rng), g(rng));
  return Vector<N>(v);
}

template <std::size_t N>
Matrix<N> random_hermitian(std::mt19937_64& rng) {
  const Matrix<N> a = random_matrix<N>(rng);
  return (a + a.adjoint()) * cplx(0.5);
}

/// Random unitary from the QR factor of a Gaussian matrix.
template <std::size_t N>
Matrix<N> random_unitary(std::mt19937_64& rng) {
  const Matrix<N> a = random_matrix<N>(rng);
  Eigen::HouseholderQR<typename Matrix<N>::Storage> qr(a.eigen());
  return Matrix<N>(typename Matrix<N>::Storage(qr.householderQ()));
}

/// exp(m) by a truncated Taylor series with scaling and squaring; independent
/// of the spectral route used by the library.
template <std::size_t N>
Matrix<N> taylor_exponential(const Matrix<N>& m) {
  int squarings = 0;
  double norm = m.frobenius_norm();
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix<N> scaled = m * cplx(std::ldexp(1.0, -squarings));
  Matrix<N> term = Matrix<N>::identity();
  Matrix<N> sum = Matrix<N>::identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled * cplx(1.0 / k);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace kkbar::test
