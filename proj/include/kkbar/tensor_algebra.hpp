// Fixed-size complex linear algebra for the 2-, 4- and 8-dimensional spaces
// of one, two and three kaon sites.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace kkbar {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Dimensions admitted by the library: one site, two sites, three sites.
template <std::size_t N>
concept SiteDimension = (N == 2 || N == 4 || N == 8);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NormalityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input rejected by a precondition (normalization, unitarity, grid shape ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <std::size_t N>
  requires SiteDimension<N>
class Vector {
 public:
  using Storage = Eigen::Matrix<cplx, static_cast<int>(N), 1>;

  Vector() : data_(Storage::Zero()) {}
  explicit Vector(const Storage& data) : data_(data) { check_finite(); }
  Vector(std::initializer_list<cplx> values) {
    if (values.size() != N) {
      throw DimensionError("vector literal has " + std::to_string(values.size()) +
                           " entries, expected " + std::to_string(N));
    }
    std::size_t i = 0;
    for (const cplx& v : values) data_(static_cast<Eigen::Index>(i++)) = v;
    check_finite();
  }

  static Vector unit(std::size_t k) {
    Vector v;
    v.data_(static_cast<Eigen::Index>(k)) = 1.0;
    return v;
  }

  static constexpr std::size_t dim() { return N; }

  cplx operator[](std::size_t k) const { return data_(static_cast<Eigen::Index>(k)); }
  const Storage& eigen() const { return data_; }

  double norm() const { return data_.norm(); }
  cplx dot(const Vector& rhs) const { return data_.dot(rhs.data_); }  // conjugate-linear in *this

  Vector operator+(const Vector& rhs) const { return Vector(Storage(data_ + rhs.data_)); }
  Vector operator-(const Vector& rhs) const { return Vector(Storage(data_ - rhs.data_)); }
  Vector operator*(cplx s) const { return Vector(Storage(data_ * s)); }
  friend Vector operator*(cplx s, const Vector& v) { return v * s; }

 private:
  void check_finite() const {
    if (!data_.allFinite()) throw NonFiniteError("vector has non-finite entries");
  }

  Storage data_;
};

/// Dense square complex matrix of fixed dimension. Entries are always finite.
template <std::size_t N>
  requires SiteDimension<N>
class Matrix {
 public:
  using Storage = Eigen::Matrix<cplx, static_cast<int>(N), static_cast<int>(N)>;

  Matrix() : data_(Storage::Zero()) {}
  explicit Matrix(const Storage& data) : data_(data) { check_finite(); }
  /// Row-major literal.
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    if (rows.size() != N) throw DimensionError("matrix literal has wrong row count");
    Eigen::Index r = 0;
    for (const auto& row : rows) {
      if (row.size() != N) throw DimensionError("matrix literal has wrong column count");
      Eigen::Index c = 0;
      for (const cplx& v : row) data_(r, c++) = v;
      ++r;
    }
    check_finite();
  }

  static Matrix identity() { return Matrix(Storage::Identity()); }
  static Matrix zero() { return Matrix(); }
  static Matrix diagonal(const std::array<cplx, N>& d) {
    Matrix m;
    for (std::size_t k = 0; k < N; ++k) m.data_(k, k) = d[k];
    return m;
  }

  static constexpr std::size_t dim() { return N; }

  cplx operator()(std::size_t r, std::size_t c) const {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  const Storage& eigen() const { return data_; }

  Matrix adjoint() const { return Matrix(Storage(data_.adjoint())); }
  Matrix transpose() const { return Matrix(Storage(data_.transpose())); }
  Matrix inverse() const { return Matrix(Storage(data_.inverse())); }
  cplx determinant() const { return data_.determinant(); }
  cplx trace() const { return data_.trace(); }
  double frobenius_norm() const { return data_.norm(); }

  Vector<N> row(std::size_t r) const {
    return Vector<N>(typename Vector<N>::Storage(data_.row(static_cast<Eigen::Index>(r)).transpose()));
  }
  Vector<N> column(std::size_t c) const {
    return Vector<N>(typename Vector<N>::Storage(data_.col(static_cast<Eigen::Index>(c))));
  }

  Matrix operator*(const Matrix& rhs) const { return Matrix(Storage(data_ * rhs.data_)); }
  Vector<N> operator*(const Vector<N>& v) const {
    return Vector<N>(typename Vector<N>::Storage(data_ * v.eigen()));
  }
  Matrix operator+(const Matrix& rhs) const { return Matrix(Storage(data_ + rhs.data_)); }
  Matrix operator-(const Matrix& rhs) const { return Matrix(Storage(data_ - rhs.data_)); }
  Matrix operator-() const { return Matrix(Storage(-data_)); }
  Matrix operator*(cplx s) const { return Matrix(Storage(data_ * s)); }
  friend Matrix operator*(cplx s, const Matrix& m) { return m * s; }
  Matrix operator/(cplx s) const { return Matrix(Storage(data_ / s)); }

  bool operator==(const Matrix& rhs) const { return data_ == rhs.data_; }

 private:
  void check_finite() const {
    if (!data_.allFinite()) throw NonFiniteError("matrix has non-finite entries");
  }

  Storage data_;
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;
using Matrix8 = Matrix<8>;
using Vector2 = Vector<2>;
using Vector4 = Vector<4>;
using Vector8 = Vector<8>;

/// Result of a norm-based predicate: the residual and whether it met the tolerance.
struct Check {
  bool ok;
  double residual;
  explicit operator bool() const { return ok; }
};

/// Kronecker product a ⊗ b. Only products landing in a supported dimension compile.
template <std::size_t M, std::size_t K>
  requires SiteDimension<M> && SiteDimension<K> && SiteDimension<M * K>
Matrix<M * K> tensor_product(const Matrix<M>& a, const Matrix<K>& b) {
  typename Matrix<M * K>::Storage out;
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      out.block(static_cast<Eigen::Index>(i * K), static_cast<Eigen::Index>(j * K),
                static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K)) =
          a(i, j) * b.eigen();
    }
  }
  return Matrix<M * K>(out);
}

template <std::size_t M, std::size_t K>
  requires SiteDimension<M> && SiteDimension<K> && SiteDimension<M * K>
Vector<M * K> tensor_product(const Vector<M>& u, const Vector<K>& v) {
  typename Vector<M * K>::Storage out;
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      out(static_cast<Eigen::Index>(i * K + j)) = u[i] * v[j];
    }
  }
  return Vector<M * K>(out);
}

template <std::size_t N>
Matrix<N> commutator(const Matrix<N>& a, const Matrix<N>& b) {
  return a * b - b * a;
}

/// ‖m·m† − I‖_F against tol.
template <std::size_t N>
Check is_unitary(const Matrix<N>& m, double tol) {
  const double r = (m * m.adjoint() - Matrix<N>::identity()).frobenius_norm();
  return {r <= tol, r};
}

/// ‖m − m†‖_F against tol.
template <std::size_t N>
Check is_hermitian(const Matrix<N>& m, double tol) {
  const double r = (m - m.adjoint()).frobenius_norm();
  return {r <= tol, r};
}

/// ‖m·m† − m†·m‖_F against tol.
template <std::size_t N>
Check is_normal(const Matrix<N>& m, double tol) {
  const double r = (m * m.adjoint() - m.adjoint() * m).frobenius_norm();
  return {r <= tol, r};
}

/// Spectral decomposition m = V·diag(λ)·V† with V unitary.
template <std::size_t N>
struct NormalEigensystem {
  std::array<cplx, N> eigenvalues;
  Matrix<N> eigenvectors;  // columns, orthonormal
};

inline constexpr double kNormalityTolerance = 1e-10;

/// Unitary eigendecomposition of a normal matrix. Degenerate eigenspaces come
/// back with an arbitrary orthonormal basis.
template <std::size_t N>
NormalEigensystem<N> eigensystem_normal(const Matrix<N>& m);

/// Eigenvalues of an arbitrary matrix (Schur based), unordered.
template <std::size_t N>
std::array<cplx, N> eigenvalues(const Matrix<N>& m);

/// exp(m) for a normal matrix, through its spectral decomposition.
template <std::size_t N>
Matrix<N> matrix_exponential_normal(const Matrix<N>& m);

/// Largest distance after optimally matching two eigenvalue multisets.
template <std::size_t N>
double multiset_distance(const std::array<cplx, N>& a, const std::array<cplx, N>& b);

}  // namespace kkbar
