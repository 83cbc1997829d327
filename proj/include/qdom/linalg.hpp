#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qdom {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

inline constexpr double kDefaultTol = 1e-9;

/// Dense square complex matrix, row-major.
class Matrix {
 public:
  /// Zero matrix of the given dimension (dim >= 1).
  explicit Matrix(std::size_t dim);

  /// Rows must all have length rows.size(); entries must be finite.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix from_entries(std::size_t dim, std::vector<Complex> entries);
  static Matrix identity(std::size_t dim);
  static Matrix diagonal(std::span<const double> diag);
  /// |v><w|
  static Matrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  Matrix adjoint() const;
  Complex trace() const;
  /// max_{ij} |m_ij|
  double max_abs() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, std::span<const Complex> v);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Kronecker product with a's index as the major index.
Matrix tensor(const Matrix& a, const Matrix& b);

/// ||a - b||_max; throws DimMismatch.
double max_diff(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kDefaultTol);
bool is_unitary(const Matrix& m, double tol = kDefaultTol);

/// A V diag(lambda) V^dagger factorization with eigenvalues in descending
/// order and the eigenvectors as the columns of V.
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  Vector eigenvector(std::size_t k) const;
  Matrix reconstruct() const;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Throws NotHermitian when ||m - m^dagger||_max > tol and NoConvergence when
/// the off-diagonal mass has not vanished after kJacobiSweepCap sweeps.
Spectrum hermitian_eig(const Matrix& m, double tol = kDefaultTol);

inline constexpr int kJacobiSweepCap = 100;

/// (1/2) sum |lambda_i(a - b)|. Throws DimMismatch, NotHermitian.
double trace_distance(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

}  // namespace qdom
