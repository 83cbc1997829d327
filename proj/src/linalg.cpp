#include "qdom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdom/error.hpp"

namespace qdom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::BadTargets: return "BadTargets";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NoFixedPoint: return "NoFixedPoint";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotFoundAtDepth: return "NotFoundAtDepth";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::Untranslatable: return "Untranslatable";
  }
  return "Unknown";
}

namespace {

void require_finite(std::span<const Complex> xs) {
  for (const auto& z : xs) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
    }
  }
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimMismatch,
                "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : Matrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
    ++r;
  }
  require_finite(data_);
}

Matrix Matrix::from_entries(std::size_t dim, std::vector<Complex> entries) {
  Matrix m(dim);
  if (entries.size() != dim * dim) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(dim * dim) + " entries");
  }
  require_finite(entries);
  m.data_ = std::move(entries);
  return m;
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (!std::isfinite(diag[i])) throw Error(ErrorCode::InvalidArgument, "non-finite diagonal");
    m(i, i) = diag[i];
  }
  return m;
}

Matrix Matrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
  if (v.size() != w.size()) throw Error(ErrorCode::DimMismatch, "outer product of unequal vectors");
  Matrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  }
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const Complex> v) {
  if (v.size() != a.dim()) throw Error(ErrorCode::DimMismatch, "matrix-vector product");
  Vector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  Matrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = aij * b(k, l);
      }
    }
  }
  return c;
}

double max_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

bool is_hermitian(const Matrix& m, double tol) { return max_diff(m, m.adjoint()) <= tol; }

bool is_unitary(const Matrix& m, double tol) {
  return max_diff(m.adjoint() * m, Matrix::identity(m.dim())) <= tol;
}

Vector Spectrum::eigenvector(std::size_t k) const {
  Vector v(eigenvectors.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

Matrix Spectrum::reconstruct() const {
  return eigenvectors * Matrix::diagonal(eigenvalues) * eigenvectors.adjoint();
}

Spectrum hermitian_eig(const Matrix& m, double tol) {
  const double asym = max_diff(m, m.adjoint());
  if (asym > tol) {
    throw Error(ErrorCode::NotHermitian, "||m - m^dagger||_max = " + std::to_string(asym));
  }
  const std::size_t n = m.dim();
  Matrix a = (m + m.adjoint()) * 0.5;
  Matrix v = Matrix::identity(n);

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (const auto& z : a.entries()) scale += std::norm(z);
  scale = std::max(std::sqrt(scale), 1e-300);

  bool converged = false;
  for (int sweep = 0; sweep < kJacobiSweepCap; ++sweep) {
    if (off_diagonal() <= 1e-15 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double babs = std::abs(b);
        if (babs <= 1e-300) continue;
        // Phase the (p,q) block real, then zero it with a real rotation.
        const Complex phase = b / babs;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * babs);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const Complex g00 = c;
        const Complex g01 = s;
        const Complex g10 = -s * std::conj(phase);
        const Complex g11 = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * g00 + akq * g10;
          a(k, q) = akp * g01 + akq * g11;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * g00 + vkq * g10;
          v(k, q) = vkp * g01 + vkq * g11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
          a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged && off_diagonal() > 1e-15 * scale) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi sweep cap " + std::to_string(kJacobiSweepCap) + " exceeded");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  Spectrum out{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

double trace_distance(const Matrix& a, const Matrix& b, double tol) {
  require_same_dim(a, b);
  const Spectrum s = hermitian_eig(a - b, tol);
  double sum = 0.0;
  for (double l : s.eigenvalues) sum += std::abs(l);
  return 0.5 * sum;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimMismatch, "inner product of unequal vectors");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace qdom
