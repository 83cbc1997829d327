#include "qdom/info.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "qdom/error.hpp"

namespace qdom {

ClassicalState::ClassicalState(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.size() < 2) throw Error(ErrorCode::InvalidArgument, "classical states need n >= 2");
  double sum = 0.0;
  for (double x : p_) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      throw Error(ErrorCode::InvalidArgument, "probability " + std::to_string(x) + " outside [0,1]");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "probabilities sum to " + std::to_string(sum));
  }
}

ClassicalState ClassicalState::uniform(std::size_t n) {
  return ClassicalState(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ClassicalState bayes_proj(const ClassicalState& x, std::size_t i) {
  if (i >= x.size()) throw Error(ErrorCode::InvalidArgument, "projection index out of range");
  if (x[i] >= 1.0 - kBayesSlack) throw Error(ErrorCode::OutOfDomain, "x_i = 1 is outside Dom(p_i)");
  if (x.size() == 2) throw Error(ErrorCode::InvalidArgument, "projection of a 2-point state");
  std::vector<double> out;
  out.reserve(x.size() - 1);
  const double scale = 1.0 / (1.0 - x[i]);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k != i) out.push_back(std::min(1.0, x[k] * scale));
  }
  return ClassicalState(std::move(out));
}

namespace {

// p_{i_k}(...p_{i_1}(x)) only depends on the set of coordinates left, so the
// recursion is memoized on that set as a bitmask.
class BayesRecursion {
 public:
  BayesRecursion(std::span<const double> x, std::span<const double> y)
      : x_(x), y_(y), memo_(std::size_t{1} << x.size(), -1) {}

  bool leq(std::uint32_t mask) {
    int8_t& slot = memo_[mask];
    if (slot >= 0) return slot == 1;
    const bool r = compute(mask);
    slot = r ? 1 : 0;
    return r;
  }

 private:
  static double mass(std::span<const double> v, std::uint32_t mask) {
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (mask & (1U << k)) s += v[k];
    return s;
  }

  bool compute(std::uint32_t mask) {
    const double sx = mass(x_, mask);
    const double sy = mass(y_, mask);
    if (std::popcount(mask) == 2) {
      const std::size_t first = static_cast<std::size_t>(std::countr_zero(mask));
      const double x1 = x_[first] / sx;
      const double y1 = y_[first] / sy;
      return (y1 <= x1 + kBayesSlack && x1 <= 0.5 + kBayesSlack) ||
             (0.5 <= x1 + kBayesSlack && x1 <= y1 + kBayesSlack);
    }
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const std::uint32_t bit = 1U << i;
      if (!(mask & bit)) continue;
      const bool in_domain = x_[i] / sx < 1.0 - kBayesSlack && y_[i] / sy < 1.0 - kBayesSlack;
      if (in_domain && !leq(mask & ~bit)) return false;
    }
    return true;
  }

  std::span<const double> x_;
  std::span<const double> y_;
  std::vector<int8_t> memo_;
};

}  // namespace

bool bayes_leq(const ClassicalState& x, const ClassicalState& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimMismatch, "classical states of different n");
  if (x.size() > 24) throw Error(ErrorCode::CapExceeded, "Bayesian recursion supports n <= 24");
  BayesRecursion r(x.probs(), y.probs());
  return r.leq(static_cast<std::uint32_t>((std::uint64_t{1} << x.size()) - 1));
}

double shannon_entropy(const ClassicalState& x) {
  double h = 0.0;
  for (double p : x.probs()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

QuantumStateOmega::QuantumStateOmega(DensityMatrix rho) : rho_(std::move(rho)) {
  if (std::abs(rho_.trace() - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "trace " + std::to_string(rho_.trace()));
  }
}

Observable::Observable(std::vector<Matrix> projectors, double tol) : ps_(std::move(projectors)) {
  if (ps_.empty()) throw Error(ErrorCode::InvalidArgument, "observable needs projectors");
  const std::size_t n = ps_.front().dim();
  if (ps_.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "non-degenerate observable needs " + std::to_string(n) +
                                                " projectors");
  }
  Matrix sum(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix& p = ps_[i];
    if (p.dim() != n) throw Error(ErrorCode::DimMismatch, "projector dims");
    if (!is_projection(p, tol)) throw Error(ErrorCode::InvalidArgument, "not a projection");
    if (std::abs(p.trace().real() - 1.0) > tol) throw Error(ErrorCode::InvalidArgument, "not rank 1");
    for (std::size_t j = 0; j < i; ++j) {
      if ((p * ps_[j]).max_abs() > tol) {
        throw Error(ErrorCode::InvalidArgument, "projectors not orthogonal");
      }
    }
    sum += p;
  }
  if (max_diff(sum, Matrix::identity(n)) > tol) {
    throw Error(ErrorCode::InvalidArgument, "projectors do not sum to I");
  }
}

Observable Observable::computational(std::size_t dim) {
  return Observable(computational_projectors(dim));
}

Observable Observable::from_basis(const Matrix& u) {
  std::vector<Matrix> ps;
  Vector col(u.dim());
  for (std::size_t k = 0; k < u.dim(); ++k) {
    for (std::size_t i = 0; i < u.dim(); ++i) col[i] = u(i, k);
    ps.push_back(Matrix::outer(col, col));
  }
  return Observable(std::move(ps));
}

namespace {

std::vector<double> clipped_probs(std::vector<double> v) {
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return v;
}

}  // namespace

ClassicalState spec_of(const QuantumStateOmega& rho, const Observable& o) {
  if (rho.dim() != o.dim()) throw Error(ErrorCode::DimMismatch, "observable and state dims");
  std::vector<double> out;
  for (const auto& p : o.projectors()) out.push_back((p * rho.matrix()).trace().real());
  return ClassicalState(clipped_probs(std::move(out)));
}

Matrix common_eigenbasis(const Matrix& a, const Matrix& b, double tol) {
  if ((a * b - b * a).max_abs() > tol) {
    throw Error(ErrorCode::InvalidArgument, "matrices do not commute");
  }
  constexpr double kOffDiagonal = 1e-8;
  std::mt19937_64 rng(0x5eedULL);
  for (int attempt = 0; attempt < 32; ++attempt) {
    const double c = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0;
    const Spectrum s = hermitian_eig(a + b * c, tol);
    const Matrix& v = s.eigenvectors;
    const Matrix da = v.adjoint() * a * v;
    const Matrix db = v.adjoint() * b * v;
    double off = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i)
      for (std::size_t j = 0; j < v.dim(); ++j)
        if (i != j) off = std::max({off, std::abs(da(i, j)), std::abs(db(i, j))});
    if (off <= kOffDiagonal) return v;
  }
  throw Error(ErrorCode::NoConvergence, "no separating combination for simultaneous diagonalization");
}

SpectralVerdict spectral_compare(const QuantumStateOmega& rho, const QuantumStateOmega& sigma,
                                 double tol) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimMismatch, "state dims");
  SpectralVerdict out;
  const Matrix& a = rho.matrix();
  const Matrix& b = sigma.matrix();
  out.commutator = (a * b - b * a).max_abs();
  if (out.commutator > tol) return out;
  const Matrix v = common_eigenbasis(a, b, tol);
  const Matrix da = v.adjoint() * a * v;
  const Matrix db = v.adjoint() * b * v;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out.lhs_spectrum.push_back(da(i, i).real());
    out.rhs_spectrum.push_back(db(i, i).real());
  }
  out.lhs_spectrum = clipped_probs(std::move(out.lhs_spectrum));
  out.rhs_spectrum = clipped_probs(std::move(out.rhs_spectrum));
  out.ordered = bayes_leq(ClassicalState(out.lhs_spectrum), ClassicalState(out.rhs_spectrum));
  return out;
}

bool spectral_leq(const QuantumStateOmega& rho, const QuantumStateOmega& sigma, double tol) {
  return spectral_compare(rho, sigma, tol).ordered;
}

double von_neumann_entropy(const QuantumStateOmega& rho) {
  const Spectrum s = hermitian_eig(rho.matrix());
  double h = 0.0;
  for (double l : s.eigenvalues) {
    if (l > 0.0) h -= l * std::log(l);
  }
  return h;
}

std::vector<ClassicalState> content_neighborhood(const ClassicalState& x, double eps,
                                                 std::span<const ClassicalState> samples) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be > 0");
  const double hx = shannon_entropy(x);
  std::vector<ClassicalState> out;
  for (const auto& y : samples) {
    if (bayes_leq(y, x) && std::abs(hx - shannon_entropy(y)) < eps) out.push_back(y);
  }
  return out;
}

}  // namespace qdom
