#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdom/linalg.hpp"
#include "qdom/state.hpp"

namespace qdom {

/// A point of the simplex Δⁿ (n >= 2).
class ClassicalState {
 public:
  /// Throws InvalidArgument unless n >= 2, every entry is in [0, 1] and the
  /// entries sum to 1 within 1e-9.
  explicit ClassicalState(std::vector<double> probs);

  static ClassicalState uniform(std::size_t n);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> probs() const noexcept { return p_; }

 private:
  std::vector<double> p_;
};

inline constexpr double kBayesSlack = 1e-12;

/// Drops coordinate i and renormalizes. Throws OutOfDomain when x_i = 1 and
/// InvalidArgument for a 2-point state (the result would leave Δ²).
ClassicalState bayes_proj(const ClassicalState& x, std::size_t i);

/// Bayesian order: the two-sided half-interval test on Δ², and on Δⁿ the
/// conjunction over every i with x, y ∈ Dom(p_i) of p_i(x) ⊑ p_i(y).
/// Throws DimMismatch.
bool bayes_leq(const ClassicalState& x, const ClassicalState& y);

/// -sum x_i ln x_i, in nats.
double shannon_entropy(const ClassicalState& x);

/// Density matrix of unit trace.
class QuantumStateOmega {
 public:
  /// Throws NotNormalized unless trace = 1 within 1e-9.
  explicit QuantumStateOmega(DensityMatrix rho);

  const DensityMatrix& rho() const noexcept { return rho_; }
  const Matrix& matrix() const noexcept { return rho_.matrix(); }
  std::size_t dim() const noexcept { return rho_.dim(); }

 private:
  DensityMatrix rho_;
};

/// Non-degenerate observable given by its rank-1 spectral projectors.
class Observable {
 public:
  /// Throws InvalidArgument unless there are dim rank-1, mutually orthogonal
  /// projectors summing to I.
  explicit Observable(std::vector<Matrix> projectors, double tol = kDefaultTol);

  static Observable computational(std::size_t dim);
  /// Projectors onto the columns of a unitary.
  static Observable from_basis(const Matrix& unitary);

  const std::vector<Matrix>& projectors() const noexcept { return ps_; }
  std::size_t dim() const noexcept { return ps_.front().dim(); }

 private:
  std::vector<Matrix> ps_;
};

/// (Tr(P_1 rho), ..., Tr(P_n rho)). Throws DimMismatch.
ClassicalState spec_of(const QuantumStateOmega& rho, const Observable& o);

struct SpectralVerdict {
  bool ordered = false;
  double commutator = 0.0;
  /// Paired spectra in a common eigenbasis; empty when the pair does not
  /// commute.
  std::vector<double> lhs_spectrum;
  std::vector<double> rhs_spectrum;
};

/// Spectral order with its evidence: false when ||[rho, sigma]||_max > tol,
/// otherwise the Bayesian verdict on the spectra in a common eigenbasis.
SpectralVerdict spectral_compare(const QuantumStateOmega& rho, const QuantumStateOmega& sigma,
                                 double tol = kDefaultTol);
bool spectral_leq(const QuantumStateOmega& rho, const QuantumStateOmega& sigma,
                  double tol = kDefaultTol);

/// Unitary whose columns diagonalize both members of a commuting Hermitian
/// pair. Throws InvalidArgument when the pair does not commute within tol
/// and NoConvergence when no separating combination is found.
Matrix common_eigenbasis(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

/// -Tr(rho ln rho), in nats.
double von_neumann_entropy(const QuantumStateOmega& rho);

/// { y in samples | y ⊑ x and |H(x) - H(y)| < eps } with Shannon entropy H.
std::vector<ClassicalState> content_neighborhood(const ClassicalState& x, double eps,
                                                 std::span<const ClassicalState> samples);

}  // namespace qdom
