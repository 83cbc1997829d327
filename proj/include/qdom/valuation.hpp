#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qdom/ball.hpp"
#include "qdom/state.hpp"

namespace qdom {

struct Atom {
  FormalBall ball;
  double weight;
  /// Set when the center was produced by a gate word.
  std::optional<GateWord> word;
};

/// Finite sum of weighted point valuations on the ball domain.
class SimpleValuation {
 public:
  SimpleValuation() = default;
  /// Weights must be > 0 and sum to at most 1 + 1e-9; all balls must share a
  /// dimension. Throws InvalidArgument, DimMismatch.
  explicit SimpleValuation(std::vector<Atom> atoms);

  static SimpleValuation point(FormalBall b, double weight = 1.0);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double total_mass() const;
  /// 0 for the empty valuation.
  std::size_t dim() const noexcept;

 private:
  std::vector<Atom> atoms_;
};

/// The Scott-open ↟base = { x | base ≪ x }.
struct PrincipalOpen {
  FormalBall base;
};

/// Mass of the atoms lying in ↟base.
double valuation_apply(const SimpleValuation& v, const PrincipalOpen& o, double tol = kDefaultTol);

inline constexpr double kFlowScale = 1e12;
inline constexpr double kFlowMargin = 1e-9;

/// Transport plan t[i][j] moving v's atom i onto w's atom j along ball_leq
/// edges, with row sums equal to v's weights and column sums within w's
/// weights; nullopt when no such plan exists. Decided by max-flow on weights
/// scaled by kFlowScale, accepting a shortfall of kFlowMargin.
std::optional<std::vector<std::vector<double>>> transport_plan(const SimpleValuation& v,
                                                               const SimpleValuation& w,
                                                               double tol = kDefaultTol);

/// v ⊑ w in the probabilistic power domain, decided by the splitting
/// (transport) criterion above.
bool valuation_leq(const SimpleValuation& v, const SimpleValuation& w, double tol = kDefaultTol);

/// rho = sum p_i |psi_i><psi_i|  ->  sum p_i δ_(psi_i, 0). Eigenvalues below
/// 1e-12 are dropped. Throws NotNormalized unless trace(rho) = 1 within 1e-9.
SimpleValuation embed_density(const DensityMatrix& rho);

/// v_1 ⊑ v_2 ⊑ ... where level k approximates every eigenvector of rho by a
/// gate word at radius 2^-k. Throws NotFoundAtDepth.
std::vector<SimpleValuation> approximation_chain(const DensityMatrix& rho, std::size_t levels,
                                                 std::size_t word_depth);

}  // namespace qdom
