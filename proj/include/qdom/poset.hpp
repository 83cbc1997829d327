#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdom/error.hpp"

namespace qdom {

/// Explicit finite poset: leq[i][j] means elements[i] ⊑ elements[j].
struct FinitePoset {
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> leq;

  std::size_t size() const noexcept { return elements.size(); }
  bool le(std::size_t i, std::size_t j) const { return leq[i][j]; }
};

struct PosetCheck {
  bool valid = true;
  /// "reflexivity", "transitivity", "antisymmetry" or "shape"; empty when valid.
  std::string violated;

  explicit operator bool() const noexcept { return valid; }
};

/// Checks reflexivity, antisymmetry and transitivity over all pairs and
/// triples; reports the first axiom that fails.
PosetCheck validate_poset(const FinitePoset& p);

/// Element of `p` below every other element, if any.
std::optional<std::size_t> bottom_of(const FinitePoset& p);

/// Least upper bound of a subset, if it exists.
std::optional<std::size_t> lub(const FinitePoset& p, const std::vector<std::size_t>& subset);

template <class T>
struct FixpointReport {
  T value;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

template <class T>
class FixpointNoConvergence : public Error {
 public:
  explicit FixpointNoConvergence(FixpointReport<T> report)
      : Error(ErrorCode::NoConvergence,
              "no fixed point after " + std::to_string(report.iterations) + " iterations"),
        report_(std::move(report)) {}

  const FixpointReport<T>& report() const noexcept { return report_; }

 private:
  FixpointReport<T> report_;
};

/// Kleene iteration bottom, f(bottom), f(f(bottom)), ... until the distance
/// between consecutive iterates drops to `tol`. `iterations` is the n with
/// dist(f^n(bottom), f^(n+1)(bottom)) <= tol. Throws
/// FixpointNoConvergence<T> (carrying the last iterate) after max_iter steps.
template <class T, class F, class Dist>
FixpointReport<T> lfp_iterate_metric(F&& f, T bottom, Dist&& dist, double tol,
                                     std::size_t max_iter) {
  FixpointReport<T> report{std::move(bottom), 0, false, 0.0};
  for (std::size_t n = 0; n <= max_iter; ++n) {
    T next = f(report.value);
    report.residual = dist(report.value, next);
    report.iterations = n;
    if (report.residual <= tol) {
      report.converged = true;
      return report;
    }
    report.value = std::move(next);
  }
  throw FixpointNoConvergence<T>(std::move(report));
}

/// Same with an equality predicate; the residual is 0 on convergence and 1
/// otherwise.
template <class T, class F, class Eq>
FixpointReport<T> lfp_iterate(F&& f, T bottom, Eq&& eq, std::size_t max_iter) {
  return lfp_iterate_metric(
      std::forward<F>(f), std::move(bottom),
      [&](const T& a, const T& b) { return eq(a, b) ? 0.0 : 1.0; }, 0.0, max_iter);
}

/// f[x] is the image of element x. Throws InvalidArgument for a wrong-sized
/// table.
bool is_monotone(const FinitePoset& p, const std::vector<std::size_t>& f);

/// Exhaustive scan for the ⊑-least fixed point of a monotone table.
/// Throws NotMonotone, NoFixedPoint.
std::size_t least_fixed_point_bruteforce(const FinitePoset& p, const std::vector<std::size_t>& f);

/// x ≪ y by enumerating every nonempty directed subset A whose lub exists and
/// lies above y, and checking that some a ∈ A is above x. Exponential in
/// |p|; intended for posets of at most ~16 elements.
bool way_below_finite(const FinitePoset& p, std::size_t x, std::size_t y);

}  // namespace qdom
