#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdom/poset.hpp"
#include "qdom/state.hpp"

namespace qdom::oracle {

/// mt19937_64 with hand-rolled real and normal draws, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  bool coin(double p = 0.5) { return uniform() < p; }
  /// Box-Muller, one draw per call.
  double normal();

 private:
  std::mt19937_64 gen_;
};

/// Haar-random pure state on `qubits` qubits.
PureState haar_state(Rng& rng, std::size_t qubits);

/// Random poset on n elements with element 0 as bottom; i ⊑ j only if i <= j
/// as indices, so index order is a linear extension.
FinitePoset random_poset(Rng& rng, std::size_t n);

/// Random monotone endofunction as an image table, built in linear-extension
/// order; empty when a draw hits a set with no upper bound.
std::vector<std::size_t> random_monotone(Rng& rng, const FinitePoset& p);

inline constexpr std::uint64_t kDefaultSeed = 7;
inline constexpr std::size_t kFixpointCases = 600;
inline constexpr std::size_t kDensityTargets = 10;
inline constexpr std::size_t kDensityMaxLen = 12;

/// {"suite", "seed", "cases": [{"poset": {...}, "f": [...], "lfp": k}, ...]}
nlohmann::json fixpoint_suite(std::uint64_t seed);
/// {"suite", "step", "points": [[x1,x2,x3], ...], "leq": [[bool]]}
nlohmann::json bayes_grid_suite();
/// {"suite", "seed", "max_len", "targets": [...], "distances": [[d_1..d_12], ...]}
nlohmann::json density_suite(std::uint64_t seed);

std::vector<std::string> suite_names();
/// Throws InvalidArgument for an unknown suite name.
nlohmann::json run_suite(std::string_view name, std::uint64_t seed);

}  // namespace qdom::oracle
