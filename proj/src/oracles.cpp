#include "qdom/oracles.hpp"

#include <cmath>
#include <numbers>

#include "qdom/ball.hpp"
#include "qdom/error.hpp"
#include "qdom/info.hpp"
#include "qdom/json_io.hpp"

namespace qdom::oracle {

using nlohmann::json;

double Rng::normal() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

PureState haar_state(Rng& rng, std::size_t qubits) {
  Vector v(std::size_t{1} << qubits);
  for (auto& z : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = Complex(re, im);
  }
  return PureState::normalized(std::move(v));
}

FinitePoset random_poset(Rng& rng, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "poset must be nonempty");
  FinitePoset p;
  for (std::size_t i = 0; i < n; ++i) p.elements.push_back("e" + std::to_string(i));
  p.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    p.leq[i][i] = true;
    p.leq[0][i] = true;
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) p.leq[i][j] = rng.coin(0.4);
  }
  // Warshall closure
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (p.leq[k][j]) p.leq[i][j] = true;
      }
    }
  }
  return p;
}

std::vector<std::size_t> random_monotone(Rng& rng, const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> f(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> candidates;
    for (std::size_t y = 0; y < n; ++y) {
      bool above = true;
      for (std::size_t z = 0; z < x && above; ++z) {
        if (p.le(z, x) && !p.le(f[z], y)) above = false;
      }
      if (above) candidates.push_back(y);
    }
    if (candidates.empty()) return {};
    f[x] = candidates[rng.index(candidates.size())];
  }
  return f;
}

json fixpoint_suite(std::uint64_t seed) {
  Rng rng(seed);
  json cases = json::array();
  while (cases.size() < kFixpointCases) {
    const std::size_t n = 1 + rng.index(6);
    const FinitePoset p = random_poset(rng, n);
    const auto f = random_monotone(rng, p);
    if (f.empty()) continue;
    const std::size_t lfp = least_fixed_point_bruteforce(p, f);
    cases.push_back(json{{"poset", io::to_json(p)}, {"f", f}, {"lfp", lfp}});
  }
  return json{{"suite", "fixpoint"}, {"seed", seed}, {"cases", std::move(cases)}};
}

json bayes_grid_suite() {
  std::vector<ClassicalState> pts;
  json points = json::array();
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; i + j <= 10; ++j) {
      const int k = 10 - i - j;
      const std::vector<double> x{i / 10.0, j / 10.0, k / 10.0};
      pts.emplace_back(x);
      points.push_back(x);
    }
  }
  json leq = json::array();
  for (const auto& x : pts) {
    json row = json::array();
    for (const auto& y : pts) row.push_back(bayes_leq(x, y));
    leq.push_back(std::move(row));
  }
  return json{{"suite", "bayes-grid"}, {"step", 0.1}, {"points", std::move(points)}, {"leq", std::move(leq)}};
}

json density_suite(std::uint64_t seed) {
  Rng rng(seed);
  const auto words = enumerate_gate_words(1, kDensityMaxLen);
  json targets = json::array();
  json distances = json::array();
  for (std::size_t t = 0; t < kDensityTargets; ++t) {
    const PureState target = haar_state(rng, 1);
    json row = json::array();
    for (std::size_t len = 1; len <= kDensityMaxLen; ++len) {
      row.push_back(closest_word(target, words, len).distance);
    }
    targets.push_back(io::to_json(target));
    distances.push_back(std::move(row));
  }
  return json{{"suite", "density"},
              {"seed", seed},
              {"max_len", kDensityMaxLen},
              {"targets", std::move(targets)},
              {"distances", std::move(distances)}};
}

std::vector<std::string> suite_names() { return {"fixpoint", "bayes-grid", "density"}; }

json run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "fixpoint") return fixpoint_suite(seed);
  if (name == "bayes-grid") return bayes_grid_suite();
  if (name == "density") return density_suite(seed);
  throw Error(ErrorCode::InvalidArgument, "unknown oracle suite '" + std::string(name) + "'");
}

}  // namespace qdom::oracle
