#include "qdom/valuation.hpp"

#include <cmath>
#include <string>

#include "qdom/error.hpp"
#include "qdom/maxflow.hpp"

namespace qdom {

SimpleValuation::SimpleValuation(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  double sum = 0.0;
  for (const auto& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw Error(ErrorCode::InvalidArgument, "atom weights must be positive");
    }
    if (a.ball.center.dim() != atoms_.front().ball.center.dim()) {
      throw Error(ErrorCode::DimMismatch, "atoms of different dimensions");
    }
    sum += a.weight;
  }
  if (sum > 1.0 + 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "total mass " + std::to_string(sum) + " exceeds 1");
  }
}

SimpleValuation SimpleValuation::point(FormalBall b, double weight) {
  return SimpleValuation({Atom{std::move(b), weight, std::nullopt}});
}

double SimpleValuation::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

std::size_t SimpleValuation::dim() const noexcept {
  return atoms_.empty() ? 0 : atoms_.front().ball.center.dim();
}

namespace {

void require_compatible(std::size_t a, std::size_t b) {
  if (a != 0 && b != 0 && a != b) {
    throw Error(ErrorCode::DimMismatch, std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

double valuation_apply(const SimpleValuation& v, const PrincipalOpen& o, double tol) {
  require_compatible(v.dim(), o.base.center.dim());
  double s = 0.0;
  for (const auto& a : v.atoms()) {
    if (ball_way_below(o.base, a.ball, tol)) s += a.weight;
  }
  return s;
}

std::optional<std::vector<std::vector<double>>> transport_plan(const SimpleValuation& v,
                                                               const SimpleValuation& w,
                                                               double tol) {
  require_compatible(v.dim(), w.dim());
  const std::size_t m = v.size();
  const std::size_t n = w.size();
  const std::size_t source = m + n;
  const std::size_t sink = source + 1;
  MaxFlow flow(m + n + 2);

  auto scaled = [](double x) { return static_cast<std::int64_t>(std::llround(x * kFlowScale)); };
  std::int64_t demand = 0;
  for (std::size_t i = 0; i < m; ++i) {
    flow.add_edge(source, i, scaled(v.atoms()[i].weight));
    demand += scaled(v.atoms()[i].weight);
  }
  for (std::size_t j = 0; j < n; ++j) flow.add_edge(m + j, sink, scaled(w.atoms()[j].weight));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::int64_t unbounded = scaled(2.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (ball_leq(v.atoms()[i].ball, w.atoms()[j].ball, tol)) {
        flow.add_edge(i, m + j, unbounded);
        pairs.emplace_back(i, j);
      }
    }
  }
  const std::int64_t routed = flow.solve(source, sink);
  if (static_cast<double>(demand - routed) > kFlowMargin * kFlowScale) return std::nullopt;

  std::vector<std::vector<double>> plan(m, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    plan[pairs[k].first][pairs[k].second] =
        static_cast<double>(flow.flow_on(m + n + k)) / kFlowScale;
  }
  return plan;
}

bool valuation_leq(const SimpleValuation& v, const SimpleValuation& w, double tol) {
  return transport_plan(v, w, tol).has_value();
}

SimpleValuation embed_density(const DensityMatrix& rho) {
  const double t = rho.trace();
  if (std::abs(t - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "trace " + std::to_string(t));
  }
  const Spectrum s = hermitian_eig(rho.matrix());
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    if (s.eigenvalues[k] <= 1e-12) continue;
    atoms.push_back(Atom{embed_pure(PureState::normalized(s.eigenvector(k))), s.eigenvalues[k],
                         std::nullopt});
  }
  return SimpleValuation(std::move(atoms));
}

std::vector<SimpleValuation> approximation_chain(const DensityMatrix& rho, std::size_t levels,
                                                 std::size_t word_depth) {
  if (levels == 0) throw Error(ErrorCode::InvalidArgument, "levels must be >= 1");
  const SimpleValuation target = embed_density(rho);
  const auto words = enumerate_gate_words(rho.qubits(), word_depth);
  std::vector<SimpleValuation> chain;
  double radius = 1.0;
  for (std::size_t k = 1; k <= levels; ++k) {
    radius *= 0.5;
    std::vector<Atom> atoms;
    for (const auto& a : target.atoms()) {
      BasisElement b = approximate_state(a.ball.center, radius, words, word_depth);
      FormalBall ball = b.ball();
      atoms.push_back(Atom{std::move(ball), a.weight, std::move(b.word)});
    }
    chain.emplace_back(std::move(atoms));
  }
  return chain;
}

}  // namespace qdom
