#include "qdom/classical.hpp"

#include <algorithm>
#include <numeric>

#include "qdom/error.hpp"

namespace qdom::classical {

namespace build {

StmtPtr skip() { return std::make_shared<const Stmt>(Stmt{Skip{}}); }
StmtPtr assign(std::size_t bit, int value) {
  return std::make_shared<const Stmt>(Stmt{Assign{bit, value}});
}
StmtPtr assign_fn(std::size_t bit, std::function<int(std::uint64_t)> f, std::string label) {
  return std::make_shared<const Stmt>(Stmt{AssignFn{bit, std::move(f), std::move(label)}});
}
StmtPtr random(std::size_t bit) { return std::make_shared<const Stmt>(Stmt{Random{bit}}); }
StmtPtr seq(StmtPtr first, StmtPtr second) {
  return std::make_shared<const Stmt>(Stmt{Seq{std::move(first), std::move(second)}});
}
StmtPtr if_(Cond c, StmtPtr then_branch, StmtPtr else_branch) {
  return std::make_shared<const Stmt>(Stmt{If{c, std::move(then_branch), std::move(else_branch)}});
}
StmtPtr while_(Cond c, StmtPtr body) {
  return std::make_shared<const Stmt>(Stmt{While{c, std::move(body)}});
}

}  // namespace build

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Dist = std::vector<double>;

class Runner {
 public:
  Runner(std::size_t bits, const EvalConfig& cfg) : bits_(bits), cfg_(cfg) {}

  Dist run(const Stmt& s, const Dist& mu) {
    return std::visit(
        overloaded{
            [&](const Skip&) { return mu; },
            [&](const Assign& a) { return push(mu, a.bit, [&](std::uint64_t) { return a.value; }); },
            [&](const AssignFn& a) { return push(mu, a.bit, a.f); },
            [&](const Random& r) {
              Dist out(mu.size(), 0.0);
              const std::uint64_t m = mask(r.bit);
              for (std::uint64_t i = 0; i < mu.size(); ++i) {
                out[i & ~m] += 0.5 * mu[i];
                out[i | m] += 0.5 * mu[i];
              }
              return out;
            },
            [&](const Seq& q) { return run(*q.second, run(*q.first, mu)); },
            [&](const If& i) {
              Dist a = run(*i.then_branch, restrict(i.cond, mu));
              const Dist b = run(*i.else_branch, restrict(i.cond.negated(), mu));
              for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
              return a;
            },
            [&](const While& w) { return loop(w, mu); },
        },
        s.node);
  }

  double residual() const { return residual_; }
  bool converged() const { return converged_; }

 private:
  std::uint64_t mask(std::size_t bit) const {
    if (bit >= bits_) throw Error(ErrorCode::InvalidArgument, "bit index " + std::to_string(bit));
    return std::uint64_t{1} << (bits_ - 1 - bit);
  }

  // mu ∘ F^{-1} for F replacing coordinate `bit` by f(state).
  template <class F>
  Dist push(const Dist& mu, std::size_t bit, const F& f) const {
    Dist out(mu.size(), 0.0);
    const std::uint64_t m = mask(bit);
    for (std::uint64_t i = 0; i < mu.size(); ++i) {
      const std::uint64_t j = f(i) ? (i | m) : (i & ~m);
      out[j] += mu[i];
    }
    return out;
  }

  // mu_B(A) = mu(A ∩ B)
  Dist restrict(const Cond& c, const Dist& mu) const {
    Dist out(mu.size(), 0.0);
    const std::uint64_t m = mask(c.qubit);
    for (std::uint64_t i = 0; i < mu.size(); ++i) {
      if (static_cast<int>((i & m) != 0) == c.value) out[i] = mu[i];
    }
    return out;
  }

  static double mass(const Dist& mu) { return std::accumulate(mu.begin(), mu.end(), 0.0); }

  Dist loop(const While& w, const Dist& mu) {
    Dist in = mu;
    Dist out(mu.size(), 0.0);
    std::size_t n = 0;
    while (true) {
      const Dist leaving = restrict(w.cond.negated(), in);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += leaving[k];
      ++n;
      in = run(*w.body, restrict(w.cond, in));
      if (mass(in) < cfg_.tol) break;
      if (n >= cfg_.max_iter) {
        converged_ = false;
        break;
      }
    }
    residual_ += std::max(mass(in), 0.0);
    return out;
  }

  std::size_t bits_;
  EvalConfig cfg_;
  double residual_ = 0.0;
  bool converged_ = true;
};

}  // namespace

ClassicalResult run_classical(const ClassicalProgram& p, std::vector<double> dist,
                              const EvalConfig& cfg) {
  if (p.bits == 0 || p.bits > 20) throw Error(ErrorCode::InvalidArgument, "bits must be in 1..20");
  if (dist.size() != (std::size_t{1} << p.bits)) {
    throw Error(ErrorCode::InvalidArgument, "distribution must have 2^bits entries");
  }
  double total = 0.0;
  for (double x : dist) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative mass");
    total += x;
  }
  if (total > 1.0 + 1e-9) throw Error(ErrorCode::InvalidArgument, "total mass exceeds 1");
  Runner r(p.bits, cfg);
  Dist out = r.run(*p.body, dist);
  return ClassicalResult{std::move(out), r.residual(), r.converged()};
}

qdom::StmtPtr translate_classical(const Stmt& s) {
  namespace q = qdom::build;
  return std::visit(
      overloaded{
          [](const Skip&) { return q::skip(); },
          [](const Assign& a) {
            return q::if_(Cond{a.bit, 1 - a.value}, q::apply(GateKind::X, {a.bit}), q::skip());
          },
          [](const AssignFn& a) -> qdom::StmtPtr {
            throw Error(ErrorCode::Untranslatable,
                        "function assignment '" + a.label + "' has no gate translation");
          },
          [](const Random& r) {
            return q::seq(q::seq(q::measure(r.bit), q::apply(GateKind::H, {r.bit})),
                          q::measure(r.bit));
          },
          [](const Seq& sq) {
            return q::seq(translate_classical(*sq.first), translate_classical(*sq.second));
          },
          [](const If& i) {
            return q::if_(i.cond, translate_classical(*i.then_branch),
                          translate_classical(*i.else_branch));
          },
          [](const While& w) { return q::while_(w.cond, translate_classical(*w.body)); },
      },
      s.node);
}

qdom::Program translate_classical(const ClassicalProgram& p) {
  return qdom::Program{p.bits, translate_classical(*p.body)};
}

}  // namespace qdom::classical
