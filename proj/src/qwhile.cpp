#include "qdom/qwhile.hpp"

#include <algorithm>
#include <unordered_map>

#include "qdom/error.hpp"

namespace qdom {

namespace build {

StmtPtr skip() { return std::make_shared<const Stmt>(Stmt{Skip{}}); }
StmtPtr apply(GateKind g, std::vector<std::size_t> targets) {
  return std::make_shared<const Stmt>(Stmt{Apply{g, std::move(targets)}});
}
StmtPtr measure(std::size_t q) { return std::make_shared<const Stmt>(Stmt{Measure{q}}); }
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

std::string cond_source(const Cond& c) {
  return "q" + std::to_string(c.qubit) + "==" + std::to_string(c.value);
}

}  // namespace

std::string to_source(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const Skip&) -> std::string { return "skip"; },
          [](const Apply& a) {
            std::string out = "apply " + std::string(gate(a.gate).name()) + "(";
            for (std::size_t k = 0; k < a.targets.size(); ++k) {
              if (k) out += ",";
              out += "q" + std::to_string(a.targets[k]);
            }
            return out + ")";
          },
          [](const Measure& m) { return "meas(q" + std::to_string(m.qubit) + ")"; },
          [](const Seq& q) { return to_source(*q.first) + "; " + to_source(*q.second); },
          [](const If& i) {
            return "if " + cond_source(i.cond) + " then { " + to_source(*i.then_branch) +
                   " } else { " + to_source(*i.else_branch) + " }";
          },
          [](const While& w) { return "while " + cond_source(w.cond) + " do { " + to_source(*w.body) + " }"; },
      },
      s.node);
}

std::size_t qubits_used(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const Skip&) -> std::size_t { return 0; },
          [](const Apply& a) {
            std::size_t m = 0;
            for (std::size_t t : a.targets) m = std::max(m, t + 1);
            return m;
          },
          [](const Measure& m) { return m.qubit + 1; },
          [](const Seq& q) { return std::max(qubits_used(*q.first), qubits_used(*q.second)); },
          [](const If& i) {
            return std::max({i.cond.qubit + 1, qubits_used(*i.then_branch), qubits_used(*i.else_branch)});
          },
          [](const While& w) { return std::max(w.cond.qubit + 1, qubits_used(*w.body)); },
      },
      s.node);
}

std::size_t loop_count(const Stmt& s) {
  return std::visit(overloaded{
                        [](const Skip&) -> std::size_t { return 0; },
                        [](const Apply&) -> std::size_t { return 0; },
                        [](const Measure&) -> std::size_t { return 0; },
                        [](const Seq& q) { return loop_count(*q.first) + loop_count(*q.second); },
                        [](const If& i) { return loop_count(*i.then_branch) + loop_count(*i.else_branch); },
                        [](const While& w) { return 1 + loop_count(*w.body); },
                    },
                    s.node);
}

DensityMatrix denote_cond(const Cond& c, const DensityMatrix& rho) {
  const Matrix p = qubit_projector(c.qubit, c.value, rho.qubits());
  return DensityMatrix::trusted(p * rho.matrix() * p);
}

namespace {

class Evaluator {
 public:
  Evaluator(const Stmt& root, std::size_t qubits, const EvalConfig& cfg)
      : qubits_(qubits), cfg_(cfg) {
    number_loops(root);
    iterations_.assign(loop_ids_.size(), 0);
  }

  // Returns the output state; unterminated mass is added to residual_.
  Matrix run(const Stmt& s, const Matrix& rho) {
    return std::visit(overloaded{
                          [&](const Skip&) { return rho; },
                          [&](const Apply& a) {
                            const Matrix u = embed_gate(gate(a.gate), a.targets, qubits_);
                            return Matrix(u * rho * u.adjoint());
                          },
                          [&](const Measure& m) {
                            const Matrix p0 = qubit_projector(m.qubit, 0, qubits_);
                            const Matrix p1 = qubit_projector(m.qubit, 1, qubits_);
                            return Matrix(p0 * rho * p0 + p1 * rho * p1);
                          },
                          [&](const Seq& q) { return run(*q.second, run(*q.first, rho)); },
                          [&](const If& i) {
                            return Matrix(run(*i.then_branch, project(i.cond, rho)) +
                                          run(*i.else_branch, project(i.cond.negated(), rho)));
                          },
                          [&](const While& w) { return loop(s, w, rho); },
                      },
                      s.node);
  }

  double residual() const { return residual_; }
  bool converged() const { return converged_; }
  std::vector<std::size_t> iterations() const { return iterations_; }

 private:
  void number_loops(const Stmt& s) {
    std::visit(overloaded{
                   [](const Skip&) {},
                   [](const Apply&) {},
                   [](const Measure&) {},
                   [&](const Seq& q) {
                     number_loops(*q.first);
                     number_loops(*q.second);
                   },
                   [&](const If& i) {
                     number_loops(*i.then_branch);
                     number_loops(*i.else_branch);
                   },
                   [&](const While& w) {
                     const std::size_t id = loop_ids_.size();
                     loop_ids_.emplace(&s, id);
                     number_loops(*w.body);
                   },
               },
               s.node);
  }

  Matrix project(const Cond& c, const Matrix& rho) const {
    const Matrix p = qubit_projector(c.qubit, c.value, qubits_);
    return p * rho * p;
  }

  // in_n = (S ∘ e_B)^n rho is the mass still inside the loop after n
  // τ-steps; W_n accumulates e_{~B}(in_k) for k < n.
  Matrix loop(const Stmt& node, const While& w, const Matrix& rho) {
    const std::size_t id = loop_ids_.at(&node);
    const Cond exit = w.cond.negated();
    Matrix in = rho;
    Matrix out(rho.dim());
    std::size_t n = 0;
    bool done = false;
    while (!done) {
      out += project(exit, in);
      ++n;
      in = run(*w.body, project(w.cond, in));
      if (in.trace().real() < cfg_.tol) {
        done = true;
      } else if (n >= cfg_.max_iter) {
        converged_ = false;
        done = true;
      }
    }
    iterations_[id] += n;
    residual_ += std::max(in.trace().real(), 0.0);
    return out;
  }

  std::size_t qubits_;
  EvalConfig cfg_;
  std::unordered_map<const Stmt*, std::size_t> loop_ids_;
  std::vector<std::size_t> iterations_;
  double residual_ = 0.0;
  bool converged_ = true;
};

}  // namespace

RunReport eval(const Stmt& s, const DensityMatrix& rho, const EvalConfig& cfg) {
  const std::size_t n = rho.qubits();
  if (qubits_used(s) > n) {
    throw Error(ErrorCode::DimMismatch, "program uses " + std::to_string(qubits_used(s)) +
                                            " qubits, state has " + std::to_string(n));
  }
  Evaluator ev(s, n, cfg);
  Matrix final = ev.run(s, rho.matrix());
  return RunReport{DensityMatrix::trusted(std::move(final)), ev.residual(), ev.iterations(),
                   ev.converged()};
}

double fixpoint_check(const RunReport& report, const Stmt& loop, const DensityMatrix& rho,
                      const EvalConfig& cfg) {
  const auto* w = std::get_if<While>(&loop.node);
  if (!w) throw Error(ErrorCode::InvalidArgument, "fixpoint_check needs a while statement");
  if (!report.converged) throw NotConverged(report.residual);
  const DensityMatrix inside = denote_cond(w->cond, rho);
  const DensityMatrix after_body = eval(*w->body, inside, cfg).final;
  const DensityMatrix unrolled = eval(loop, after_body, cfg).final;
  const Matrix rhs = denote_cond(w->cond.negated(), rho).matrix() + unrolled.matrix();
  return trace_distance(report.final.matrix(), rhs);
}

}  // namespace qdom
