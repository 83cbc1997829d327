#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qdom/linalg.hpp"
#include "qdom/state.hpp"

namespace qdom {

/// Computational-basis test "q<qubit> == value".
struct Cond {
  std::size_t qubit;
  int value;

  Cond negated() const { return Cond{qubit, 1 - value}; }
  friend bool operator==(const Cond&, const Cond&) = default;
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Skip {};
struct Apply {
  GateKind gate;
  std::vector<std::size_t> targets;
};
/// Nonselective computational-basis measurement of one qubit.
struct Measure {
  std::size_t qubit;
};
/// `first` runs before `second`.
struct Seq {
  StmtPtr first;
  StmtPtr second;
};
struct If {
  Cond cond;
  StmtPtr then_branch;
  StmtPtr else_branch;
};
struct While {
  Cond cond;
  StmtPtr body;
};

struct Stmt {
  std::variant<Skip, Apply, Measure, Seq, If, While> node;
};

namespace build {
StmtPtr skip();
StmtPtr apply(GateKind g, std::vector<std::size_t> targets);
StmtPtr measure(std::size_t q);
StmtPtr seq(StmtPtr first, StmtPtr second);
StmtPtr if_(Cond c, StmtPtr then_branch, StmtPtr else_branch);
StmtPtr while_(Cond c, StmtPtr body);
}  // namespace build

struct Program {
  std::size_t qubits;
  StmtPtr body;
};

inline constexpr std::size_t kMaxQubits = 4;

/// Parses
///   program := ["qubits" INT ";"] stmt
///   stmt    := simple {";" simple}
///   simple  := "skip" | "apply" GATE "(" QUBIT {"," QUBIT} ")" | "meas" "(" QUBIT ")"
///            | "if" cond "then" "{" stmt "}" "else" "{" stmt "}"
///            | "while" cond "do" "{" stmt "}"
///   cond    := QUBIT "==" ("0" | "1")
/// with "#" line comments. Without a header the register is sized by the
/// largest qubit used. Throws SyntaxError.
Program parse(std::string_view src);

/// Source text that parses back to an equivalent statement.
std::string to_source(const Stmt& s);

/// 1 + the largest qubit index mentioned, or 0 for none.
std::size_t qubits_used(const Stmt& s);
/// Number of while nodes; loops are numbered in pre-order.
std::size_t loop_count(const Stmt& s);

struct EvalConfig {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
};

struct RunReport {
  DensityMatrix final;
  /// Mass that has not left some loop: trace(input) - trace(final).
  double residual = 0.0;
  /// Per loop (pre-order), the summed τ-step counts over all of its
  /// executions. A loop execution that stops after computing τⁿ(0)
  /// contributes n.
  std::vector<std::size_t> iterations;
  bool converged = true;
};

/// P_B rho P_B.
DensityMatrix denote_cond(const Cond& c, const DensityMatrix& rho);

/// Denotation of `s` applied to rho. Loops run the partial sums
/// W_n = sum_{k<n} e_{~B}((S ∘ e_B)^k rho) until the mass still inside the
/// loop falls below cfg.tol or n reaches cfg.max_iter; non-termination shows
/// up as residual mass with converged = false. Throws DimMismatch when the
/// statement addresses qubits outside rho.
RunReport eval(const Stmt& s, const DensityMatrix& rho, const EvalConfig& cfg = {});

/// Defect of the loop equation W = e_{~B} + W ∘ S ∘ e_B at rho:
/// trace_distance(W(rho), e_{~B}(rho) + W(S(e_B(rho)))). `report` must come
/// from eval(loop, rho, cfg). Throws NotConverged, InvalidArgument when
/// `loop` is not a while statement.
double fixpoint_check(const RunReport& report, const Stmt& loop, const DensityMatrix& rho,
                      const EvalConfig& cfg = {});

}  // namespace qdom
