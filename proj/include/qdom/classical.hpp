#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qdom/qwhile.hpp"

/// Probabilistic WHILE over n bits with measure-transformer semantics on the
/// 2^n-point space. Bit k of a state index is bit (n-1-k), matching qubit k
/// of a density-matrix diagonal.
namespace qdom::classical {

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Skip {};
/// b := value
struct Assign {
  std::size_t bit;
  int value;
};
/// b := f(b_0, ..., b_{n-1}), with the state passed as its index.
struct AssignFn {
  std::size_t bit;
  std::function<int(std::uint64_t)> f;
  std::string label;
};
/// b := random, fair coin.
struct Random {
  std::size_t bit;
};
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
  std::variant<Skip, Assign, AssignFn, Random, Seq, If, While> node;
};

namespace build {
StmtPtr skip();
StmtPtr assign(std::size_t bit, int value);
StmtPtr assign_fn(std::size_t bit, std::function<int(std::uint64_t)> f, std::string label);
StmtPtr random(std::size_t bit);
StmtPtr seq(StmtPtr first, StmtPtr second);
StmtPtr if_(Cond c, StmtPtr then_branch, StmtPtr else_branch);
StmtPtr while_(Cond c, StmtPtr body);
}  // namespace build

struct ClassicalProgram {
  std::size_t bits;
  StmtPtr body;
};

struct ClassicalResult {
  std::vector<double> dist;
  double residual = 0.0;
  bool converged = true;
};

/// Pushes a sub-probability vector of length 2^bits through the program.
/// Throws InvalidArgument on a wrong-length or over-unit input.
ClassicalResult run_classical(const ClassicalProgram& p, std::vector<double> dist,
                              const EvalConfig& cfg = {});

/// Quantum program with the same diagonal behavior: b := v becomes
/// "if qb==(1-v) then { apply X(qb) } else { skip }" and b := random becomes
/// "meas(qb); apply H(qb); meas(qb)". Throws Untranslatable for AssignFn.
qdom::StmtPtr translate_classical(const Stmt& s);
qdom::Program translate_classical(const ClassicalProgram& p);

}  // namespace qdom::classical
