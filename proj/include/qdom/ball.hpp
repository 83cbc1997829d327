#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdom/linalg.hpp"
#include "qdom/state.hpp"

namespace qdom {

/// min over unit phases c of || phi - c psi ||_2, so states differing only
/// by a global phase are at distance 0. Throws DimMismatch.
double state_distance(const PureState& phi, const PureState& psi);

/// Formal closed ball C(center, radius) of pure states.
struct FormalBall {
  PureState center;
  double radius;

  /// Throws InvalidArgument for negative or non-finite radius.
  FormalBall(PureState c, double r);
};

/// C(a) ⊑ C(b) iff d(a.center, b.center) <= a.radius - b.radius (+ tol).
bool ball_leq(const FormalBall& a, const FormalBall& b, double tol = kDefaultTol);
/// Strict version: d < a.radius - b.radius - tol.
bool ball_way_below(const FormalBall& a, const FormalBall& b, double tol = kDefaultTol);

/// The maximal element C(psi, 0).
FormalBall embed_pure(const PureState& psi);
/// C(phi, r) -> C(U phi, r).
FormalBall extend_unitary(const Matrix& u, const FormalBall& b);

struct Letter {
  GateKind gate;
  std::vector<std::size_t> targets;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Finite product of named gates on n qubits, applied left to right:
/// "H(0),T(0)" maps |0> to T H |0>.
class GateWord {
 public:
  /// Throws BadTargets when a letter does not fit on `qubits`.
  GateWord(std::size_t qubits, std::vector<Letter> letters = {});

  /// Comma-separated letters such as "H(0),CNOT(0,1),T(1)"; "" is the empty
  /// word. Throws InvalidArgument on malformed text.
  static GateWord parse(std::string_view text, std::size_t qubits);

  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t length() const noexcept { return letters_.size(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  GateWord then(const Letter& l) const;
  Matrix unitary() const;
  PureState apply(const PureState& psi) const;
  /// The word applied to |0...0>.
  PureState state() const;
  std::string to_string() const;

  friend bool operator==(const GateWord&, const GateWord&) = default;

 private:
  std::size_t qubits_;
  std::vector<Letter> letters_;
};

/// Every single-letter word on n qubits in enumeration order: H, X, P, T on
/// each qubit, then CNOT on every ordered (control, target) pair.
std::vector<Letter> alphabet(std::size_t qubits);

struct BasisElement {
  GateWord word;
  double radius;

  FormalBall ball() const { return FormalBall(word.state(), radius); }
};

struct EnumeratedWord {
  GateWord word;
  PureState state;
};

inline constexpr std::size_t kMaxEnumQubits = 3;
inline constexpr std::size_t kMaxEnumLength = 14;
inline constexpr double kDedupTol = 1e-6;

/// Breadth-first enumeration of gate words applied to |0...0>, keeping the
/// first (shortest) word for each state up to global phase within 1e-6.
/// Results are ordered by word length, then by discovery. Throws CapExceeded
/// beyond 3 qubits or length 14.
std::vector<EnumeratedWord> enumerate_gate_words(std::size_t qubits, std::size_t max_len);

struct Closest {
  std::size_t index;
  double distance;
};

/// Closest enumerated state to `target` among words of length <= max_len.
/// Ties go to the earliest entry.
Closest closest_word(const PureState& target, std::span<const EnumeratedWord> words,
                     std::size_t max_len);

/// A basis element (w, eps) with d(state(w), target) <= eps / 3, which makes
/// the answers for eps, eps/2, eps/4, ... a ⊑-chain. Throws NotFoundAtDepth
/// carrying the best distance reached.
BasisElement approximate_state(const PureState& target, double eps, std::size_t max_len);
BasisElement approximate_state(const PureState& target, double eps,
                               std::span<const EnumeratedWord> words, std::size_t max_len);

}  // namespace qdom
