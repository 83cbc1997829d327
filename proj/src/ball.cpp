#include "qdom/ball.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "qdom/error.hpp"

namespace qdom {

double state_distance(const PureState& phi, const PureState& psi) {
  if (phi.dim() != psi.dim()) throw Error(ErrorCode::DimMismatch, "state dims");
  const Complex overlap = inner(psi.amplitudes(), phi.amplitudes());  // <psi|phi>
  const double mag = std::abs(overlap);
  const Complex c = mag > 0.0 ? overlap / mag : Complex(1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < phi.dim(); ++i) s += std::norm(phi[i] - c * psi[i]);
  return std::sqrt(s);
}

FormalBall::FormalBall(PureState c, double r) : center(std::move(c)), radius(r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "ball radius must be finite and >= 0");
  }
}

bool ball_leq(const FormalBall& a, const FormalBall& b, double tol) {
  return state_distance(a.center, b.center) <= a.radius - b.radius + tol;
}

bool ball_way_below(const FormalBall& a, const FormalBall& b, double tol) {
  return state_distance(a.center, b.center) < a.radius - b.radius - tol;
}

FormalBall embed_pure(const PureState& psi) { return FormalBall(psi, 0.0); }

FormalBall extend_unitary(const Matrix& u, const FormalBall& b) {
  return FormalBall(PureState::normalized(u * b.center.amplitudes()), b.radius);
}

GateWord::GateWord(std::size_t qubits, std::vector<Letter> letters)
    : qubits_(qubits), letters_(std::move(letters)) {
  if (qubits == 0) throw Error(ErrorCode::InvalidArgument, "gate word needs at least one qubit");
  for (const auto& l : letters_) embed_gate(gate(l.gate), l.targets, qubits_);
}

GateWord GateWord::parse(std::string_view text, std::size_t qubits) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorCode::InvalidArgument,
                 "gate word '" + std::string(text) + "' at " + std::to_string(i) + ": " + what);
  };
  skip_ws();
  if (i == text.size()) return GateWord(qubits);
  while (true) {
    skip_ws();
    const std::size_t start = i;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    const Gate* g = nullptr;
    try {
      g = &gate_by_name(text.substr(start, i - start));
    } catch (const Error&) {
      throw fail("unknown gate");
    }
    skip_ws();
    if (i >= text.size() || text[i] != '(') throw fail("expected '('");
    ++i;
    Letter letter{g->kind, {}};
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == 'q') ++i;
      const std::size_t num = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (num == i) throw fail("expected qubit index");
      letter.targets.push_back(std::stoul(std::string(text.substr(num, i - num))));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw fail("expected ',' or ')'");
    }
    letters.push_back(std::move(letter));
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != ',') throw fail("expected ','");
    ++i;
  }
  return GateWord(qubits, std::move(letters));
}

GateWord GateWord::then(const Letter& l) const {
  GateWord w = *this;
  embed_gate(gate(l.gate), l.targets, qubits_);
  w.letters_.push_back(l);
  return w;
}

Matrix GateWord::unitary() const {
  Matrix u = Matrix::identity(std::size_t{1} << qubits_);
  for (const auto& l : letters_) u = embed_gate(gate(l.gate), l.targets, qubits_) * u;
  return u;
}

PureState GateWord::apply(const PureState& psi) const {
  if (psi.dim() != (std::size_t{1} << qubits_)) throw Error(ErrorCode::DimMismatch, "word and state");
  Vector v(psi.amplitudes().begin(), psi.amplitudes().end());
  for (const auto& l : letters_) v = embed_gate(gate(l.gate), l.targets, qubits_) * v;
  return PureState::normalized(std::move(v));
}

PureState GateWord::state() const { return apply(PureState::basis(qubits_, 0)); }

std::string GateWord::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) out += ',';
    out += gate(letters_[k].gate).name();
    out += '(';
    for (std::size_t t = 0; t < letters_[k].targets.size(); ++t) {
      if (t) out += ',';
      out += std::to_string(letters_[k].targets[t]);
    }
    out += ')';
  }
  return out;
}

std::vector<Letter> alphabet(std::size_t qubits) {
  std::vector<Letter> out;
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::P, GateKind::T}) {
    for (std::size_t q = 0; q < qubits; ++q) out.push_back({k, {q}});
  }
  for (std::size_t c = 0; c < qubits; ++c) {
    for (std::size_t t = 0; t < qubits; ++t) {
      if (c != t) out.push_back({GateKind::CNOT, {c, t}});
    }
  }
  return out;
}

namespace {

// Phase-invariant 2-D bucket key: squared overlaps with two fixed generic
// probes. States within kDedupTol of each other land in the same or an
// adjacent cell.
class StateIndex {
 public:
  explicit StateIndex(std::size_t dim) : probe_a_(dim), probe_b_(dim) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = static_cast<double>(i) + 1.0;
      probe_a_[i] = Complex(std::cos(1.7 * x + 0.3), std::sin(2.9 * x + 1.1));
      probe_b_[i] = Complex(std::sin(0.7 * x + 2.3), std::cos(3.7 * x + 0.5));
    }
    normalize(probe_a_);
    normalize(probe_b_);
  }

  // Index of an existing state within kDedupTol, or -1.
  long find(const PureState& s, const std::vector<EnumeratedWord>& pool) const {
    const auto [ka, kb] = key(s);
    for (long da = -1; da <= 1; ++da) {
      for (long db = -1; db <= 1; ++db) {
        const auto it = cells_.find({ka + da, kb + db});
        if (it == cells_.end()) continue;
        for (std::size_t idx : it->second) {
          if (state_distance(pool[idx].state, s) <= kDedupTol) return static_cast<long>(idx);
        }
      }
    }
    return -1;
  }

  void insert(const PureState& s, std::size_t idx) { cells_[key(s)].push_back(idx); }

 private:
  static constexpr double kCell = 1e-4;

  static void normalize(Vector& v) {
    const double n = norm(v);
    for (auto& z : v) z /= n;
  }

  std::pair<long, long> key(const PureState& s) const {
    const double a = std::norm(inner(probe_a_, s.amplitudes()));
    const double b = std::norm(inner(probe_b_, s.amplitudes()));
    return {static_cast<long>(std::floor(a / kCell)), static_cast<long>(std::floor(b / kCell))};
  }

  Vector probe_a_;
  Vector probe_b_;
  std::map<std::pair<long, long>, std::vector<std::size_t>> cells_;
};

}  // namespace

std::vector<EnumeratedWord> enumerate_gate_words(std::size_t qubits, std::size_t max_len) {
  if (qubits == 0 || qubits > kMaxEnumQubits) {
    throw Error(ErrorCode::CapExceeded, "enumeration supports 1.." + std::to_string(kMaxEnumQubits) +
                                            " qubits");
  }
  if (max_len > kMaxEnumLength) {
    throw Error(ErrorCode::CapExceeded, "enumeration depth capped at " + std::to_string(kMaxEnumLength));
  }
  const std::vector<Letter> letters = alphabet(qubits);
  std::vector<Matrix> unitaries;
  for (const auto& l : letters) unitaries.push_back(embed_gate(gate(l.gate), l.targets, qubits));

  std::vector<EnumeratedWord> pool;
  StateIndex index(std::size_t{1} << qubits);
  pool.push_back({GateWord(qubits), PureState::basis(qubits, 0)});
  index.insert(pool.back().state, 0);

  std::size_t frontier_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t frontier_end = pool.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        PureState next = PureState::normalized(unitaries[l] * pool[i].state.amplitudes());
        if (index.find(next, pool) >= 0) continue;
        GateWord w = pool[i].word.then(letters[l]);
        index.insert(next, pool.size());
        pool.push_back({std::move(w), std::move(next)});
      }
    }
    frontier_begin = frontier_end;
    if (frontier_begin == pool.size()) break;
  }
  return pool;
}

Closest closest_word(const PureState& target, std::span<const EnumeratedWord> words,
                     std::size_t max_len) {
  Closest best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].word.length() > max_len) break;
    const double d = state_distance(words[i].state, target);
    if (d < best.distance) best = {i, d};
  }
  if (!std::isfinite(best.distance)) throw Error(ErrorCode::InvalidArgument, "no words to search");
  return best;
}

BasisElement approximate_state(const PureState& target, double eps,
                               std::span<const EnumeratedWord> words, std::size_t max_len) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be > 0");
  const Closest c = closest_word(target, words, max_len);
  if (c.distance > eps / 3.0) throw NotFoundAtDepth(c.distance, max_len);
  return BasisElement{words[c.index].word, eps};
}

BasisElement approximate_state(const PureState& target, double eps, std::size_t max_len) {
  const auto words = enumerate_gate_words(target.qubits(), max_len);
  return approximate_state(target, eps, words, max_len);
}

}  // namespace qdom
