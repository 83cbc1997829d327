#include "qdom/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdom/error.hpp"

namespace qdom::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Keep floats recognizable as floats when they happen to be integral.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(v, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

std::vector<double> real_array(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number(x, what));
  return out;
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

json to_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) {
      rr.push_back(m(i, k).real());
      ir.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
  const std::size_t d = count(field(j, "dim"), "dim");
  if (d == 0) bad("dim must be positive");
  const json& re = field(j, "re");
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (!re.is_array() || re.size() != d) bad("re must have dim rows");
  if (im && (!im->is_array() || im->size() != d)) bad("im must have dim rows");
  std::vector<Complex> entries;
  entries.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto rr = real_array(re[i], "re");
    if (rr.size() != d) bad("re rows must have length dim");
    std::vector<double> ir(d, 0.0);
    if (im) {
      ir = real_array((*im)[i], "im");
      if (ir.size() != d) bad("im rows must have length dim");
    }
    for (std::size_t k = 0; k < d; ++k) entries.emplace_back(rr[k], ir[k]);
  }
  return Matrix::from_entries(d, std::move(entries));
}

json to_json(const DensityMatrix& rho) {
  json j = to_json(rho.matrix());
  j["trace"] = rho.trace();
  return j;
}

DensityMatrix density_from_json(const json& j) { return DensityMatrix(matrix_from_json(j)); }

json to_json(const PureState& psi) {
  json re = json::array();
  json im = json::array();
  for (const auto& z : psi.amplitudes()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

PureState pure_from_json(const json& j) {
  const auto re = real_array(field(j, "re"), "re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = real_array(j.at("im"), "im");
  if (im.size() != re.size()) bad("re and im must have equal length");
  Vector v;
  for (std::size_t k = 0; k < re.size(); ++k) v.emplace_back(re[k], im[k]);
  return PureState(std::move(v));
}

namespace {

std::size_t qubits_of_word_text(const std::string& text) {
  std::size_t used = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      used = std::max<std::size_t>(used, std::stoul(text.substr(i, j - i)) + 1);
      i = j;
    } else {
      ++i;
    }
  }
  return used;
}

GateWord word_from_json(const json& j, std::size_t default_qubits) {
  const json& w = field(j, "word");
  if (!w.is_string()) bad("word must be a string");
  const std::string text = w.get<std::string>();
  std::size_t n = default_qubits ? default_qubits : qubits_of_word_text(text);
  if (j.contains("qubits")) n = count(j.at("qubits"), "qubits");
  return GateWord::parse(text, n);
}

}  // namespace

json to_json(const FormalBall& b) {
  return json{{"center", to_json(b.center)}, {"radius", b.radius}};
}

FormalBall ball_from_json(const json& j) {
  const double r = number(field(j, "radius"), "radius");
  if (j.contains("center")) return FormalBall(pure_from_json(j.at("center")), r);
  return FormalBall(word_from_json(j, 0).state(), r);
}

json to_json(const SimpleValuation& v) {
  json atoms = json::array();
  for (const auto& a : v.atoms()) {
    json atom;
    if (a.word) {
      atom["word"] = a.word->to_string();
    } else {
      atom["center"] = to_json(a.ball.center);
    }
    atom["radius"] = a.ball.radius;
    atom["weight"] = a.weight;
    atoms.push_back(std::move(atom));
  }
  json out{{"atoms", std::move(atoms)}};
  if (v.dim()) out["qubits"] = v.atoms().front().ball.center.qubits();
  return out;
}

SimpleValuation valuation_from_json(const json& j) {
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) bad("atoms must be an array");
  std::size_t qubits = j.contains("qubits") ? count(j.at("qubits"), "qubits") : 0;
  if (!qubits) {
    qubits = 1;
    for (const auto& a : atoms) {
      if (a.contains("word") && a.at("word").is_string()) {
        qubits = std::max(qubits, qubits_of_word_text(a.at("word").get<std::string>()));
      }
    }
  }
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    const double r = number(field(a, "radius"), "radius");
    const double w = number(field(a, "weight"), "weight");
    if (a.contains("center")) {
      out.push_back(Atom{FormalBall(pure_from_json(a.at("center")), r), w, std::nullopt});
    } else {
      GateWord word = word_from_json(a, qubits);
      FormalBall ball(word.state(), r);
      out.push_back(Atom{std::move(ball), w, std::move(word)});
    }
  }
  return SimpleValuation(std::move(out));
}

json to_json(const ClassicalState& x) {
  json a = json::array();
  for (double p : x.probs()) a.push_back(p);
  return a;
}

ClassicalState classical_from_json(const json& j) {
  return ClassicalState(real_array(j, "classical state"));
}

json to_json(const RunReport& r) {
  json iters = json::object();
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    iters["loop" + std::to_string(k)] = r.iterations[k];
  }
  return json{{"final", to_json(r.final)},
              {"residual", r.residual},
              {"iterations", std::move(iters)},
              {"converged", r.converged}};
}

json to_json(const FinitePoset& p) {
  return json{{"elements", p.elements}, {"leq", p.leq}};
}

FinitePoset poset_from_json(const json& j) {
  FinitePoset p;
  const json& el = field(j, "elements");
  const json& leq = field(j, "leq");
  if (!el.is_array() || !leq.is_array()) bad("elements and leq must be arrays");
  for (const auto& e : el) p.elements.push_back(e.is_string() ? e.get<std::string>() : e.dump());
  for (const auto& row : leq) {
    if (!row.is_array()) bad("leq rows must be arrays");
    std::vector<bool> r;
    for (const auto& b : row) {
      if (!b.is_boolean()) bad("leq entries must be booleans");
      r.push_back(b.get<bool>());
    }
    p.leq.push_back(std::move(r));
  }
  return p;
}

json load_inline_or_file(const std::string& arg) {
  json j = json::parse(arg, nullptr, false);
  if (!j.is_discarded()) return j;
  std::ifstream in(arg);
  if (!in) bad("'" + arg + "' is neither JSON nor a readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  j = json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) bad("file '" + arg + "' does not contain valid JSON");
  return j;
}

}  // namespace qdom::io
