// qdom command-line front end. Exit codes: 0 success or "ordered",
// 1 negative verdict or non-converged run, 2 any error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdom/ball.hpp"
#include "qdom/error.hpp"
#include "qdom/info.hpp"
#include "qdom/json_io.hpp"
#include "qdom/oracles.hpp"
#include "qdom/qwhile.hpp"
#include "qdom/valuation.hpp"

namespace {

using qdom::io::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double default_tol() {
  if (const char* env = std::getenv("QDOM_TOL")) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (end != env && *end == '\0' && t >= 0.0) return t;
    throw qdom::Error(qdom::ErrorCode::InvalidArgument, std::string("QDOM_TOL is not a tolerance: ") + env);
  }
  return qdom::kDefaultTol;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qdom::Error(qdom::ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int verdict(bool ordered) {
  std::cout << (ordered ? "ordered" : "not ordered") << '\n';
  return ordered ? kOk : kNegative;
}

// "|10⟩", "|10>" or "10"
std::optional<std::pair<std::size_t, std::size_t>> basis_label(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t.front() == '|') t.erase(0, 1);
  for (const std::string close : {"⟩", ">"}) {
    if (t.size() >= close.size() && t.compare(t.size() - close.size(), close.size(), close) == 0) {
      t.erase(t.size() - close.size());
      break;
    }
  }
  if (t.empty() || t.size() > qdom::kMaxQubits || t.find_first_not_of("01") != std::string::npos) {
    return std::nullopt;
  }
  return std::make_pair(t.size(), static_cast<std::size_t>(std::stoul(t, nullptr, 2)));
}

struct RunArgs {
  std::string file;
  std::string input;
  std::optional<double> tol;
  std::size_t max_iter = qdom::EvalConfig{}.max_iter;
  bool json = false;
};

int cmd_run(const RunArgs& a) {
  const qdom::Program prog = qdom::parse(read_file(a.file));
  qdom::DensityMatrix rho = qdom::DensityMatrix::basis(prog.qubits, 0);
  if (!a.input.empty()) {
    if (const auto label = basis_label(a.input)) {
      rho = qdom::DensityMatrix::basis(label->first, label->second);
    } else {
      rho = qdom::io::density_from_json(qdom::io::load_inline_or_file(a.input));
    }
  }
  qdom::EvalConfig cfg;
  cfg.tol = a.tol.value_or(default_tol());
  cfg.max_iter = a.max_iter;
  const qdom::RunReport r = qdom::eval(*prog.body, rho, cfg);
  if (a.json) {
    std::cout << qdom::io::dump(qdom::io::to_json(r), 2) << '\n';
  } else {
    const qdom::Matrix& m = r.final.matrix();
    std::cout << "final (dim " << m.dim() << ", trace " << num(r.final.trace()) << ")\n";
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t k = 0; k < m.dim(); ++k) {
        std::cout << "  " << num(m(i, k).real());
        if (m(i, k).imag() != 0.0) std::cout << (m(i, k).imag() < 0 ? "-" : "+") << num(std::abs(m(i, k).imag())) << "i";
      }
      std::cout << '\n';
    }
    std::cout << "residual  " << num(r.residual) << '\n';
    for (std::size_t k = 0; k < r.iterations.size(); ++k) {
      std::cout << "loop" << k << "     " << r.iterations[k] << " iterations\n";
    }
    std::cout << "converged " << (r.converged ? "yes" : "no") << '\n';
  }
  if (!r.converged) std::cerr << "not converged: residual " << num(r.residual) << '\n';
  return r.converged ? kOk : kNegative;
}

int cmd_order(const std::string& kind, const std::string& lhs, const std::string& rhs,
              std::optional<double> tol_flag) {
  using namespace qdom;
  const json l = io::load_inline_or_file(lhs);
  const json r = io::load_inline_or_file(rhs);
  const double tol = tol_flag.value_or(default_tol());
  if (kind == "bayes") return verdict(bayes_leq(io::classical_from_json(l), io::classical_from_json(r)));
  if (kind == "ball") return verdict(ball_leq(io::ball_from_json(l), io::ball_from_json(r), tol));
  if (kind == "val") return verdict(valuation_leq(io::valuation_from_json(l), io::valuation_from_json(r), tol));
  // spectral
  const QuantumStateOmega a(io::density_from_json(l));
  const QuantumStateOmega b(io::density_from_json(r));
  const SpectralVerdict v = spectral_compare(a, b, tol);
  std::cout << "commutator " << num(v.commutator) << '\n';
  if (!v.lhs_spectrum.empty()) {
    std::cout << "spectra";
    for (std::size_t k = 0; k < v.lhs_spectrum.size(); ++k) {
      std::cout << " (" << num(v.lhs_spectrum[k]) << ", " << num(v.rhs_spectrum[k]) << ")";
    }
    std::cout << '\n';
  }
  return verdict(v.ordered);
}

int cmd_entropy(const std::string& kind, const std::string& arg) {
  const json j = qdom::io::load_inline_or_file(arg);
  const double h = kind == "shannon"
                       ? qdom::shannon_entropy(qdom::io::classical_from_json(j))
                       : qdom::von_neumann_entropy(qdom::QuantumStateOmega(qdom::io::density_from_json(j)));
  std::cout << num(h) << '\n';
  return kOk;
}

struct ApproxArgs {
  std::string target;
  double eps = 0.25;
  std::size_t max_len = 10;
};

int cmd_ball_approx(const ApproxArgs& a) {
  const qdom::PureState target = qdom::io::pure_from_json(qdom::io::load_inline_or_file(a.target));
  const qdom::BasisElement e = qdom::approximate_state(target, a.eps, a.max_len);
  json out{{"word", e.word.to_string()},
           {"qubits", e.word.qubits()},
           {"radius", e.radius},
           {"distance", qdom::state_distance(e.word.state(), target)}};
  std::cout << qdom::io::dump(out, 2) << '\n';
  return kOk;
}

struct OracleArgs {
  std::string suite;
  std::uint64_t seed = qdom::oracle::kDefaultSeed;
  std::string out = ".";
};

int cmd_oracle(const OracleArgs& a) {
  const json result = qdom::oracle::run_suite(a.suite, a.seed);
  std::filesystem::create_directories(a.out);
  std::string name = a.suite;
  if (a.suite != "bayes-grid") name += "_seed" + std::to_string(a.seed);
  const auto path = std::filesystem::path(a.out) / (name + ".json");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qdom::Error(qdom::ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  f << qdom::io::dump(result, 1) << '\n';
  std::cout << path.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum domain toolkit: WHILE programs, information orders, ball and valuation domains"};
  app.require_subcommand(1);

  int status = kOk;
  std::function<int()> action;

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a quantum WHILE program");
  run_cmd->add_option("file", run.file, "Program source")->required();
  run_cmd->add_option("--input", run.input, "Basis label like |10> or a density-matrix JSON (inline or path)");
  run_cmd->add_option("--tol", run.tol, "Loop termination tolerance")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--max-iter", run.max_iter, "Iteration cap per loop execution")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--json", run.json, "Print the run report as JSON");
  run_cmd->callback([&] { action = [&] { return cmd_run(run); }; });

  std::string order_kind, order_lhs, order_rhs;
  std::optional<double> order_tol;
  auto* order_cmd = app.add_subcommand("order", "Decide lhs ⊑ rhs");
  order_cmd->add_option("kind", order_kind, "bayes | spectral | ball | val")
      ->required()
      ->check(CLI::IsMember({"bayes", "spectral", "ball", "val"}));
  order_cmd->add_option("lhs", order_lhs, "Inline JSON or path")->required();
  order_cmd->add_option("rhs", order_rhs, "Inline JSON or path")->required();
  order_cmd->add_option("--tol", order_tol, "Comparison tolerance")->check(CLI::NonNegativeNumber);
  order_cmd->callback([&] { action = [&] { return cmd_order(order_kind, order_lhs, order_rhs, order_tol); }; });

  std::string ent_kind, ent_arg;
  auto* ent_cmd = app.add_subcommand("entropy", "Shannon or von Neumann entropy in nats");
  ent_cmd->add_option("kind", ent_kind, "shannon | vn")->required()->check(CLI::IsMember({"shannon", "vn"}));
  ent_cmd->add_option("state", ent_arg, "Inline JSON or path")->required();
  ent_cmd->callback([&] { action = [&] { return cmd_entropy(ent_kind, ent_arg); }; });

  auto* ball_cmd = app.add_subcommand("ball", "Formal-ball order and gate-word approximation");
  ball_cmd->require_subcommand(1);
  std::string ball_a, ball_b;
  std::optional<double> ball_tol;
  for (const char* name : {"leq", "waybelow"}) {
    auto* sub = ball_cmd->add_subcommand(name, std::string("Decide ") + (name[0] == 'l' ? "a ⊑ b" : "a ≪ b"));
    sub->add_option("a", ball_a, "Ball JSON")->required();
    sub->add_option("b", ball_b, "Ball JSON")->required();
    sub->add_option("--tol", ball_tol, "Comparison tolerance")->check(CLI::NonNegativeNumber);
    const bool leq = name[0] == 'l';
    sub->callback([&, leq] {
      action = [&, leq] {
        const auto a = qdom::io::ball_from_json(qdom::io::load_inline_or_file(ball_a));
        const auto b = qdom::io::ball_from_json(qdom::io::load_inline_or_file(ball_b));
        const double tol = ball_tol.value_or(default_tol());
        return verdict(leq ? qdom::ball_leq(a, b, tol) : qdom::ball_way_below(a, b, tol));
      };
    });
  }
  ApproxArgs approx;
  auto* approx_cmd = ball_cmd->add_subcommand("approx", "Find a gate word approximating a pure state");
  approx_cmd->add_option("target", approx.target, "Pure state JSON {\"re\": [...], \"im\": [...]}")->required();
  approx_cmd->add_option("--eps", approx.eps, "Target radius")->check(CLI::PositiveNumber);
  approx_cmd->add_option("--max-len", approx.max_len, "Word length cap")->check(CLI::Range(0, 14));
  approx_cmd->callback([&] { action = [&] { return cmd_ball_approx(approx); }; });

  auto* val_cmd = app.add_subcommand("val", "Simple valuations on the ball domain");
  val_cmd->require_subcommand(1);
  std::string val_a, val_b;
  std::optional<double> val_tol;
  auto* val_leq = val_cmd->add_subcommand("leq", "Decide v ⊑ w by the transport criterion");
  val_leq->add_option("v", val_a, "Valuation JSON")->required();
  val_leq->add_option("w", val_b, "Valuation JSON")->required();
  val_leq->add_option("--tol", val_tol, "Comparison tolerance")->check(CLI::NonNegativeNumber);
  val_leq->callback([&] {
    action = [&] {
      return verdict(qdom::valuation_leq(qdom::io::valuation_from_json(qdom::io::load_inline_or_file(val_a)),
                                         qdom::io::valuation_from_json(qdom::io::load_inline_or_file(val_b)),
                                         val_tol.value_or(default_tol())));
    };
  });
  auto* val_apply = val_cmd->add_subcommand("apply", "Mass of v on the open set above a ball");
  val_apply->add_option("v", val_a, "Valuation JSON")->required();
  val_apply->add_option("ball", val_b, "Ball JSON")->required();
  val_apply->callback([&] {
    action = [&] {
      const auto v = qdom::io::valuation_from_json(qdom::io::load_inline_or_file(val_a));
      const auto b = qdom::io::ball_from_json(qdom::io::load_inline_or_file(val_b));
      std::cout << num(qdom::valuation_apply(v, qdom::PrincipalOpen{b}, default_tol())) << '\n';
      return kOk;
    };
  });
  auto* val_embed = val_cmd->add_subcommand("embed", "Spectral embedding of a density matrix");
  val_embed->add_option("rho", val_a, "Density matrix JSON")->required();
  val_embed->callback([&] {
    action = [&] {
      const auto v = qdom::embed_density(qdom::io::density_from_json(qdom::io::load_inline_or_file(val_a)));
      std::cout << qdom::io::dump(qdom::io::to_json(v), 2) << '\n';
      return kOk;
    };
  });
  std::size_t chain_levels = 4, chain_depth = 10;
  auto* val_chain = val_cmd->add_subcommand("chain", "Increasing gate-word approximations of a density matrix");
  val_chain->add_option("rho", val_a, "Density matrix JSON")->required();
  val_chain->add_option("--levels", chain_levels, "Number of chain members")->check(CLI::PositiveNumber);
  val_chain->add_option("--depth", chain_depth, "Word length cap")->check(CLI::Range(0, 14));
  val_chain->callback([&] {
    action = [&] {
      const auto chain = qdom::approximation_chain(
          qdom::io::density_from_json(qdom::io::load_inline_or_file(val_a)), chain_levels, chain_depth);
      json out = json::array();
      for (const auto& v : chain) out.push_back(qdom::io::to_json(v));
      std::cout << qdom::io::dump(out, 2) << '\n';
      return kOk;
    };
  });

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run a reference oracle suite and write its JSON output");
  oracle_cmd->add_option("suite", oracle.suite, "fixpoint | bayes-grid | density")->required();
  oracle_cmd->add_option("--seed", oracle.seed, "RNG seed");
  oracle_cmd->add_option("--out", oracle.out, "Output directory");
  oracle_cmd->callback([&] { action = [&] { return cmd_oracle(oracle); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    status = action ? action() : kError;
  } catch (const qdom::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return status;
}
