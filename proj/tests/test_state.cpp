#include <doctest.h>

#include <cmath>

#include "qdom/error.hpp"
#include "qdom/state.hpp"
#include "support.hpp"

using namespace qdom;
using qtest::kSqrtHalf;

namespace {

const Matrix kPlus{{0.5, 0.5}, {0.5, 0.5}};
const Matrix kP0{{1, 0}, {0, 0}};
const Matrix kP1{{0, 0}, {0, 1}};
const Matrix kHalf{{0.5, 0}, {0, 0.5}};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("gate table") {
  const Matrix& h = gate(GateKind::H).matrix;
  CHECK(std::abs(h(1, 1) + kSqrtHalf) < 1e-17);
  CHECK(gate(GateKind::X).matrix == (Matrix{{0, 1}, {1, 0}}));
  CHECK(gate(GateKind::P).matrix == (Matrix{{1, 0}, {0, Complex(0, 1)}}));
  const Matrix& t = gate(GateKind::T).matrix;
  CHECK(std::abs(t(1, 1) - Complex(kSqrtHalf, kSqrtHalf)) < 1e-16);
  const Matrix& cnot = gate(GateKind::CNOT).matrix;
  CHECK(cnot(2, 3) == Complex(1));
  CHECK(cnot(3, 2) == Complex(1));
  CHECK(cnot(0, 0) == Complex(1));
  for (GateKind k : kAllGates) CHECK(is_unitary(gate(k).matrix, 1e-12));
  CHECK(gate_by_name("CNOT").arity() == 2);
  CHECK(gate_by_name("T").name() == "T");
  CHECK_THROWS_AS(gate_by_name("Y"), Error);
}

TEST_CASE("density_of examples") {
  CHECK(density_of(PureState::basis(1, 0)).matrix() == kP0);
  const PureState plus(Vector{kSqrtHalf, kSqrtHalf});
  CHECK(max_diff(density_of(plus).matrix(), kPlus) < 1e-15);
  const std::vector<double> d{0, 1, 0, 0};
  CHECK(density_of(PureState::basis(2, 1)).matrix() == Matrix::diagonal(d));
  CHECK(code_of([] { PureState(Vector{1, 1}); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] { PureState(Vector{1, 0, 0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("apply_unitary examples") {
  const std::vector<std::size_t> q0{0};
  const DensityMatrix zero = DensityMatrix::basis(1, 0);
  CHECK(max_diff(apply_unitary(zero, gate(GateKind::H), q0, 1).matrix(), kPlus) < 1e-15);

  const std::vector<std::size_t> q01{0, 1};
  const DensityMatrix r10 = DensityMatrix::basis(2, 2);
  CHECK(max_diff(apply_unitary(r10, gate(GateKind::CNOT), q01, 2).matrix(),
                 DensityMatrix::basis(2, 3).matrix()) < 1e-15);
  // control on q1 leaves |10> alone
  const std::vector<std::size_t> q10{1, 0};
  CHECK(max_diff(apply_unitary(r10, gate(GateKind::CNOT), q10, 2).matrix(), r10.matrix()) < 1e-15);

  qtest::Rng rng(4);
  const DensityMatrix rho = qtest::random_density(rng, 2);
  const DensityMatrix twice =
      apply_unitary(apply_unitary(rho, gate(GateKind::X), q0, 1), gate(GateKind::X), q0, 1);
  CHECK(max_diff(twice.matrix(), rho.matrix()) < 1e-15);
}

TEST_CASE("embed_gate validates targets") {
  const std::vector<std::size_t> one{0};
  const std::vector<std::size_t> same{1, 1};
  const std::vector<std::size_t> out{3};
  CHECK(code_of([&] { embed_gate(gate(GateKind::CNOT), one, 2); }) == ErrorCode::BadTargets);
  CHECK(code_of([&] { embed_gate(gate(GateKind::CNOT), same, 2); }) == ErrorCode::BadTargets);
  CHECK(code_of([&] { embed_gate(gate(GateKind::H), out, 2); }) == ErrorCode::BadTargets);
  // H on qubit 1 of 2 is I ⊗ H
  const std::vector<std::size_t> q1{1};
  CHECK(max_diff(embed_gate(gate(GateKind::H), q1, 2), tensor(Matrix::identity(2), gate(GateKind::H).matrix)) <
        1e-16);
}

TEST_CASE("unitaries preserve the spectrum and trace") {
  qtest::Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const DensityMatrix rho = qtest::random_density(rng, 8, 0.7);
    const GateKind k = kAllGates[rng.index(kAllGates.size())];
    std::vector<std::size_t> targets{rng.index(3)};
    if (k == GateKind::CNOT) targets.push_back((targets[0] + 1 + rng.index(2)) % 3);
    const DensityMatrix out = apply_unitary(rho, gate(k), targets, 3);
    CHECK(std::abs(out.trace() - rho.trace()) < 1e-12);
    const auto a = hermitian_eig(rho.matrix()).eigenvalues;
    const auto b = hermitian_eig(out.matrix()).eigenvalues;
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
  }
}

TEST_CASE("apply_channel examples") {
  qtest::Rng rng(2);
  const DensityMatrix rho = qtest::random_density(rng, 2);
  CHECK(max_diff(apply_channel(rho, KrausChannel({Matrix::identity(2)})).matrix(), rho.matrix()) < 1e-15);
  const DensityMatrix plus(kPlus);
  CHECK(max_diff(apply_channel(plus, KrausChannel({kP0, kP1})).matrix(), kHalf) < 1e-15);
  const DensityMatrix half = apply_channel(DensityMatrix(kHalf), KrausChannel({kP0}));
  CHECK(max_diff(half.matrix(), Matrix{{0.5, 0}, {0, 0}}) < 1e-15);
  CHECK(half.trace() == doctest::Approx(0.5));
  CHECK_THROWS_AS(apply_channel(rho, KrausChannel({Matrix::identity(4)})), Error);
  CHECK_THROWS_AS(KrausChannel({Matrix::identity(2), Matrix::identity(2)}), Error);
  CHECK(KrausChannel({kP0, kP1}).is_complete());
  CHECK_FALSE(KrausChannel({kP0}).is_complete());
}

TEST_CASE("channels are linear and monotone on the PSD cone") {
  qtest::Rng rng(17);
  const KrausChannel meas = qubit_measurement(1, 2);
  const KrausChannel proj({qubit_projector(0, 1, 2)});
  for (int t = 0; t < 30; ++t) {
    const DensityMatrix r = qtest::random_density(rng, 4, 0.4);
    const DensityMatrix s = qtest::random_density(rng, 4, 0.5);
    const double a = rng.uniform();
    const DensityMatrix mix(r.matrix() * Complex(a) + s.matrix() * Complex(1 - a));
    for (const KrausChannel* ch : {&meas, &proj}) {
      const Matrix lhs = apply_channel(mix, *ch).matrix();
      const Matrix rhs = apply_channel(r, *ch).matrix() * Complex(a) + apply_channel(s, *ch).matrix() * Complex(1 - a);
      CHECK(max_diff(lhs, rhs) < 1e-9);
      // r + s dominates r
      const DensityMatrix big(r.matrix() + s.matrix() * Complex(0.5));
      const Matrix diff = apply_channel(big, *ch).matrix() - apply_channel(r, *ch).matrix();
      CHECK(hermitian_eig(diff).eigenvalues.back() >= -1e-8);
    }
  }
}

TEST_CASE("born_probability and post-measurement state") {
  const DensityMatrix zero = DensityMatrix::basis(1, 0);
  CHECK(born_probability(zero, kP0) == 1.0);
  CHECK(born_probability(zero, kP1) == 0.0);
  CHECK(born_probability(DensityMatrix(kPlus), kP0) == doctest::Approx(0.5));

  CHECK(max_diff(post_measurement_state(DensityMatrix(kHalf), kP0).matrix(), kP0) < 1e-15);
  CHECK(max_diff(post_measurement_state(zero, kP0).matrix(), kP0) < 1e-15);
  CHECK(max_diff(post_measurement_state(DensityMatrix(kPlus), kP1).matrix(), kP1) < 1e-15);
  CHECK(code_of([&] { post_measurement_state(zero, kP1); }) == ErrorCode::ZeroProbability);

  qtest::Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = qtest::random_density(rng, 4, rng.uniform());
    double total = 0;
    for (const Matrix& m : computational_projectors(4)) total += born_probability(rho, m);
    CHECK(std::abs(total - rho.trace()) < 1e-9);
  }
}

TEST_CASE("gleason_measure examples") {
  qtest::Rng rng(3);
  const DensityMatrix rho = qtest::random_density(rng, 2, 0.8);
  CHECK(gleason_measure(rho, Matrix::identity(2)) == doctest::Approx(0.8));
  CHECK(gleason_measure(rho, Matrix(2)) == 0.0);
  CHECK(gleason_measure(DensityMatrix(kHalf), kP0) == doctest::Approx(0.5));
  CHECK(code_of([&] { gleason_measure(rho, Matrix{{1, 1}, {0, 0}}); }) == ErrorCode::NotProjection);
}

TEST_CASE("measurement collections are complete") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t q = 0; q < n; ++q) CHECK(qubit_measurement(q, n).is_complete());
    CHECK(KrausChannel(computational_projectors(std::size_t{1} << n)).is_complete());
  }
  // qubit 0 is the most significant bit
  CHECK(qubit_projector(0, 1, 2)(2, 2) == Complex(1));
  CHECK(qubit_projector(0, 1, 2)(1, 1) == Complex(0));
}

TEST_CASE("density matrix validation") {
  CHECK(code_of([] { DensityMatrix(Matrix{{1, 0}, {0, 1}}); }) == ErrorCode::InvalidState);
  CHECK(code_of([] { DensityMatrix(Matrix{{1.2, 0}, {0, -0.2}}); }) == ErrorCode::InvalidState);
  CHECK(code_of([] { DensityMatrix(Matrix{{0.5, 0.5}, {0, 0.5}}); }) == ErrorCode::InvalidState);
  CHECK(DensityMatrix(Matrix{{0.25, 0}, {0, 0.25}}).trace() == doctest::Approx(0.5));
  CHECK(DensityMatrix::zero(4).trace() == 0.0);
  CHECK(DensityMatrix::basis(3, 5).qubits() == 3);
}
