#include "qdom/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qdom/error.hpp"

namespace qdom {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) { return static_cast<std::size_t>(std::countr_zero(n)); }

const Gate kGates[] = {
    {GateKind::H, Matrix{{0.70710678118654752, 0.70710678118654752},
                         {0.70710678118654752, -0.70710678118654752}}},
    {GateKind::X, Matrix{{0.0, 1.0}, {1.0, 0.0}}},
    {GateKind::P, Matrix{{1.0, 0.0}, {0.0, Complex(0.0, 1.0)}}},
    {GateKind::T,
     Matrix{{1.0, 0.0}, {0.0, Complex(0.70710678118654752, 0.70710678118654752)}}},
    {GateKind::CNOT, Matrix{{1.0, 0.0, 0.0, 0.0},
                            {0.0, 1.0, 0.0, 0.0},
                            {0.0, 0.0, 0.0, 1.0},
                            {0.0, 0.0, 1.0, 0.0}}},
};

}  // namespace

PureState::PureState(Vector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  if (!is_power_of_two(amps_.size())) {
    throw Error(ErrorCode::InvalidArgument, "state length must be a power of two");
  }
  for (const auto& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite amplitude");
    }
  }
  const double n = norm(amps_);
  if (std::abs(n - 1.0) > tol) {
    throw Error(ErrorCode::NotNormalized, "||psi|| = " + std::to_string(n));
  }
}

PureState PureState::basis(std::size_t qubits, std::size_t index) {
  Vector v(std::size_t{1} << qubits);
  if (index >= v.size()) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  v[index] = 1.0;
  return PureState(std::move(v));
}

PureState PureState::normalized(Vector v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw Error(ErrorCode::NotNormalized, "zero vector");
  for (auto& z : v) z /= n;
  return PureState(std::move(v));
}

std::size_t PureState::qubits() const noexcept { return log2_exact(amps_.size()); }

DensityMatrix::DensityMatrix(Matrix m, double tol) : mat_(std::move(m)) {
  if (!is_power_of_two(mat_.dim())) {
    throw Error(ErrorCode::InvalidState, "density matrix dimension must be a power of two");
  }
  if (!is_hermitian(mat_, tol)) throw Error(ErrorCode::InvalidState, "not Hermitian");
  const Spectrum s = hermitian_eig(mat_, tol);
  if (s.eigenvalues.back() < -tol) {
    throw Error(ErrorCode::InvalidState,
                "negative eigenvalue " + std::to_string(s.eigenvalues.back()));
  }
  const double t = trace();
  if (t < -tol || t > 1.0 + tol) {
    throw Error(ErrorCode::InvalidState, "trace " + std::to_string(t) + " outside [0, 1]");
  }
}

DensityMatrix DensityMatrix::trusted(Matrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

DensityMatrix DensityMatrix::zero(std::size_t dim) { return trusted(Matrix(dim)); }

DensityMatrix DensityMatrix::basis(std::size_t qubits, std::size_t index) {
  return density_of(PureState::basis(qubits, index));
}

std::size_t DensityMatrix::qubits() const noexcept { return log2_exact(mat_.dim()); }

KrausChannel::KrausChannel(std::vector<Matrix> operators, double tol) : ops_(std::move(operators)) {
  if (ops_.empty()) throw Error(ErrorCode::InvalidArgument, "channel needs at least one operator");
  Matrix sum(ops_.front().dim());
  for (const auto& m : ops_) {
    if (m.dim() != ops_.front().dim()) throw Error(ErrorCode::DimMismatch, "Kraus operator dims");
    sum += m.adjoint() * m;
  }
  // I - sum M^dagger M must be PSD.
  const Spectrum s = hermitian_eig(Matrix::identity(sum.dim()) - sum, tol);
  if (s.eigenvalues.back() < -tol) {
    throw Error(ErrorCode::InvalidArgument, "sum of M^dagger M exceeds the identity");
  }
}

bool KrausChannel::is_complete(double tol) const {
  Matrix sum(dim());
  for (const auto& m : ops_) sum += m.adjoint() * m;
  return max_diff(sum, Matrix::identity(dim())) <= tol;
}

std::string_view Gate::name() const noexcept {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::P: return "P";
    case GateKind::T: return "T";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

const Gate& gate(GateKind kind) { return kGates[static_cast<int>(kind)]; }

const Gate& gate_by_name(std::string_view name) {
  for (const auto& g : kGates) {
    if (g.name() == name) return g;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gate '" + std::string(name) + "'");
}

Matrix embed_gate(const Gate& g, std::span<const std::size_t> targets, std::size_t qubits) {
  if (targets.size() != g.arity()) {
    throw Error(ErrorCode::BadTargets, std::string(g.name()) + " takes " +
                                           std::to_string(g.arity()) + " target(s)");
  }
  std::size_t target_mask = 0;
  for (std::size_t t : targets) {
    if (t >= qubits) throw Error(ErrorCode::BadTargets, "qubit index " + std::to_string(t));
    const std::size_t bit = std::size_t{1} << (qubits - 1 - t);
    if (target_mask & bit) throw Error(ErrorCode::BadTargets, "repeated target");
    target_mask |= bit;
  }
  auto sub_index = [&](std::size_t i) {
    std::size_t s = 0;
    for (std::size_t t : targets) s = (s << 1) | ((i >> (qubits - 1 - t)) & 1U);
    return s;
  };
  const std::size_t dim = std::size_t{1} << qubits;
  Matrix u(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & ~target_mask) != (j & ~target_mask)) continue;
      u(i, j) = g.matrix(sub_index(i), sub_index(j));
    }
  }
  return u;
}

DensityMatrix density_of(const PureState& psi) {
  return DensityMatrix::trusted(Matrix::outer(psi.amplitudes(), psi.amplitudes()));
}

DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u) {
  return DensityMatrix::trusted(u * rho.matrix() * u.adjoint());
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Gate& g,
                            std::span<const std::size_t> targets, std::size_t qubits) {
  if (rho.dim() != (std::size_t{1} << qubits)) {
    throw Error(ErrorCode::DimMismatch, "state does not have " + std::to_string(qubits) + " qubits");
  }
  return conjugate(rho, embed_gate(g, targets, qubits));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch) {
  if (rho.dim() != ch.dim()) throw Error(ErrorCode::DimMismatch, "channel and state dims");
  Matrix out(rho.dim());
  for (const auto& m : ch.operators()) out += m * rho.matrix() * m.adjoint();
  return DensityMatrix::trusted(std::move(out));
}

double born_probability(const DensityMatrix& rho, const Matrix& m) {
  if (rho.dim() != m.dim()) throw Error(ErrorCode::DimMismatch, "measurement operator dims");
  double p = (m.adjoint() * m * rho.matrix()).trace().real();
  if (p < 0.0 && p > -1e-9) p = 0.0;
  if (p > 1.0 && p < 1.0 + 1e-9) p = 1.0;
  return p;
}

DensityMatrix post_measurement_state(const DensityMatrix& rho, const Matrix& m) {
  const double p = born_probability(rho, m);
  if (p <= 1e-12) throw Error(ErrorCode::ZeroProbability, "outcome probability " + std::to_string(p));
  return DensityMatrix::trusted(m * rho.matrix() * m.adjoint() * (1.0 / p));
}

bool is_projection(const Matrix& p, double tol) {
  return is_hermitian(p, tol) && max_diff(p * p, p) <= tol;
}

double gleason_measure(const DensityMatrix& rho, const Matrix& proj, double tol) {
  if (rho.dim() != proj.dim()) throw Error(ErrorCode::DimMismatch, "projection dims");
  if (!is_projection(proj, tol)) throw Error(ErrorCode::NotProjection, "P^2 = P = P^dagger fails");
  const double t = rho.trace();
  return std::clamp((rho.matrix() * proj).trace().real(), 0.0, std::max(t, 0.0));
}

Matrix qubit_projector(std::size_t q, int value, std::size_t qubits) {
  if (q >= qubits) throw Error(ErrorCode::BadTargets, "qubit index " + std::to_string(q));
  const std::size_t dim = std::size_t{1} << qubits;
  Matrix p(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (static_cast<int>((i >> (qubits - 1 - q)) & 1U) == value) p(i, i) = 1.0;
  }
  return p;
}

KrausChannel qubit_measurement(std::size_t q, std::size_t qubits) {
  return KrausChannel({qubit_projector(q, 0, qubits), qubit_projector(q, 1, qubits)});
}

std::vector<Matrix> computational_projectors(std::size_t dim) {
  std::vector<Matrix> out;
  out.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Matrix p(dim);
    p(i, i) = 1.0;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qdom
