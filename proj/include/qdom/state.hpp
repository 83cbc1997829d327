#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qdom/linalg.hpp"

namespace qdom {

/// Unit vector in C^(2^n). Qubit 0 is the leftmost tensor factor, so it is
/// the most significant bit of a basis index.
class PureState {
 public:
  /// Throws NotNormalized unless ||amplitudes||_2 = 1 within tol, and
  /// InvalidArgument unless the length is a power of two.
  explicit PureState(Vector amplitudes, double tol = kDefaultTol);

  /// |b_0 b_1 ... b_{n-1}> for the given basis index.
  static PureState basis(std::size_t qubits, std::size_t index);
  /// Rescales a nonzero vector onto the unit sphere.
  static PureState normalized(Vector v);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::size_t qubits() const noexcept;
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

 private:
  Vector amps_;
};

/// Hermitian PSD matrix with 0 <= trace <= 1. Sub-normalized values are
/// legal: while-loop partial sums carry less than unit mass.
class DensityMatrix {
 public:
  /// Validates hermiticity, eigenvalues >= -tol and trace in [0, 1 + tol].
  /// Throws InvalidState otherwise.
  explicit DensityMatrix(Matrix m, double tol = kDefaultTol);

  /// Skips validation. For results of CP maps applied to valid states.
  static DensityMatrix trusted(Matrix m);
  static DensityMatrix zero(std::size_t dim);
  static DensityMatrix basis(std::size_t qubits, std::size_t index);

  const Matrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }
  std::size_t qubits() const noexcept;
  double trace() const { return mat_.trace().real(); }

 private:
  struct Unchecked {};
  DensityMatrix(Matrix m, Unchecked) : mat_(std::move(m)) {}
  Matrix mat_;
};

/// Kraus operators {M_m} of a CP map rho -> sum_m M_m rho M_m^dagger.
class KrausChannel {
 public:
  /// Requires a nonempty list of equal-dimension operators with
  /// sum M^dagger M <= I (PSD deficiency allowed). Throws InvalidArgument.
  explicit KrausChannel(std::vector<Matrix> operators, double tol = kDefaultTol);

  const std::vector<Matrix>& operators() const noexcept { return ops_; }
  std::size_t dim() const noexcept { return ops_.front().dim(); }
  /// sum M^dagger M = I within tol.
  bool is_complete(double tol = kDefaultTol) const;

 private:
  std::vector<Matrix> ops_;
};

enum class GateKind { H, X, P, T, CNOT };

inline constexpr std::array<GateKind, 5> kAllGates = {GateKind::H, GateKind::X, GateKind::P,
                                                      GateKind::T, GateKind::CNOT};

struct Gate {
  GateKind kind;
  Matrix matrix;

  std::size_t arity() const noexcept { return kind == GateKind::CNOT ? 2 : 1; }
  std::string_view name() const noexcept;
};

const Gate& gate(GateKind kind);
/// Throws InvalidArgument for names outside H, X, P, T, CNOT.
const Gate& gate_by_name(std::string_view name);

/// The unitary acting as g on `targets` (first target is the most
/// significant sub-index) and identity on the other qubits.
/// Throws BadTargets.
Matrix embed_gate(const Gate& g, std::span<const std::size_t> targets, std::size_t qubits);

DensityMatrix density_of(const PureState& psi);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Gate& g,
                            std::span<const std::size_t> targets, std::size_t qubits);
/// rho -> U rho U^dagger for a precomputed embedded unitary.
DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u);
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch);

/// Tr(M^dagger M rho), clipped into [0, 1] when within 1e-9 of the bounds.
double born_probability(const DensityMatrix& rho, const Matrix& m);
/// M rho M^dagger / Tr(M^dagger M rho). Throws ZeroProbability below 1e-12.
DensityMatrix post_measurement_state(const DensityMatrix& rho, const Matrix& m);
/// Tr(rho P) for an orthogonal projection P. Throws NotProjection.
double gleason_measure(const DensityMatrix& rho, const Matrix& proj, double tol = kDefaultTol);

bool is_projection(const Matrix& p, double tol = kDefaultTol);

/// Projector onto the basis states whose qubit `q` reads `value`.
Matrix qubit_projector(std::size_t q, int value, std::size_t qubits);
/// {P_0, P_1} for a computational-basis measurement of one qubit.
KrausChannel qubit_measurement(std::size_t q, std::size_t qubits);
/// Rank-1 projectors onto every computational basis state.
std::vector<Matrix> computational_projectors(std::size_t dim);

}  // namespace qdom
