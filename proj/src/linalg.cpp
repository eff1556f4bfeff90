#include "dd/linalg.hpp"

#include <cmath>
#include <limits>

#include <eigen3/Eigen/Eigenvalues>
#include <eigen3/Eigen/SVD>

namespace dd {

namespace {

constexpr double kPi = 3.141592653589793238462643;

const std::array<CMatrix, 4>& pauli_table() {
  static const std::array<CMatrix, 4> table = [] {
    std::array<CMatrix, 4> t;
    const Complex i(0.0, 1.0);
    t[0] = CMatrix::Identity(2, 2);
    t[1] = CMatrix::Zero(2, 2);
    t[1] << 0, 1, 1, 0;
    t[2] = CMatrix::Zero(2, 2);
    t[2] << 0, -i, i, 0;
    t[3] = CMatrix::Zero(2, 2);
    t[3] << 1, 0, 0, -1;
    return t;
  }();
  return table;
}

void check_square(const CMatrix& a, const char* who) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
}

// Schur form of a (numerically) normal matrix: u = q diag(t) q^dag with q
// exactly unitary. Safer than ComplexEigenSolver for clustered eigenvalues.
void normal_schur(const CMatrix& u, CMatrix& q, CVector& d) {
  Eigen::ComplexSchur<CMatrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("log_unitary: Schur decomposition failed");
  q = schur.matrixU();
  d = schur.matrixT().diagonal();
}

CMatrix log_from_phases(const CMatrix& q, const CVector& d, double phase_rotation,
                        double branch_guard, double* out_margin) {
  const Eigen::Index n = d.size();
  Eigen::VectorXd gen(n);
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    double theta = std::arg(d[j] * std::polar(1.0, phase_rotation));
    margin = std::min(margin, kPi - std::abs(theta));
    gen[j] = -theta;  // omega = i log u flips the sign of each eigenphase
  }
  if (out_margin) *out_margin = margin;
  if (margin < branch_guard) throw BranchAmbiguityError(margin);
  CMatrix omega = q * gen.cast<Complex>().asDiagonal() * q.adjoint();
  return (omega + omega.adjoint()) / 2.0;  // repair roundoff skew
}

}  // namespace

const CMatrix& pauli(PauliAxis axis) { return pauli_table()[static_cast<int>(axis)]; }

double op_norm(const CMatrix& a) {
  check_square(a, "op_norm");
  return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return op_norm(a - a.adjoint()) <= tol * std::max(1.0, op_norm(a));
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  CMatrix r = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return op_norm(r) <= tol;
}

CMatrix exp_generator(const CMatrix& omega) {
  check_square(omega, "exp_generator");
  if (!is_hermitian(omega))
    throw std::invalid_argument("exp_generator: generator must be Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(omega);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("exp_generator: eigendecomposition failed");
  const Eigen::VectorXd& lam = es.eigenvalues();
  CVector phases(lam.size());
  for (Eigen::Index j = 0; j < lam.size(); ++j) phases[j] = std::polar(1.0, -lam[j]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix log_unitary(const CMatrix& u, double branch_guard) {
  check_square(u, "log_unitary");
  if (!is_unitary(u)) throw std::invalid_argument("log_unitary: input is not unitary");
  CMatrix q;
  CVector d;
  normal_schur(u, q, d);
  return log_from_phases(q, d, 0.0, branch_guard, nullptr);
}

CMatrix log_unitary_min_phase(const CMatrix& u, double branch_guard) {
  check_square(u, "log_unitary_min_phase");
  if (!is_unitary(u)) throw std::invalid_argument("log_unitary_min_phase: input is not unitary");
  const Eigen::Index n = u.rows();
  CMatrix q;
  CVector d;
  normal_schur(u, q, d);
  // det(u e^{i phi}) = 1 at phi = (-arg det + 2 pi k)/n; try every root.
  double det_arg = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) det_arg += std::arg(d[j]);
  int best = -1;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    double phi = (-det_arg + 2.0 * kPi * k) / static_cast<double>(n);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(std::arg(d[j] * std::polar(1.0, phi))));
    if (worst < best_norm) {
      best_norm = worst;
      best = k;
    }
  }
  double phi = (-det_arg + 2.0 * kPi * best) / static_cast<double>(n);
  return log_from_phases(q, d, phi, branch_guard, nullptr);
}

CMatrix partial_trace_system(const CMatrix& m, const SystemSplit& split) {
  if (m.rows() != split.total() || m.cols() != split.total())
    throw std::invalid_argument("partial_trace_system: dimension mismatch");
  CMatrix out = CMatrix::Zero(split.bath_dim, split.bath_dim);
  for (Eigen::Index s = 0; s < split.system_dim; ++s)
    out += m.block(s * split.bath_dim, s * split.bath_dim, split.bath_dim, split.bath_dim);
  return out;
}

CMatrix partial_trace_bath(const CMatrix& m, const SystemSplit& split) {
  if (m.rows() != split.total() || m.cols() != split.total())
    throw std::invalid_argument("partial_trace_bath: dimension mismatch");
  CMatrix out = CMatrix::Zero(split.system_dim, split.system_dim);
  for (Eigen::Index r = 0; r < split.system_dim; ++r)
    for (Eigen::Index c = 0; c < split.system_dim; ++c)
      out(r, c) = m.block(r * split.bath_dim, c * split.bath_dim, split.bath_dim, split.bath_dim)
                      .trace();
  return out;
}

std::array<CMatrix, 4> pauli_decompose(const CMatrix& m, const SystemSplit& split) {
  if (split.system_dim != 2)
    throw std::invalid_argument("pauli_decompose: system factor must be a qubit");
  if (m.rows() != split.total() || m.cols() != split.total())
    throw std::invalid_argument("pauli_decompose: dimension mismatch");
  std::array<CMatrix, 4> out;
  for (int a = 0; a < 4; ++a) {
    CMatrix lifted = kron(pauli(static_cast<PauliAxis>(a)), CMatrix::Identity(split.bath_dim, split.bath_dim));
    out[a] = partial_trace_system(lifted * m, split) / 2.0;
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

}  // namespace dd
