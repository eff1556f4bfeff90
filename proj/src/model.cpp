#include "dd/model.hpp"

#include <cmath>

#include "dd/rng.hpp"

namespace dd {

namespace {

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw std::invalid_argument("matrix_from_json: empty matrix");
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j.at(r).at(c);
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  CMatrix r(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b) r(a, b) = Complex(normal(rng), normal(rng));
  return r + r.adjoint().eval();
}

}  // namespace

SystemBathHamiltonian SystemBathHamiltonian::assemble(const std::array<CMatrix, 4>& bath_ops,
                                                      double tau) {
  if (tau <= 0.0) throw std::invalid_argument("SystemBathHamiltonian: tau must be positive");
  const Eigen::Index dim = bath_ops[0].rows();
  if (dim < 1) throw std::invalid_argument("SystemBathHamiltonian: empty bath operator");
  for (const CMatrix& b : bath_ops) {
    if (b.rows() != dim || b.cols() != dim)
      throw std::invalid_argument("SystemBathHamiltonian: bath operators must share one dimension");
    if (!is_hermitian(b))
      throw std::invalid_argument("SystemBathHamiltonian: bath operators must be Hermitian");
  }
  if (std::abs(bath_ops[0].trace()) > 1e-12 * std::max(1.0, op_norm(bath_ops[0])))
    throw std::invalid_argument("SystemBathHamiltonian: B_I must be traceless");
  SystemBathHamiltonian h;
  h.ops_ = bath_ops;
  for (CMatrix& b : h.ops_) b = ((b + b.adjoint()) / 2.0).eval();
  h.tau_ = tau;
  return h;
}

CMatrix SystemBathHamiltonian::joint() const {
  CMatrix out = CMatrix::Zero(2 * bath_dim(), 2 * bath_dim());
  for (int a = 0; a < 4; ++a) out += kron(pauli(static_cast<PauliAxis>(a)), ops_[a]);
  return out;
}

CMatrix SystemBathHamiltonian::interaction() const {
  CMatrix out = CMatrix::Zero(2 * bath_dim(), 2 * bath_dim());
  for (int a = 1; a < 4; ++a) out += kron(pauli(static_cast<PauliAxis>(a)), ops_[a]);
  return out;
}

double SystemBathHamiltonian::phi_b() const { return tau_ * op_norm(ops_[0]); }

double SystemBathHamiltonian::phi_sb() const { return tau_ * op_norm(interaction()); }

nlohmann::json SystemBathHamiltonian::to_json() const {
  return {{"tau", tau_},
          {"bath_dim", bath_dim()},
          {"B_I", matrix_to_json(ops_[0])},
          {"B_X", matrix_to_json(ops_[1])},
          {"B_Y", matrix_to_json(ops_[2])},
          {"B_Z", matrix_to_json(ops_[3])}};
}

SystemBathHamiltonian SystemBathHamiltonian::from_json(const nlohmann::json& j) {
  std::array<CMatrix, 4> ops = {matrix_from_json(j.at("B_I")), matrix_from_json(j.at("B_X")),
                                matrix_from_json(j.at("B_Y")), matrix_from_json(j.at("B_Z"))};
  return assemble(ops, j.at("tau").get<double>());
}

SystemBathHamiltonian sample_random(double phi_b, double phi_sb, Eigen::Index bath_dim,
                                    std::uint64_t seed, std::uint64_t stream, double tau) {
  if (phi_b < 0.0 || phi_sb < 0.0)
    throw std::invalid_argument("sample_random: error phases must be nonnegative");
  if (bath_dim < 2) throw std::invalid_argument("sample_random: bath_dim must be at least 2");
  std::mt19937_64 rng = make_rng(seed, stream);

  // Pure-bath term: qubit baths get phi_b * (v.sigma) with v uniform on the
  // sphere; larger baths take a traceless Gaussian Hermitian, rescaled.
  CMatrix b_i;
  if (bath_dim == 2) {
    double vx = normal(rng), vy = normal(rng), vz = normal(rng);
    double len = std::sqrt(vx * vx + vy * vy + vz * vz);
    while (len < 1e-12) {
      vx = normal(rng);
      vy = normal(rng);
      vz = normal(rng);
      len = std::sqrt(vx * vx + vy * vy + vz * vz);
    }
    b_i = (vx * pauli(PauliAxis::X) + vy * pauli(PauliAxis::Y) + vz * pauli(PauliAxis::Z)) / len;
  } else {
    b_i = random_hermitian(rng, bath_dim);
    b_i -= (b_i.trace() / static_cast<double>(bath_dim)) * CMatrix::Identity(bath_dim, bath_dim);
    double norm = op_norm(b_i);
    if (norm < 1e-12) throw std::runtime_error("sample_random: degenerate bath draw");
    b_i /= norm;
  }
  b_i *= phi_b / tau;

  std::array<CMatrix, 4> ops = {b_i, random_hermitian(rng, bath_dim),
                                random_hermitian(rng, bath_dim), random_hermitian(rng, bath_dim)};
  // Joint rescale of the three interaction operators so that the total
  // interaction phase lands exactly on phi_sb; their relative weights keep
  // the Gaussian ensemble's fluctuations.
  CMatrix h_sb = CMatrix::Zero(2 * bath_dim, 2 * bath_dim);
  for (int a = 1; a < 4; ++a) h_sb += kron(pauli(static_cast<PauliAxis>(a)), ops[a]);
  double raw = op_norm(h_sb);
  if (raw < 1e-12) throw std::runtime_error("sample_random: degenerate interaction draw");
  double scale = phi_sb / (tau * raw);
  for (int a = 1; a < 4; ++a) ops[a] *= scale;
  return SystemBathHamiltonian::assemble(ops, tau);
}

ControlErrorSpec::ControlErrorSpec(CMatrix gamma_x, CMatrix gamma_z, double eta)
    : gamma_x_(std::move(gamma_x)), gamma_z_(std::move(gamma_z)), eta_(eta) {
  if (eta_ < 0.0) throw std::invalid_argument("ControlErrorSpec: eta must be nonnegative");
  if (gamma_x_.rows() != gamma_z_.rows() || gamma_x_.cols() != gamma_z_.cols())
    throw std::invalid_argument("ControlErrorSpec: generators must share a dimension");
  if (gamma_x_.rows() < 2 || gamma_x_.rows() % 2 != 0 || gamma_x_.rows() != gamma_x_.cols())
    throw std::invalid_argument("ControlErrorSpec: generators act on the qubit (x bath)");
  for (const CMatrix* g : {&gamma_x_, &gamma_z_}) {
    if (!is_hermitian(*g))
      throw std::invalid_argument("ControlErrorSpec: generators must be Hermitian");
    double norm = op_norm(*g);
    if (norm > eta_ * (1.0 + 1e-12) + 1e-15)
      throw std::invalid_argument("ControlErrorSpec: ||Gamma|| exceeds declared eta");
    SystemSplit split{2, gamma_x_.rows() / 2};
    CMatrix ident_part = partial_trace_system(*g, split) / 2.0;
    if (op_norm(ident_part) > 1e-12 * std::max(1.0, norm))
      throw std::invalid_argument("ControlErrorSpec: system-identity component must vanish");
  }
}

ControlErrorSpec ControlErrorSpec::none() {
  return ControlErrorSpec(CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), 0.0);
}

CMatrix ControlErrorSpec::gamma_x_joint(Eigen::Index bath_dim) const {
  if (system_only()) return kron(gamma_x_, CMatrix::Identity(bath_dim, bath_dim));
  if (gamma_x_.rows() != 2 * bath_dim)
    throw std::invalid_argument("ControlErrorSpec: bath dimension mismatch");
  return gamma_x_;
}

CMatrix ControlErrorSpec::gamma_z_joint(Eigen::Index bath_dim) const {
  if (system_only()) return kron(gamma_z_, CMatrix::Identity(bath_dim, bath_dim));
  if (gamma_z_.rows() != 2 * bath_dim)
    throw std::invalid_argument("ControlErrorSpec: bath dimension mismatch");
  return gamma_z_;
}

ControlErrorSpec unitary_control_error(double eta, const Eigen::Vector3d& n) {
  if (std::abs(n.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("unitary_control_error: n must be a unit vector");
  CMatrix g = eta * (n.x() * pauli(PauliAxis::X) + n.y() * pauli(PauliAxis::Y) +
                     n.z() * pauli(PauliAxis::Z));
  return ControlErrorSpec(g, g, eta);
}

PulseWidthSpec::PulseWidthSpec(double d) : delta(d) {
  if (delta < 0.0 || delta >= 1.0)
    throw std::invalid_argument("PulseWidthSpec: delta must lie in [0, 1)");
}

NormInequalityCheck check_norm_inequality(const std::array<CMatrix, 3>& interaction_ops) {
  NormInequalityCheck out;
  const Eigen::Index dim = interaction_ops[0].rows();
  CMatrix joint = CMatrix::Zero(2 * dim, 2 * dim);
  for (int a = 0; a < 3; ++a) {
    out.lhs = std::max(out.lhs, op_norm(interaction_ops[a]));
    joint += kron(pauli(static_cast<PauliAxis>(a + 1)), interaction_ops[a]);
  }
  out.rhs = op_norm(joint);
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

}  // namespace dd
