#ifndef DD_MODEL_HPP
#define DD_MODEL_HPP

#include <array>
#include <cstdint>

#include <json.hpp>

#include "dd/linalg.hpp"

namespace dd {

// One qubit coupled to a finite bath through
//   H = I (x) B_I + X (x) B_X + Y (x) B_Y + Z (x) B_Z,
// with tau the reference pulse interval used to form the dimensionless
// phases phi_B = ||tau H_B|| and phi_SB = ||tau H_SB||. tr(B_I) = 0 by
// convention, which pins the additive constant of the bath Hamiltonian.
class SystemBathHamiltonian {
 public:
  static SystemBathHamiltonian assemble(const std::array<CMatrix, 4>& bath_ops,
                                        double tau = 1.0);

  const CMatrix& bath_op(PauliAxis axis) const { return ops_[static_cast<int>(axis)]; }
  double tau() const { return tau_; }
  Eigen::Index bath_dim() const { return ops_[0].rows(); }
  SystemSplit split() const { return SystemSplit{2, bath_dim()}; }

  CMatrix joint() const;        // sum_alpha sigma_alpha (x) B_alpha
  CMatrix interaction() const;  // X,Y,Z terms only
  double phi_b() const;         // ||tau I (x) B_I||
  double phi_sb() const;        // ||tau H_SB||

  nlohmann::json to_json() const;
  static SystemBathHamiltonian from_json(const nlohmann::json& j);

 private:
  SystemBathHamiltonian() = default;
  std::array<CMatrix, 4> ops_;
  double tau_ = 1.0;
};

// Draws a random instance with prescribed error phases: B_I along a uniform
// random bath direction scaled to phi_b, and jointly Gaussian B_X, B_Y, B_Z
// rescaled together so that ||tau H_SB|| = phi_sb exactly.
SystemBathHamiltonian sample_random(double phi_b, double phi_sb, Eigen::Index bath_dim,
                                    std::uint64_t seed, std::uint64_t stream = 0,
                                    double tau = 1.0);

// Per-pulse control error generators: the X gate picks up e^{-i Gamma_X},
// the Z gate e^{-i Gamma_Z}. Both are Hermitian, bounded by eta in operator
// norm, and carry no system-identity component (a global phase would be
// unobservable; a pure-bath kick is not a control error).
class ControlErrorSpec {
 public:
  ControlErrorSpec(CMatrix gamma_x, CMatrix gamma_z, double eta);
  static ControlErrorSpec none();

  const CMatrix& gamma_x() const { return gamma_x_; }
  const CMatrix& gamma_z() const { return gamma_z_; }
  double eta() const { return eta_; }
  bool system_only() const { return gamma_x_.rows() == 2; }
  // Gamma embedded into the joint space of the given bath dimension.
  CMatrix gamma_x_joint(Eigen::Index bath_dim) const;
  CMatrix gamma_z_joint(Eigen::Index bath_dim) const;

 private:
  CMatrix gamma_x_, gamma_z_;
  double eta_ = 0.0;
};

// Unitary control error model: Gamma_X = Gamma_Z = eta n.sigma with n a unit
// vector, the worst-known case being |n_x n_z| = 1/2.
ControlErrorSpec unitary_control_error(double eta, const Eigen::Vector3d& n);

// Pulse width as the fraction delta = tau_P / tau in [0, 1).
struct PulseWidthSpec {
  double delta = 0.0;
  explicit PulseWidthSpec(double d = 0.0);
};

struct NormInequalityCheck {
  bool holds = false;
  double lhs = 0.0;  // max_i ||B_i||
  double rhs = 0.0;  // ||sum_i sigma_i (x) B_i||
};

// Checks max_i ||B_i|| <= ||sum_{i in X,Y,Z} sigma_i (x) B_i||, which lets
// interaction bounds be stated directly in terms of phi_SB.
NormInequalityCheck check_norm_inequality(const std::array<CMatrix, 3>& interaction_ops);

}  // namespace dd

#endif
