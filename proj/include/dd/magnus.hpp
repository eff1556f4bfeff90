#ifndef DD_MAGNUS_HPP
#define DD_MAGNUS_HPP

#include <vector>

#include "dd/model.hpp"

namespace dd {

// Hermitian generators O_i of a piecewise-constant evolution, stored in time
// order: U = e^{-i O_K} ... e^{-i O_1} with segments[0] = O_1 acting first.
using SegmentList = std::vector<CMatrix>;

// Known convergence radius for the Magnus series of such products,
// sum_i ||O_i|| < 1.0868.
inline constexpr double kMagnusConvergenceRadius = 1.0868;

struct ConvergenceMargin {
  double total = 0.0;  // sum_i ||O_i||
  bool within = false;
};

ConvergenceMargin convergence_margin(const SegmentList& segments);

// Magnus terms Omega^(1..max_order) of the product, max_order in {1, 2, 3}.
// Third order is the triple-sum nested-commutator form for piecewise
// constant generators; orders beyond 3 are never expanded symbolically.
std::vector<CMatrix> magnus_terms(const SegmentList& segments, int max_order);

// Toggling-frame segments {tau sigma_alpha H sigma_alpha} of one ideal PDD
// cycle, alpha = I, X, Y, Z in time order.
SegmentList pdd_segments(const SystemBathHamiltonian& h);

struct PddLeadingTerms {
  CMatrix omega1;           // 4 tau I (x) B_I
  CMatrix omega2;           // second order, exact
  CMatrix omega3_bath_free; // third order, valid when B_I = 0
};

PddLeadingTerms pdd_leading_terms(const SystemBathHamiltonian& h);

// First-order generator of one noisy PDD cycle in the gate-difference form
//   4 tau I(x)B_I + (4/pi) tau_P Y(x)(B_X + B_Z)
//   + X (Gamma_Z - Gamma_X) X + Z (Gamma_Z - Gamma_X) Z.
CMatrix noisy_pdd_first_order(const SystemBathHamiltonian& h, const ControlErrorSpec& ctrl,
                              const PulseWidthSpec& width);

// Second-order generator of one noisy PDD cycle for the unitary control
// error Gamma = eta n.sigma with instantaneous pulses:
//   -4 X (x) i tau^2 [B_I, B_X]
//   -2 Y (x) (i tau^2 [B_I, B_Y] + {tau B_X + eta n_x, tau B_Z + eta n_z}).
CMatrix noisy_pdd_second_order_unitary(const SystemBathHamiltonian& h, double eta,
                                       const Eigen::Vector3d& n);

// Pulse-error generators K_0..K_3 of the noisy PDD cycle, defined through
//   e^{-iK_0} = X Xt e^{i tau_P H},   e^{-iK_1} = Y Zt e^{i tau_P H} X,
//   e^{-iK_2} = Z Xt e^{i tau_P H} Y, e^{-iK_3} = Zt e^{i tau_P H} Z,
// each up to a global phase (fixed by rotating the determinant to 1 and
// keeping the minimum-norm branch).
std::array<CMatrix, 4> k_generators_exact(const SystemBathHamiltonian& h,
                                          const ControlErrorSpec& ctrl,
                                          const PulseWidthSpec& width);

// Leading-order closed forms of the same generators, dropping terms of
// second order in (eta, delta * phi).
std::array<CMatrix, 4> k_generators_leading(const SystemBathHamiltonian& h,
                                            const ControlErrorSpec& ctrl,
                                            const PulseWidthSpec& width);

}  // namespace dd

#endif
