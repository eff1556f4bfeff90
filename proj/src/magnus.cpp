#include "dd/magnus.hpp"

namespace dd {

namespace {

constexpr double kPi = 3.141592653589793238462643;
const Complex kI(0.0, 1.0);

CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
CMatrix acomm(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

CMatrix hermitize(const CMatrix& a) { return (a + a.adjoint()) / 2.0; }

// sigma_alpha (x) I on the joint space.
CMatrix lifted_pauli(PauliAxis axis, Eigen::Index bath_dim) {
  return kron(pauli(axis), CMatrix::Identity(bath_dim, bath_dim));
}

void check_segments(const SegmentList& segments) {
  if (segments.empty()) throw std::invalid_argument("magnus: empty segment list");
  const Eigen::Index dim = segments[0].rows();
  for (const CMatrix& o : segments) {
    if (o.rows() != dim || o.cols() != dim)
      throw std::invalid_argument("magnus: segments must share one dimension");
    if (!is_hermitian(o)) throw std::invalid_argument("magnus: segments must be Hermitian");
  }
}

}  // namespace

ConvergenceMargin convergence_margin(const SegmentList& segments) {
  check_segments(segments);
  ConvergenceMargin out;
  for (const CMatrix& o : segments) out.total += op_norm(o);
  out.within = out.total < kMagnusConvergenceRadius;
  return out;
}

std::vector<CMatrix> magnus_terms(const SegmentList& segments, int max_order) {
  check_segments(segments);
  if (max_order < 1 || max_order > 3)
    throw std::invalid_argument("magnus_terms: max_order must be 1, 2 or 3");
  const int n = static_cast<int>(segments.size());
  const Eigen::Index dim = segments[0].rows();
  std::vector<CMatrix> out;

  CMatrix omega1 = CMatrix::Zero(dim, dim);
  for (const CMatrix& o : segments) omega1 += o;
  out.push_back(omega1);
  if (max_order == 1) return out;

  CMatrix omega2 = CMatrix::Zero(dim, dim);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) omega2 += comm(segments[i], segments[j]);
  out.push_back(hermitize(-kI / 2.0 * omega2));
  if (max_order == 2) return out;

  // Triple sum over i >= j >= k of the time-ordered simplex; nested
  // commutators keep the middle segment fixed, and sym counts how many of
  // the three indices coincide (1, 2 or 6).
  CMatrix omega3 = CMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= j; ++k) {
        double sym = 1.0;
        if (i == j && j == k)
          sym = 6.0;
        else if (i == j || j == k)
          sym = 2.0;
        CMatrix inner = comm(segments[j], segments[k]);
        omega3 += (comm(segments[i], inner) + comm(segments[k], comm(segments[j], segments[i]))) / sym;
      }
  out.push_back(hermitize(-omega3 / 6.0));
  return out;
}

SegmentList pdd_segments(const SystemBathHamiltonian& h) {
  const CMatrix joint = h.tau() * h.joint();
  const Eigen::Index b = h.bath_dim();
  SegmentList segments;
  segments.reserve(4);
  for (PauliAxis a : {PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    CMatrix p = lifted_pauli(a, b);
    segments.push_back(hermitize(p * joint * p));
  }
  return segments;
}

PddLeadingTerms pdd_leading_terms(const SystemBathHamiltonian& h) {
  const double tau = h.tau();
  const CMatrix& bi = h.bath_op(PauliAxis::I);
  const CMatrix& bx = h.bath_op(PauliAxis::X);
  const CMatrix& by = h.bath_op(PauliAxis::Y);
  const CMatrix& bz = h.bath_op(PauliAxis::Z);

  PddLeadingTerms t;
  t.omega1 = 4.0 * tau * kron(pauli(PauliAxis::I), bi);
  t.omega2 = -2.0 * tau * tau *
             (kron(pauli(PauliAxis::X), 2.0 * kI * comm(bi, bx)) +
              kron(pauli(PauliAxis::Y), kI * comm(bi, by) + acomm(bx, bz)));
  t.omega3_bath_free =
      (2.0 / 3.0) * tau * tau * tau *
      (kron(pauli(PauliAxis::I), kI * (comm(bz, acomm(bx, by)) - comm(by, acomm(bx, bz)))) +
       kron(pauli(PauliAxis::Z), 3.0 * acomm(bx, acomm(bx, bz))));
  return t;
}

CMatrix noisy_pdd_first_order(const SystemBathHamiltonian& h, const ControlErrorSpec& ctrl,
                              const PulseWidthSpec& width) {
  const double tau = h.tau();
  const double tau_p = width.delta * tau;
  const Eigen::Index b = h.bath_dim();
  CMatrix diff = ctrl.gamma_z_joint(b) - ctrl.gamma_x_joint(b);
  CMatrix x = lifted_pauli(PauliAxis::X, b);
  CMatrix z = lifted_pauli(PauliAxis::Z, b);
  return 4.0 * tau * kron(pauli(PauliAxis::I), h.bath_op(PauliAxis::I)) +
         (4.0 / kPi) * tau_p *
             kron(pauli(PauliAxis::Y), h.bath_op(PauliAxis::X) + h.bath_op(PauliAxis::Z)) +
         x * diff * x + z * diff * z;
}

CMatrix noisy_pdd_second_order_unitary(const SystemBathHamiltonian& h, double eta,
                                       const Eigen::Vector3d& n) {
  if (eta < 0.0) throw std::invalid_argument("noisy_pdd_second_order_unitary: eta >= 0");
  if (std::abs(n.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("noisy_pdd_second_order_unitary: n must be a unit vector");
  const double tau = h.tau();
  const Eigen::Index b = h.bath_dim();
  const CMatrix eye = CMatrix::Identity(b, b);
  const CMatrix& bi = h.bath_op(PauliAxis::I);
  const CMatrix& bx = h.bath_op(PauliAxis::X);
  const CMatrix& by = h.bath_op(PauliAxis::Y);
  const CMatrix& bz = h.bath_op(PauliAxis::Z);
  CMatrix shifted_x = tau * bx + eta * n.x() * eye;
  CMatrix shifted_z = tau * bz + eta * n.z() * eye;
  return -4.0 * kron(pauli(PauliAxis::X), kI * tau * tau * comm(bi, bx)) -
         2.0 * kron(pauli(PauliAxis::Y),
                    kI * tau * tau * comm(bi, by) + acomm(shifted_x, shifted_z));
}

std::array<CMatrix, 4> k_generators_exact(const SystemBathHamiltonian& h,
                                          const ControlErrorSpec& ctrl,
                                          const PulseWidthSpec& width) {
  const Eigen::Index b = h.bath_dim();
  const double tau_p = width.delta * h.tau();
  const CMatrix joint = h.joint();
  const CMatrix x = lifted_pauli(PauliAxis::X, b);
  const CMatrix y = lifted_pauli(PauliAxis::Y, b);
  const CMatrix z = lifted_pauli(PauliAxis::Z, b);

  // Noisy gates; at delta = 0 the rotation part collapses to the bare Pauli.
  CMatrix ex = exp_generator(ctrl.gamma_x_joint(b));
  CMatrix ez = exp_generator(ctrl.gamma_z_joint(b));
  CMatrix xt, zt;
  if (width.delta == 0.0) {
    xt = x * ex;
    zt = z * ez;
  } else {
    xt = exp_generator((kPi / 2.0) * x + tau_p * joint) * ex;  // tau_P (H_X + H)
    zt = exp_generator((kPi / 2.0) * z + tau_p * joint) * ez;
  }
  CMatrix unwind = exp_generator(-tau_p * joint);  // e^{+i tau_P H}

  std::array<CMatrix, 4> defining = {x * xt * unwind, y * zt * unwind * x,
                                     z * xt * unwind * y, zt * unwind * z};
  std::array<CMatrix, 4> out;
  for (int a = 0; a < 4; ++a) out[a] = log_unitary_min_phase(defining[a]);
  return out;
}

std::array<CMatrix, 4> k_generators_leading(const SystemBathHamiltonian& h,
                                            const ControlErrorSpec& ctrl,
                                            const PulseWidthSpec& width) {
  const Eigen::Index b = h.bath_dim();
  const double tau_p = width.delta * h.tau();
  const CMatrix gx = ctrl.gamma_x_joint(b);
  const CMatrix gz = ctrl.gamma_z_joint(b);
  const CMatrix x = lifted_pauli(PauliAxis::X, b);
  const CMatrix y = lifted_pauli(PauliAxis::Y, b);
  const CMatrix z = lifted_pauli(PauliAxis::Z, b);
  const CMatrix& bx = h.bath_op(PauliAxis::X);
  const CMatrix& by = h.bath_op(PauliAxis::Y);
  const CMatrix& bz = h.bath_op(PauliAxis::Z);
  const double c = 2.0 / kPi;

  std::array<CMatrix, 4> out;
  out[0] = gx + tau_p * (-kron(pauli(PauliAxis::Y), by - c * bz) -
                         kron(pauli(PauliAxis::Z), bz + c * by));
  out[1] = x * gz * x + tau_p * (-kron(pauli(PauliAxis::X), bx - c * by) +
                                 kron(pauli(PauliAxis::Y), by + c * bx));
  out[2] = y * gx * y + tau_p * (-kron(pauli(PauliAxis::Y), by - c * bz) +
                                 kron(pauli(PauliAxis::Z), bz + c * by));
  out[3] = z * gz * z + tau_p * (kron(pauli(PauliAxis::X), bx - c * by) +
                                 kron(pauli(PauliAxis::Y), by + c * bx));
  return out;
}

}  // namespace dd
