#include "dd/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <eigen3/Eigen/Eigenvalues>

#include "dd/rng.hpp"

namespace dd {

namespace {

void check_density(const CMatrix& rho, const char* who) {
  if (!is_hermitian(rho, 1e-10))
    throw std::invalid_argument(std::string(who) + ": density matrix must be Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument(std::string(who) + ": density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument(std::string(who) + ": density matrix must be positive");
}

}  // namespace

EffectiveGenerator split_generator(const CMatrix& omega, const SystemSplit& split) {
  EffectiveGenerator out;
  out.omega = omega;
  CMatrix bath_part = partial_trace_system(omega, split) / static_cast<double>(split.system_dim);
  out.omega_b = kron(CMatrix::Identity(split.system_dim, split.system_dim), bath_part);
  out.omega_sb = omega - out.omega_b;
  out.phi_b = op_norm(out.omega_b);
  out.phi_sb = op_norm(out.omega_sb);
  return out;
}

EffectiveGenerator effective_generator(const CMatrix& u, const SystemSplit& split,
                                       double branch_guard) {
  return split_generator(log_unitary(u, branch_guard), split);
}

CMatrix noise_channel_apply(const ChannelSample& channel, const CMatrix& rho_system) {
  const SystemSplit& split = channel.split;
  if (rho_system.rows() != split.system_dim || rho_system.cols() != split.system_dim)
    throw std::invalid_argument("noise_channel_apply: system state dimension mismatch");
  check_density(rho_system, "noise_channel_apply");
  check_density(channel.rho_bath, "noise_channel_apply(bath)");
  CMatrix joint = channel.u * kron(rho_system, channel.rho_bath) * channel.u.adjoint();
  return partial_trace_bath(joint, split);
}

double infidelity(const ChannelSample& channel, const CVector& psi) {
  if (psi.size() != channel.split.system_dim)
    throw std::invalid_argument("infidelity: state dimension mismatch");
  CMatrix rho = psi * psi.adjoint();
  rho /= rho.trace();
  CMatrix mapped = noise_channel_apply(channel, rho);
  double overlap = (psi.adjoint() * mapped * psi)(0, 0).real() / psi.squaredNorm();
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

CVector haar_state(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream) {
  std::mt19937_64 rng = make_rng(seed, stream);
  CVector psi(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      psi[j] = Complex(normal(rng), normal(rng));
      norm2 += std::norm(psi[j]);
    }
  } while (norm2 < 1e-12);
  return psi / std::sqrt(norm2);
}

double worst_case_infidelity(const std::function<ChannelSample(std::uint64_t stream)>& ensemble,
                             int n_samples, int n_states, std::uint64_t seed) {
  if (n_samples < 1 || n_states < 1)
    throw std::invalid_argument("worst_case_infidelity: sample counts must be positive");
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    ChannelSample channel = ensemble(static_cast<std::uint64_t>(i));
    for (int j = 0; j < n_states; ++j) {
      CVector psi =
          haar_state(channel.split.system_dim, seed ^ 0x5f3759df9e3779b9ull,
                     static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n_states) + j);
      worst = std::max(worst, infidelity(channel, psi));
    }
  }
  return worst;
}

}  // namespace dd
