#ifndef DD_METRICS_HPP
#define DD_METRICS_HPP

#include <cstdint>
#include <functional>

#include "dd/linalg.hpp"

namespace dd {

// Effective generator Omega of a joint unitary, split into its pure-bath
// part Omega_B = (1/d_S) I (x) tr_S(Omega) and the interaction remainder.
// phi_b and phi_sb are the corresponding error phases (operator norms).
struct EffectiveGenerator {
  CMatrix omega;
  CMatrix omega_b;
  CMatrix omega_sb;
  double phi_b = 0.0;
  double phi_sb = 0.0;
};

// Split of an already-known Hermitian generator.
EffectiveGenerator split_generator(const CMatrix& omega, const SystemSplit& split);

// Principal log of u followed by the bath/interaction split. Callers must
// hand in a phase-canonical unitary (as produced by the propagators); the
// branch guard rejects logs too close to the cut.
EffectiveGenerator effective_generator(const CMatrix& u, const SystemSplit& split,
                                       double branch_guard = 1e-6);

// One sampled noise channel: joint unitary plus initial bath state.
struct ChannelSample {
  CMatrix u;
  CMatrix rho_bath;
  SystemSplit split;
};

// N(rho_S) = tr_B{ u (rho_S (x) rho_B) u^dag }.
CMatrix noise_channel_apply(const ChannelSample& channel, const CMatrix& rho_system);

// I(N, psi) = sqrt(1 - <psi| N(|psi><psi|) |psi>).
double infidelity(const ChannelSample& channel, const CVector& psi);

// Max of infidelity over n_samples channel draws and n_states Haar states
// per channel. Deterministic in (seed); per-draw streams keep the result
// independent of evaluation order.
double worst_case_infidelity(const std::function<ChannelSample(std::uint64_t stream)>& ensemble,
                             int n_samples, int n_states, std::uint64_t seed);

// Haar-random pure state of the given dimension.
CVector haar_state(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream);

}  // namespace dd

#endif
