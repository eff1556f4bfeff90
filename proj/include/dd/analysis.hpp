#ifndef DD_ANALYSIS_HPP
#define DD_ANALYSIS_HPP

#include "dd/magnus.hpp"
#include "dd/metrics.hpp"
#include "dd/report.hpp"
#include "dd/sequences.hpp"

namespace dd {

// ---------------------------------------------------------------------- //
// analytic breakeven conditions

enum class BreakevenVariant {
  ideal_pdd,         // 12 phi_B + 4 phi_SB <= 1
  noisy_general,     // (8/pi) phi_SB delta + 4 eta <= phi_SB
  finite_width_only, // delta <= pi/8
  control_only,      // eta <= phi_SB / 4
  unitary_error,     // eta_max from the second-order error-phase bound
};

struct BreakevenParams {
  double phi_b = 0.0;
  double phi_sb = 0.0;
  double eta = 0.0;
  double delta = 0.0;
};

struct BreakevenResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double eta_max = std::numeric_limits<double>::quiet_NaN();
};

// Throws std::domain_error for unitary_error when 1 - 4(3 phi_B - phi_SB)
// is not positive (the bound collapses there).
BreakevenResult analytic_breakeven(BreakevenVariant variant, const BreakevenParams& p);

// ---------------------------------------------------------------------- //
// CDD level analysis

enum class CddRegime { generic, BI_zero, memory };

// Interaction error-phase bounds after n levels:
//   generic        2^{(n+1)^2} phi_B^n phi_SB   (computational setting)
//   memory         2^{-n^2}    phi_B^n phi_SB
//   BI_zero        (8/3)^{n-1} 2^{n^2+1} phi_SB^{3n-1}
// n = 0 returns phi_SB (no decoupling yet).
double cdd_bound(CddRegime regime, double phi_b, double phi_sb, int n);

struct CddNmax {
  int n_max = 0;
  bool useful = false;  // false when the formula lands at n <= 0
};

// Largest useful concatenation level: ceil(-log4 phi_B - 3/2) in the
// generic regime (argument is phi_B), ceil(-3 log4 phi_SB + log4 3 - 5/2)
// when B_I = 0 (argument is phi_SB). The memory setting has no maximum and
// is rejected.
CddNmax cdd_nmax(CddRegime regime, double phi);

struct CddTrace {
  int level = 0;
  double phi_b = 0.0;
  double phi_sb = 0.0;
  enum class Source { exact_log, bound, recurrence, estimator } source = Source::exact_log;
};

// Exact error phases per level from propagation and the matrix log.
// tau_or_total is the slot interval (computational) or total time (memory).
// Levels whose crude generator-norm estimate reaches pi - 0.1, or whose log
// is branch-ambiguous, are served from cdd_bound and tagged Source::bound.
std::vector<CddTrace> cdd_sweep_exact(const SystemBathHamiltonian& h, int n_max,
                                      Setting setting, double tau_or_total,
                                      const NoisyGateSet* gates = nullptr);

// Closed-form leading-order estimate of the CDDn generator, split into
// bath and interaction parts. regime BI_zero switches to the B_I = 0 base
// (third-order seed); memory is rejected.
EffectiveGenerator cdd_estimator(const SystemBathHamiltonian& h, int n,
                                 CddRegime regime = CddRegime::generic);

// Error-phase recurrences with per-level noise floor 4 eta:
//   computational  phiSB_{n} = 12 phiB_{n-1} phiSB_{n-1} + 4 phiSB_{n-1}^2 + 4 eta,
//                  phiB_n = 4^n phi_b
//   memory         phiSB_{n} = (phi_b/2) phiSB_{n-1} + 4 eta, phiB_n = phi_b
std::vector<CddTrace> noisy_cdd_recurrence(double phi_b, double phi_sb, double eta, int n_max,
                                           Setting setting);

// Fixed point of the memory recurrence, 4 eta / (1 - phi_b / 2).
double memory_plateau(double phi_b, double eta);

// ---------------------------------------------------------------------- //
// breakeven maps

enum class BreakevenMeasure { error_phase, infidelity };

struct GridSpec {
  double min = 1e-3;
  double max = 1.0;
  int points = 41;
  std::vector<double> explicit_values;  // overrides min/max/points when set

  std::vector<double> values() const;
  std::string describe(const std::string& name) const;
};

struct BreakevenMapConfig {
  GridSpec grid_b;
  GridSpec grid_sb;
  double eta = 0.0;
  Eigen::Vector3d n_axis = Eigen::Vector3d(1.0, 0.0, 1.0).normalized();
  BreakevenMeasure measure = BreakevenMeasure::error_phase;
  int samples_per_cell = 20;
  int states_per_channel = 25;  // infidelity measure only
  Eigen::Index bath_dim = 2;
  std::uint64_t seed = 0;
  int threads = 0;
};

// Ratio map over the (phi_B, phi_SB) grid for one PDD cycle versus one bare
// step. error_phase cells carry median/mean/min/max of Phi_SB/phi_SB over
// the per-cell Hamiltonian samples; infidelity cells carry the ratio of
// worst-case infidelities (and both worst cases). phi_SB = 0 cells are
// degenerate; branch-ambiguous logs invalidate the affected cell only.
SweepReport breakeven_map(const BreakevenMapConfig& cfg);

}  // namespace dd

#endif
