#include "dd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dd/parallel.hpp"
#include "dd/rng.hpp"

namespace dd {

namespace {

constexpr double kPi = 3.14159265358979323846;

CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
CMatrix acomm(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BreakevenResult analytic_breakeven(BreakevenVariant variant, const BreakevenParams& p) {
  if (p.phi_b < 0.0 || p.phi_sb < 0.0 || p.eta < 0.0 || p.delta < 0.0)
    throw std::invalid_argument("analytic_breakeven: parameters must be nonnegative");
  BreakevenResult r;
  switch (variant) {
    case BreakevenVariant::ideal_pdd:
      r.lhs = 12.0 * p.phi_b + 4.0 * p.phi_sb;
      r.rhs = 1.0;
      break;
    case BreakevenVariant::noisy_general:
      r.lhs = (8.0 / kPi) * p.phi_sb * p.delta + 4.0 * p.eta;
      r.rhs = p.phi_sb;
      break;
    case BreakevenVariant::finite_width_only:
      r.lhs = p.delta;
      r.rhs = kPi / 8.0;
      break;
    case BreakevenVariant::control_only:
      r.lhs = p.eta;
      r.rhs = p.phi_sb / 4.0;
      r.eta_max = r.rhs;
      break;
    case BreakevenVariant::unitary_error: {
      const double disc = 1.0 - 4.0 * (3.0 * p.phi_b - p.phi_sb);
      if (disc <= 0.0)
        throw std::domain_error("analytic_breakeven: unitary bound undefined, "
                                "1 - 4(3 phi_B - phi_SB) <= 0");
      r.eta_max = std::sqrt(p.phi_sb / 2.0) / std::sqrt(disc) - 2.0 * p.phi_sb;
      r.lhs = p.eta;
      r.rhs = r.eta_max;
      break;
    }
  }
  r.satisfied = r.lhs <= r.rhs;
  return r;
}

double cdd_bound(CddRegime regime, double phi_b, double phi_sb, int n) {
  if (n < 0) throw std::invalid_argument("cdd_bound: n must be nonnegative");
  if (phi_b < 0.0 || phi_sb < 0.0)
    throw std::invalid_argument("cdd_bound: phases must be nonnegative");
  if (n == 0) return phi_sb;
  const double dn = static_cast<double>(n);
  switch (regime) {
    case CddRegime::generic:
      return std::exp2((dn + 1.0) * (dn + 1.0)) * std::pow(phi_b, dn) * phi_sb;
    case CddRegime::memory:
      return std::exp2(-dn * dn) * std::pow(phi_b, dn) * phi_sb;
    case CddRegime::BI_zero:
      return std::pow(8.0 / 3.0, dn - 1.0) * std::exp2(dn * dn + 1.0) *
             std::pow(phi_sb, 3.0 * dn - 1.0);
  }
  throw std::logic_error("cdd_bound: unreachable");
}

CddNmax cdd_nmax(CddRegime regime, double phi) {
  if (!(phi > 0.0))
    throw std::invalid_argument("cdd_nmax: phase must be positive");
  const auto log4 = [](double x) { return std::log(x) / std::log(4.0); };
  double raw = 0.0;
  switch (regime) {
    case CddRegime::generic:
      raw = -log4(phi) - 1.5;
      break;
    case CddRegime::BI_zero:
      raw = -3.0 * log4(phi) + log4(3.0) - 2.5;
      break;
    case CddRegime::memory:
      throw std::invalid_argument("cdd_nmax: memory setting has no maximal level "
                                  "(deeper nesting keeps helping)");
  }
  CddNmax out;
  out.n_max = static_cast<int>(std::ceil(raw));
  out.useful = out.n_max >= 1;
  return out;
}

std::vector<CddTrace> cdd_sweep_exact(const SystemBathHamiltonian& h, int n_max,
                                      Setting setting, double tau_or_total,
                                      const NoisyGateSet* gates) {
  if (n_max < 0) throw std::invalid_argument("cdd_sweep_exact: n_max must be nonnegative");
  if (!(tau_or_total > 0.0))
    throw std::invalid_argument("cdd_sweep_exact: time must be positive");

  const double phi_b = h.phi_b();
  const double phi_sb = h.phi_sb();
  const double eta = gates ? gates->ctrl.eta() : 0.0;

  std::vector<CddTrace> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    CddTrace t;
    t.level = n;
    const auto sched = cdd_schedule(n, setting, tau_or_total);
    const double time_scale = sched.total_time() / h.tau();
    const double pulses = static_cast<double>(sched.gate_count());
    const double estimate = time_scale * (phi_b + phi_sb) + pulses * eta;

    const auto fallback = [&]() {
      const CddRegime regime =
          setting == Setting::computational ? CddRegime::generic : CddRegime::memory;
      t.source = CddTrace::Source::bound;
      t.phi_sb = cdd_bound(regime, phi_b, phi_sb, n);
      const double growth = setting == Setting::computational ? std::exp2(2.0 * n) : 1.0;
      t.phi_b = growth * (tau_or_total / h.tau()) * phi_b;
    };

    if (estimate >= kPi - 0.1) {
      fallback();
    } else {
      try {
        const CMatrix u = gates ? propagate_noisy(sched, h, *gates) : propagate_ideal(sched, h);
        const EffectiveGenerator eg = effective_generator(u, h.split());
        t.source = CddTrace::Source::exact_log;
        t.phi_b = eg.phi_b;
        t.phi_sb = eg.phi_sb;
      } catch (const BranchAmbiguityError&) {
        fallback();
      }
    }
    out.push_back(t);
  }
  return out;
}

EffectiveGenerator cdd_estimator(const SystemBathHamiltonian& h, int n, CddRegime regime) {
  if (n < 1) throw std::invalid_argument("cdd_estimator: level must be at least 1");
  const double tau = h.tau();
  const CMatrix bi = h.bath_op(PauliAxis::I);
  const CMatrix bx = h.bath_op(PauliAxis::X);
  const CMatrix by = h.bath_op(PauliAxis::Y);
  const CMatrix bz = h.bath_op(PauliAxis::Z);
  const Eigen::Index db = h.bath_dim();
  const Complex im(0.0, 1.0);

  CMatrix ti = CMatrix::Zero(db, db);
  CMatrix tx = CMatrix::Zero(db, db);
  CMatrix ty = CMatrix::Zero(db, db);
  CMatrix tz = CMatrix::Zero(db, db);

  switch (regime) {
    case CddRegime::generic: {
      // level-1 seed, then each nesting step commutes with the growing pure
      // bath term; the X and Y parts pick up -4i and -2i ad_{tB_I}
      ti = 4.0 * tau * bi;
      tx = -4.0 * im * tau * tau * comm(bi, bx);
      ty = -2.0 * tau * tau * (im * comm(bi, by) + acomm(bx, bz));
      for (int m = 2; m <= n; ++m) {
        tx = -4.0 * im * comm(ti, tx);
        ty = -2.0 * im * comm(ti, ty);
        ti = 4.0 * ti;
      }
      break;
    }
    case CddRegime::BI_zero: {
      if (h.phi_b() > 1e-12)
        throw std::invalid_argument("cdd_estimator: BI_zero regime requires B_I = 0");
      const double t2 = tau * tau;
      const double t3 = t2 * tau;
      const CMatrix tb10 =
          im * (2.0 / 3.0) * t3 * (comm(bz, acomm(bx, by)) - comm(by, acomm(bx, bz)));
      const CMatrix tb12 = -2.0 * t2 * acomm(bx, bz);
      const CMatrix tb13 = 2.0 * t3 * acomm(bx, acomm(bx, bz));
      if (n == 1) {
        ti = tb10;
        ty = tb12;
        tz = tb13;
      } else {
        ti = std::exp2(2.0 * (n - 1)) * tb10;
        ty = tb12;
        for (int k = 1; k <= n - 1; ++k) ty = -im * std::exp2(2.0 * k - 1.0) * comm(tb10, ty);
      }
      break;
    }
    case CddRegime::memory:
      throw std::invalid_argument("cdd_estimator: no closed form for the memory setting");
  }

  CMatrix omega = kron(pauli(PauliAxis::I), ti) + kron(pauli(PauliAxis::X), tx) +
                  kron(pauli(PauliAxis::Y), ty) + kron(pauli(PauliAxis::Z), tz);
  return split_generator(omega, h.split());
}

std::vector<CddTrace> noisy_cdd_recurrence(double phi_b, double phi_sb, double eta, int n_max,
                                           Setting setting) {
  if (phi_b < 0.0 || phi_sb < 0.0 || eta < 0.0)
    throw std::invalid_argument("noisy_cdd_recurrence: parameters must be nonnegative");
  if (n_max < 0) throw std::invalid_argument("noisy_cdd_recurrence: n_max must be nonnegative");
  std::vector<CddTrace> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  double pb = phi_b;
  double psb = phi_sb;
  out.push_back({0, pb, psb, CddTrace::Source::recurrence});
  for (int n = 1; n <= n_max; ++n) {
    if (setting == Setting::computational) {
      psb = 12.0 * pb * psb + 4.0 * psb * psb + 4.0 * eta;
      pb *= 4.0;
    } else {
      psb = 0.5 * phi_b * psb + 4.0 * eta;
    }
    out.push_back({n, pb, psb, CddTrace::Source::recurrence});
  }
  return out;
}

double memory_plateau(double phi_b, double eta) {
  if (eta < 0.0) throw std::invalid_argument("memory_plateau: eta must be nonnegative");
  if (!(phi_b >= 0.0 && phi_b < 2.0))
    throw std::invalid_argument("memory_plateau: requires 0 <= phi_b < 2");
  return 4.0 * eta / (1.0 - 0.5 * phi_b);
}

std::vector<double> GridSpec::values() const {
  if (!explicit_values.empty()) {
    for (double v : explicit_values)
      if (v < 0.0) throw std::invalid_argument("GridSpec: explicit values must be nonnegative");
    return explicit_values;
  }
  if (!(min > 0.0) || !(max >= min))
    throw std::invalid_argument("GridSpec: need 0 < min <= max for a log grid");
  if (points < 1) throw std::invalid_argument("GridSpec: need at least one point");
  std::vector<double> v(static_cast<std::size_t>(points));
  if (points == 1) {
    v[0] = min;
    return v;
  }
  const double ratio = max / min;
  for (int i = 0; i < points; ++i)
    v[static_cast<std::size_t>(i)] =
        min * std::pow(ratio, static_cast<double>(i) / static_cast<double>(points - 1));
  v.back() = max;  // pin the endpoint against pow roundoff
  return v;
}

std::string GridSpec::describe(const std::string& name) const {
  std::ostringstream os;
  if (!explicit_values.empty()) {
    os << name << ":explicit[";
    for (std::size_t i = 0; i < explicit_values.size(); ++i) {
      if (i) os << ";";
      os << format_double(explicit_values[i]);
    }
    os << "]";
  } else {
    os << name << ":log[" << format_double(min) << "," << format_double(max) << "]x" << points;
  }
  return os.str();
}

SweepReport breakeven_map(const BreakevenMapConfig& cfg) {
  if (cfg.samples_per_cell < 1)
    throw std::invalid_argument("breakeven_map: need at least one sample per cell");
  if (cfg.measure == BreakevenMeasure::infidelity && cfg.states_per_channel < 1)
    throw std::invalid_argument("breakeven_map: need at least one state per channel");

  const std::vector<double> bs = cfg.grid_b.values();
  const std::vector<double> sbs = cfg.grid_sb.values();
  const std::size_t cells = bs.size() * sbs.size();
  const std::size_t samples = static_cast<std::size_t>(cfg.samples_per_cell);
  const bool phase_measure = cfg.measure == BreakevenMeasure::error_phase;
  const std::size_t rows_per_cell = phase_measure ? 4 : 3;

  NoisyGateSet gates;
  gates.ctrl = cfg.eta > 0.0 ? unitary_control_error(cfg.eta, cfg.n_axis) : ControlErrorSpec::none();

  SweepReport report;
  report.seed = cfg.seed;
  report.grid_spec = cfg.grid_b.describe("phiB") + " " + cfg.grid_sb.describe("phiSB");
  report.config["tool"] = "breakeven-map";
  report.config["measure"] = phase_measure ? "error_phase" : "infidelity";
  report.config["eta"] = format_double(cfg.eta);
  report.config["samples_per_cell"] = std::to_string(cfg.samples_per_cell);
  report.config["bath_dim"] = std::to_string(cfg.bath_dim);
  {
    std::ostringstream ax;
    ax << format_double(cfg.n_axis.x()) << ";" << format_double(cfg.n_axis.y()) << ";"
       << format_double(cfg.n_axis.z());
    report.config["n_axis"] = ax.str();
  }
  if (!phase_measure)
    report.config["states_per_channel"] = std::to_string(cfg.states_per_channel);
  report.rows.assign(cells * rows_per_cell, SweepRow{});

  parallel_for(cells, cfg.threads, [&](std::size_t cell) {
    const double phi_b = bs[cell / sbs.size()];
    const double phi_sb = sbs[cell % sbs.size()];
    SweepRow* rows = report.rows.data() + cell * rows_per_cell;
    const auto emit = [&](std::size_t k, const char* measure, double value,
                          const std::string& flag) {
      rows[k].phi_b = phi_b;
      rows[k].phi_sb = phi_sb;
      rows[k].eta = cfg.eta;
      rows[k].n = 1;
      rows[k].measure = measure;
      rows[k].value = value;
      rows[k].flag = flag;
    };

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (phi_sb == 0.0) {
      // nothing to decouple; the ratio is 0/0
      if (phase_measure) {
        emit(0, "ratio_phase_median", nan, "degenerate");
        emit(1, "ratio_phase_mean", nan, "degenerate");
        emit(2, "ratio_phase_min", nan, "degenerate");
        emit(3, "ratio_phase_max", nan, "degenerate");
      } else {
        emit(0, "ratio_infidelity", nan, "degenerate");
        emit(1, "infidelity_dd", nan, "degenerate");
        emit(2, "infidelity_bare", nan, "degenerate");
      }
      return;
    }

    if (phase_measure) {
      std::vector<double> ratios;
      ratios.reserve(samples);
      bool ambiguous = false;
      for (std::size_t s = 0; s < samples; ++s) {
        const auto h = sample_random(phi_b, phi_sb, cfg.bath_dim, cfg.seed,
                                     cell * samples + s);
        const auto sched = cdd_schedule(1, Setting::computational, h.tau());
        try {
          const CMatrix u = propagate_noisy(sched, h, gates);
          const EffectiveGenerator eg = effective_generator(u, h.split());
          ratios.push_back(eg.phi_sb / phi_sb);
        } catch (const BranchAmbiguityError&) {
          ambiguous = true;
        }
      }
      const std::string flag = ratios.empty()  ? "branch_ambiguous"
                               : ambiguous     ? "branch_ambiguous"
                                               : "ok";
      if (ratios.empty()) {
        emit(0, "ratio_phase_median", nan, flag);
        emit(1, "ratio_phase_mean", nan, flag);
        emit(2, "ratio_phase_min", nan, flag);
        emit(3, "ratio_phase_max", nan, flag);
        return;
      }
      double mean = 0.0;
      for (double r : ratios) mean += r;
      mean /= static_cast<double>(ratios.size());
      emit(0, "ratio_phase_median", median_of(ratios), flag);
      emit(1, "ratio_phase_mean", mean, flag);
      emit(2, "ratio_phase_min", *std::min_element(ratios.begin(), ratios.end()), flag);
      emit(3, "ratio_phase_max", *std::max_element(ratios.begin(), ratios.end()), flag);
    } else {
      const SystemSplit split{2, cfg.bath_dim};
      const CMatrix rho_b =
          CMatrix::Identity(cfg.bath_dim, cfg.bath_dim) / static_cast<double>(cfg.bath_dim);
      const auto hamiltonian_at = [&](std::size_t s) {
        return sample_random(phi_b, phi_sb, cfg.bath_dim, cfg.seed, cell * samples + s);
      };
      const auto dd_ensemble = [&](std::size_t s) {
        const auto h = hamiltonian_at(s);
        const auto sched = cdd_schedule(1, Setting::computational, h.tau());
        return ChannelSample{propagate_noisy(sched, h, gates), rho_b, split};
      };
      const auto bare_ensemble = [&](std::size_t s) {
        const auto h = hamiltonian_at(s);
        return ChannelSample{exp_generator(h.tau() * h.joint()), rho_b, split};
      };
      std::uint64_t state_seed = cfg.seed;
      state_seed = splitmix64(state_seed) ^ (0x9e3779b97f4a7c15ull * (cell + 1));
      const double inf_dd = worst_case_infidelity(dd_ensemble, cfg.samples_per_cell,
                                                  cfg.states_per_channel, state_seed);
      const double inf_bare = worst_case_infidelity(bare_ensemble, cfg.samples_per_cell,
                                                    cfg.states_per_channel, state_seed);
      if (inf_bare == 0.0) {
        emit(0, "ratio_infidelity", nan, "degenerate");
        emit(1, "infidelity_dd", inf_dd, "degenerate");
        emit(2, "infidelity_bare", inf_bare, "degenerate");
      } else {
        emit(0, "ratio_infidelity", inf_dd / inf_bare, "ok");
        emit(1, "infidelity_dd", inf_dd, "ok");
        emit(2, "infidelity_bare", inf_bare, "ok");
      }
    }
  });

  return report;
}

}  // namespace dd
