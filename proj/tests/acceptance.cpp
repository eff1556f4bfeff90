// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
// with its measured quantities and pinned tolerances; the process exits
// nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "dd/analysis.hpp"
#include "dd/rng.hpp"

using namespace dd;

namespace {

int failures = 0;

std::string str(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

template <typename Body>
void criterion(int idx, const char* name, Body&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = str("exception: %s", e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!pass) ++failures;
  std::printf("criterion %02d %-34s %s  %s  [%.1f s]\n", idx, name, pass ? "PASS" : "FAIL",
              detail.c_str(), secs);
  std::fflush(stdout);
}

double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream) {
  auto rng = make_rng(seed, stream);
  CMatrix a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(normal(rng), normal(rng));
  CMatrix h = 0.5 * (a + a.adjoint());
  return h / op_norm(h);
}

std::vector<double> decade(double hi, double lo, int points) {
  std::vector<double> out;
  for (int k = 0; k < points; ++k)
    out.push_back(hi * std::pow(lo / hi, static_cast<double>(k) / (points - 1)));
  return out;
}

}  // namespace

int main() {
  criterion(1, "first-order decoupling", [](std::string& detail) {
    double worst_pauli = 0.0, worst_ratio = 0.0;
    for (int s = 0; s < 100; ++s) {
      const auto h = sample_random(0.01, 0.01, 2, 100, static_cast<std::uint64_t>(s));
      const auto omega1 = magnus_terms(pdd_segments(h), 1)[0];
      const auto parts = pauli_decompose(omega1, h.split());
      for (int a = 1; a < 4; ++a) worst_pauli = std::max(worst_pauli, op_norm(parts[a]));
      const auto sched = cdd_schedule(1, Setting::computational, h.tau());
      const auto gen = effective_generator(propagate_ideal(sched, h), h.split());
      worst_ratio = std::max(worst_ratio, gen.phi_sb / h.phi_sb());
    }
    detail = str("worst system-Pauli %.3g (<=1e-12), worst Phi_SB/phi_SB %.3g (<=0.2)",
                 worst_pauli, worst_ratio);
    return worst_pauli <= 1e-12 && worst_ratio <= 0.2;
  });

  criterion(2, "truncation error scaling", [](std::string& detail) {
    std::array<CMatrix, 3> base = {random_hermitian(4, 21, 0), random_hermitian(4, 21, 1),
                                   random_hermitian(4, 21, 2)};
    std::vector<double> xs, ys;
    for (double s : decade(0.2, 0.02, 5)) {
      SegmentList segs;
      for (const auto& b : base) segs.push_back(s * b);
      const auto terms = magnus_terms(segs, 3);
      CMatrix sum = CMatrix::Zero(4, 4);
      for (const auto& t : terms) sum += t;
      CMatrix u = CMatrix::Identity(4, 4);
      for (const auto& o : segs) u = exp_generator(o) * u;
      xs.push_back(s);
      ys.push_back(op_norm(sum - log_unitary(u)));
    }
    const double slope = slope_fit(xs, ys);
    detail = str("slope %.3f (want 4 +- 0.3)", slope);
    return std::abs(slope - 4.0) <= 0.3;
  });

  criterion(3, "decoupling order per level", [](std::string& detail) {
    const std::vector<double> phis = {1e-3, 2e-3, 4e-3, 7e-3, 1e-2};
    std::vector<double> slopes;
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
      std::vector<double> xs, ys;
      for (double phi : phis) {
        const auto h = sample_random(phi, phi, 2, 23);
        const auto trace = cdd_sweep_exact(h, n, Setting::computational, h.tau());
        const auto& top = trace[static_cast<std::size_t>(n)];
        if (top.source != CddTrace::Source::exact_log) ok = false;
        xs.push_back(phi);
        ys.push_back(top.phi_sb);
      }
      slopes.push_back(slope_fit(xs, ys));
      ok = ok && std::abs(slopes.back() - (n + 1)) <= 0.3;
    }
    detail = str("slopes %.3f, %.3f, %.3f (want n+1 +- 0.3)", slopes[0], slopes[1], slopes[2]);
    return ok;
  });

  criterion(4, "turnaround level", [](std::string& detail) {
    int bound_argmin = 0;
    double bound_best = cdd_bound(CddRegime::generic, 0.001, 0.001, 0);
    for (int n = 1; n <= 10; ++n) {
      const double v = cdd_bound(CddRegime::generic, 0.001, 0.001, n);
      if (v < bound_best) {
        bound_best = v;
        bound_argmin = n;
      }
    }
    bool exact_ok = true;
    std::vector<int> argmins;
    for (int s = 0; s < 10; ++s) {
      const auto h = sample_random(0.001, 0.001, 2, 4, static_cast<std::uint64_t>(s));
      const auto trace = cdd_sweep_exact(h, 5, Setting::computational, h.tau());
      int argmin = -1;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& t : trace) {
        if (t.source != CddTrace::Source::exact_log) continue;
        if (t.phi_sb < best) {
          best = t.phi_sb;
          argmin = t.level;
        }
      }
      argmins.push_back(argmin);
      exact_ok = exact_ok && (argmin == 3 || argmin == 4 || argmin == 5);
    }
    std::string mins;
    for (int a : argmins) mins += str("%d", a);
    detail = str("bound argmin %d (want 4), exact argmins %s (want within 3..5)", bound_argmin,
                 mins.c_str());
    return bound_argmin == 4 && exact_ok;
  });

  criterion(5, "maximal useful level", [](std::string& detail) {
    const auto generic = cdd_nmax(CddRegime::generic, 0.001);
    const auto no_bath = cdd_nmax(CddRegime::BI_zero, 0.001);
    detail = str("generic %d (want 4), interaction-only %d (want 14)", generic.n_max,
                 no_bath.n_max);
    return generic.n_max == 4 && generic.useful && no_bath.n_max == 14 && no_bath.useful;
  });

  criterion(6, "breakeven region maps", [](std::string& detail) {
    const std::vector<double> etas = {0.0, 0.02, 0.06, 0.1, 0.14};
    BreakevenMapConfig cfg;
    cfg.grid_b.points = 21;
    cfg.grid_sb.points = 21;
    cfg.samples_per_cell = 20;
    cfg.states_per_channel = 100;
    cfg.seed = 3;
    std::vector<std::size_t> phase_counts, infid_counts;
    bool contains = true;
    for (double eta : etas) {
      cfg.eta = eta;
      cfg.measure = BreakevenMeasure::error_phase;
      const auto phase = breakeven_map(cfg);
      std::size_t pc = 0;
      for (const auto& row : phase.rows) {
        if (row.measure != "ratio_phase_max") continue;
        if (row.flag == "ok" && row.value < 1.0) ++pc;
        if (eta == 0.0 && 12.0 * row.phi_b + 4.0 * row.phi_sb <= 1.0 &&
            !(row.flag == "ok" && row.value < 1.0))
          contains = false;
      }
      phase_counts.push_back(pc);

      cfg.measure = BreakevenMeasure::infidelity;
      const auto infid = breakeven_map(cfg);
      std::size_t ic = 0;
      for (const auto& row : infid.rows)
        if (row.measure == "ratio_infidelity" && row.flag == "ok" && row.value < 1.0) ++ic;
      infid_counts.push_back(ic);
    }
    bool monotone = true, dominated = true;
    std::string counts;
    for (std::size_t k = 0; k < etas.size(); ++k) {
      if (k > 0 && phase_counts[k] > phase_counts[k - 1]) monotone = false;
      if (infid_counts[k] < phase_counts[k]) dominated = false;
      counts += str("%s%zu/%zu", k ? " " : "", phase_counts[k], infid_counts[k]);
    }
    detail = str("phase/infidelity cells per eta: %s; contains analytic %s", counts.c_str(),
                 contains ? "yes" : "NO");
    return !phase_counts.empty() && phase_counts[0] > 0 && contains && monotone && dominated;
  });

  criterion(7, "noisy recurrence behavior", [](std::string& detail) {
    bool plateau_ok = true;
    std::string gaps;
    for (double eta : {1e-3, 1e-6, 1e-10}) {
      const auto traj = noisy_cdd_recurrence(0.001, 0.001, eta, 25, Setting::memory);
      const double plateau = memory_plateau(0.001, eta);
      const double rel = std::abs(traj.back().phi_sb - plateau) / plateau;
      gaps += str("%s%.2g", gaps.empty() ? "" : " ", rel);
      plateau_ok = plateau_ok && rel <= 0.1;
    }
    const auto comp = noisy_cdd_recurrence(0.001, 0.001, 1e-3, 10, Setting::computational);
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& t : comp) lowest = std::min(lowest, t.phi_sb);
    detail = str("plateau gaps %s (<=0.1), computational floor %.3g (>=1e-3)", gaps.c_str(),
                 lowest);
    return plateau_ok && lowest >= 1e-3;
  });

  criterion(8, "infidelity below sqrt(2) phase", [](std::string& detail) {
    int slack = 0, tight = 0;
    for (int i = 0; i < 1000; ++i) {
      auto rng = make_rng(17, static_cast<std::uint64_t>(i));
      const double phi_b = 0.05 * uniform_unit(rng);
      const double phi_sb = 0.05 * uniform_unit(rng);
      const auto h = sample_random(phi_b, phi_sb, 2, 400 + static_cast<std::uint64_t>(i));
      ChannelSample chan;
      chan.u = exp_generator(h.tau() * h.joint());
      const CVector psi = haar_state(2, 900 + static_cast<std::uint64_t>(i), 0);
      chan.rho_bath = psi * psi.adjoint();
      chan.split = h.split();
      const double worst = worst_case_infidelity([&](std::uint64_t) { return chan; }, 1, 32,
                                                 31 + static_cast<std::uint64_t>(i));
      const double cap = std::sqrt(2.0) * h.phi_sb();
      if (worst <= 1.5 * cap + 1e-15) ++slack;
      if (worst <= cap + 1e-15) ++tight;
    }
    detail = str("%d/1000 within 1.5x bound (want 1000), %d/1000 within bound (want >=990)",
                 slack, tight);
    return slack == 1000 && tight >= 990;
  });

  criterion(9, "interaction norm inequality", [](std::string& detail) {
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto dim = static_cast<Eigen::Index>(2 + i % 3);
      auto rng = make_rng(55, static_cast<std::uint64_t>(i));
      const double scale = 0.01 + uniform_unit(rng);
      std::array<CMatrix, 3> ops = {
          scale * random_hermitian(dim, 56, static_cast<std::uint64_t>(3 * i)),
          scale * random_hermitian(dim, 56, static_cast<std::uint64_t>(3 * i + 1)),
          scale * random_hermitian(dim, 56, static_cast<std::uint64_t>(3 * i + 2))};
      const auto check = check_norm_inequality(ops);
      if (check.lhs > check.rhs + 1e-12) ++violations;
    }
    detail = str("%d violations in 10000 draws (want 0)", violations);
    return violations == 0;
  });

  criterion(10, "pulse-error generator accuracy", [](std::string& detail) {
    // eta and delta shrink together at fixed H, so every dropped
    // second-order correction scales as s^2
    const auto h = sample_random(0.01, 0.02, 2, 7);
    std::vector<double> xs, ys;
    for (double s : decade(1.0, 0.1, 5)) {
      const auto ctrl =
          unitary_control_error(0.04 * s, Eigen::Vector3d(1.0, 0.0, 1.0).normalized());
      const PulseWidthSpec width(0.05 * s);
      const auto exact = k_generators_exact(h, ctrl, width);
      const auto leading = k_generators_leading(h, ctrl, width);
      double err = 0.0;
      for (std::size_t g = 0; g < 4; ++g) err += op_norm(exact[g] - leading[g]);
      xs.push_back(s);
      ys.push_back(err);
    }
    const double slope = slope_fit(xs, ys);
    detail = str("slope %.3f (want 2 +- 0.3)", slope);
    return std::abs(slope - 2.0) <= 0.3;
  });

  criterion(11, "estimator component scaling", [](std::string& detail) {
    const auto base = sample_random(0.01, 0.01, 2, 31);
    const std::array<CMatrix, 4> ops = {base.bath_op(PauliAxis::I), base.bath_op(PauliAxis::X),
                                        base.bath_op(PauliAxis::Y), base.bath_op(PauliAxis::Z)};
    bool ok = true;
    std::string slopes;
    for (int n : {2, 3}) {
      std::vector<double> taus, eb, esb;
      for (double s : {1.0, 0.7, 0.5, 0.35, 0.25}) {
        const auto h = SystemBathHamiltonian::assemble(ops, s);
        const auto sched = cdd_schedule(n, Setting::computational, h.tau());
        const auto exact = effective_generator(propagate_ideal(sched, h), h.split());
        const auto est = cdd_estimator(h, n);
        taus.push_back(s);
        eb.push_back(op_norm(exact.omega_b - est.omega_b));
        esb.push_back(op_norm(exact.omega_sb - est.omega_sb));
      }
      const double slope_b = slope_fit(taus, eb);
      const double slope_sb = slope_fit(taus, esb);
      slopes += str("%sn=%d: %.3f/%.3f", slopes.empty() ? "" : ", ", n, slope_b, slope_sb);
      ok = ok && std::abs(slope_b - 3.0) <= 0.3 && std::abs(slope_sb - (n + 2)) <= 0.3;
    }
    detail = str("bath/interaction slopes %s (want 3 +- 0.3 and n+2 +- 0.3)", slopes.c_str());
    return ok;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
