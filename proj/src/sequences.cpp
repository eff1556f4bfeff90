#include "dd/sequences.hpp"

#include <cmath>
#include <cstdio>

namespace dd {

namespace {

constexpr double kPi = 3.141592653589793238462643;

PauliAxis axis_of(PulseLabel label) {
  switch (label) {
    case PulseLabel::X: return PauliAxis::X;
    case PulseLabel::Y: return PauliAxis::Y;
    case PulseLabel::Z: return PauliAxis::Z;
  }
  throw std::logic_error("axis_of: bad label");
}

// Compile the trailing pair of a slot into a single gate: equal Paulis
// cancel, distinct ones multiply to the third (the scalar phase is
// reabsorbed during propagation, so only the label matters here).
void merge_tail(std::vector<PulseLabel>& gates) {
  while (gates.size() >= 2) {
    PulseLabel b = gates.back();
    PulseLabel a = gates[gates.size() - 2];
    gates.pop_back();
    gates.pop_back();
    if (a == b) continue;
    int third = 0 + 1 + 2 - static_cast<int>(a) - static_cast<int>(b);
    gates.push_back(static_cast<PulseLabel>(third));
  }
}

}  // namespace

std::size_t DDSchedule::gate_count() const {
  std::size_t n = 0;
  for (const ScheduleSlot& s : slots) n += s.gates.size();
  return n;
}

const char* to_string(PulseLabel label) {
  switch (label) {
    case PulseLabel::X: return "X";
    case PulseLabel::Y: return "Y";
    case PulseLabel::Z: return "Z";
  }
  return "?";
}

DDSchedule cdd_schedule(int n, Setting setting, double tau_or_total,
                        bool merge_adjacent_pulses) {
  if (n < 0) throw std::invalid_argument("cdd_schedule: level must be nonnegative");
  if (tau_or_total <= 0.0) throw std::invalid_argument("cdd_schedule: time must be positive");

  DDSchedule out;
  out.level = n;
  out.setting = setting;
  out.merged = merge_adjacent_pulses;
  out.interval = setting == Setting::memory ? tau_or_total / std::pow(4.0, n) : tau_or_total;

  out.slots = {ScheduleSlot{}};
  const PulseLabel cycle[4] = {PulseLabel::X, PulseLabel::Z, PulseLabel::X, PulseLabel::Z};
  for (int lvl = 1; lvl <= n; ++lvl) {
    std::vector<ScheduleSlot> next;
    next.reserve(out.slots.size() * 4);
    for (PulseLabel outer : cycle) {
      next.insert(next.end(), out.slots.begin(), out.slots.end());
      next.back().gates.push_back(outer);
      if (merge_adjacent_pulses) merge_tail(next.back().gates);
    }
    out.slots = std::move(next);
  }
  return out;
}

CMatrix ideal_pulse_product(const DDSchedule& schedule) {
  CMatrix prod = CMatrix::Identity(2, 2);
  for (const ScheduleSlot& slot : schedule.slots)
    for (PulseLabel g : slot.gates) prod = pauli(axis_of(g)) * prod;
  return prod;
}

CMatrix propagate_ideal(const DDSchedule& schedule, const SystemBathHamiltonian& h) {
  const Eigen::Index dim = 2 * h.bath_dim();
  const CMatrix free_step = exp_generator(schedule.interval * h.joint());
  const CMatrix bath_eye = CMatrix::Identity(h.bath_dim(), h.bath_dim());

  CMatrix u = CMatrix::Identity(dim, dim);
  CMatrix phase_track = CMatrix::Identity(2, 2);
  for (const ScheduleSlot& slot : schedule.slots) {
    u = free_step * u;
    for (PulseLabel g : slot.gates) {
      u = kron(pauli(axis_of(g)), bath_eye) * u;
      phase_track = pauli(axis_of(g)) * phase_track;
    }
  }
  // The ideal pulse product is a scalar; divide it out so that u -> 1 as
  // H -> 0 and the principal log stays on the physical branch.
  return u / phase_track(0, 0);
}

CMatrix propagate_noisy(const DDSchedule& schedule, const SystemBathHamiltonian& h,
                        const NoisyGateSet& gates) {
  const double tau0 = schedule.interval;
  const double tau_p = gates.width.delta * tau0;
  if (tau_p >= tau0)
    throw std::invalid_argument("propagate_noisy: pulse width must be below the slot interval");
  const Eigen::Index b = h.bath_dim();
  const Eigen::Index dim = 2 * b;
  const CMatrix joint = h.joint();
  const CMatrix bath_eye = CMatrix::Identity(b, b);

  const bool instantaneous = gates.width.delta == 0.0;
  const bool noisy_ctrl = gates.ctrl.eta() > 0.0;

  // One rotation factor and one control kick per label, reused across slots.
  std::array<CMatrix, 3> rot, kick, bare;
  std::array<bool, 3> have{false, false, false};
  auto prepare = [&](PulseLabel label) {
    int idx = static_cast<int>(label);
    if (have[idx]) return;
    have[idx] = true;
    bare[idx] = pauli(axis_of(label));
    CMatrix gamma;
    switch (label) {
      case PulseLabel::X: gamma = gates.ctrl.gamma_x_joint(b); break;
      case PulseLabel::Z: gamma = gates.ctrl.gamma_z_joint(b); break;
      case PulseLabel::Y:
        if (noisy_ctrl)
          throw std::invalid_argument(
              "propagate_noisy: merged Y gates have no control-error generator; "
              "use eta = 0 or an unmerged schedule");
        gamma = CMatrix::Zero(dim, dim);
        break;
    }
    kick[idx] = exp_generator(gamma);
    if (!instantaneous)
      rot[idx] = exp_generator((kPi / 2.0) * kron(bare[idx], bath_eye) + tau_p * joint);
  };

  const CMatrix free_step = exp_generator((tau0 - tau_p) * joint);
  CMatrix u = CMatrix::Identity(dim, dim);
  CMatrix phase_track = CMatrix::Identity(2, 2);
  const Complex mi(0.0, -1.0);
  for (const ScheduleSlot& slot : schedule.slots) {
    u = free_step * u;
    for (PulseLabel g : slot.gates) {
      prepare(g);
      int idx = static_cast<int>(g);
      if (instantaneous) {
        u = kron(bare[idx], bath_eye) * (kick[idx] * u);
        phase_track = bare[idx] * phase_track;
      } else {
        u = rot[idx] * (kick[idx] * u);
        // zero-noise value of the rotation factor is -i sigma
        phase_track = (mi * bare[idx]) * phase_track;
      }
    }
  }
  return u / phase_track(0, 0);
}

std::string dump_schedule(const DDSchedule& schedule) {
  std::string out;
  char line[64];
  for (std::size_t i = 0; i < schedule.slots.size(); ++i) {
    double t = schedule.interval * static_cast<double>(i + 1);
    for (PulseLabel g : schedule.slots[i].gates) {
      std::snprintf(line, sizeof line, "%.17g\t%s\n", t, to_string(g));
      out += line;
    }
  }
  return out;
}

}  // namespace dd
