#ifndef DD_SEQUENCES_HPP
#define DD_SEQUENCES_HPP

#include <string>
#include <vector>

#include "dd/model.hpp"

namespace dd {

enum class Setting { computational, memory };

enum class PulseLabel { X, Y, Z };  // Y appears only in merged schedules

// One decoupling slot: a free interval followed by zero or more elementary
// gates applied back to back. CDD recursion boundaries put the outer pulse
// immediately after the inner block's last pulse, so boundary slots carry
// more than one gate unless merging is requested.
struct ScheduleSlot {
  std::vector<PulseLabel> gates;
};

struct DDSchedule {
  std::vector<ScheduleSlot> slots;  // 4^n slots in time order
  double interval = 1.0;            // tau_0, the free-evolution length per slot
  Setting setting = Setting::computational;
  int level = 1;
  bool merged = false;

  double total_time() const { return interval * static_cast<double>(slots.size()); }
  std::size_t gate_count() const;
};

// CDD schedule of concatenation level n (n = 1 is PDD, n = 0 bare
// evolution). In the computational setting tau_or_total is the slot interval
// tau; in the memory setting it is the total time T, split as T / 4^n.
// With merge_adjacent_pulses, back-to-back boundary gates are compiled into
// a single Pauli (or dropped when they cancel), changing the gate count and
// hence the noise model; default keeps them separate.
DDSchedule cdd_schedule(int n, Setting setting, double tau_or_total,
                        bool merge_adjacent_pulses = false);

// Product of the schedule's ideal 2x2 pulse matrices (operator order);
// proportional to the identity for every CDD level.
CMatrix ideal_pulse_product(const DDSchedule& schedule);

// Exact product of ideal instantaneous Pauli pulses and free-evolution
// exponentials. The known scalar phase of the ideal pulse product is divided
// out, so the result tends to the identity as the Hamiltonian is switched
// off and its log is the physically meaningful effective generator.
CMatrix propagate_ideal(const DDSchedule& schedule, const SystemBathHamiltonian& h);

struct NoisyGateSet {
  ControlErrorSpec ctrl = ControlErrorSpec::none();
  PulseWidthSpec width = PulseWidthSpec(0.0);
};

// As propagate_ideal, with each gate realized as e^{-i tau_P (H_i + H)}
// e^{-i Gamma_i} and free intervals shortened to tau_0 - tau_P. At delta = 0
// the rotation factor is the bare Pauli and only the control kick remains.
CMatrix propagate_noisy(const DDSchedule& schedule, const SystemBathHamiltonian& h,
                        const NoisyGateSet& gates);

// "t <tab> label" lines, one per gate, in time order.
std::string dump_schedule(const DDSchedule& schedule);

const char* to_string(PulseLabel label);

}  // namespace dd

#endif
