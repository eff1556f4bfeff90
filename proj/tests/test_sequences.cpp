#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dd/magnus.hpp"
#include "dd/metrics.hpp"
#include "dd/sequences.hpp"

using namespace dd;

namespace {

CMatrix lift(const CMatrix& s, Eigen::Index bath_dim) {
  return kron(s, CMatrix::Identity(bath_dim, bath_dim));
}

}  // namespace

TEST_CASE("schedule shapes: slot counts, gate counts, intervals") {
  auto bare = cdd_schedule(0, Setting::computational, 0.5);
  CHECK(bare.slots.size() == 1);
  CHECK(bare.gate_count() == 0);
  CHECK(bare.total_time() == doctest::Approx(0.5));

  auto pdd = cdd_schedule(1, Setting::computational, 0.5);
  REQUIRE(pdd.slots.size() == 4);
  CHECK(pdd.gate_count() == 4);
  REQUIRE(pdd.slots[0].gates.size() == 1);
  CHECK(pdd.slots[0].gates[0] == PulseLabel::X);
  CHECK(pdd.slots[1].gates[0] == PulseLabel::Z);
  CHECK(pdd.slots[2].gates[0] == PulseLabel::X);
  CHECK(pdd.slots[3].gates[0] == PulseLabel::Z);
  CHECK(pdd.total_time() == doctest::Approx(2.0));

  auto cdd2 = cdd_schedule(2, Setting::computational, 1.0);
  CHECK(cdd2.slots.size() == 16);
  CHECK(cdd2.gate_count() == 20);  // 16 inner + 4 outer
  auto cdd3 = cdd_schedule(3, Setting::computational, 1.0);
  CHECK(cdd3.slots.size() == 64);
  CHECK(cdd3.gate_count() == 84);

  auto merged = cdd_schedule(2, Setting::computational, 1.0, true);
  CHECK(merged.slots.size() == 16);
  // block-final slots fuse inner Z with the outer gate: two ZX -> Y, two ZZ cancel
  CHECK(merged.gate_count() == 14);
  CHECK(merged.merged);

  auto mem = cdd_schedule(2, Setting::memory, 1.0);
  CHECK(mem.interval == doctest::Approx(1.0 / 16.0));
  CHECK(mem.total_time() == doctest::Approx(1.0));

  CHECK_THROWS_AS(cdd_schedule(-1, Setting::computational, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(cdd_schedule(1, Setting::computational, 0.0), std::invalid_argument);
}

TEST_CASE("ideal pulse product is a scalar for every level") {
  for (int n = 1; n <= 3; ++n) {
    for (bool merged : {false, true}) {
      auto sched = cdd_schedule(n, Setting::computational, 1.0, merged);
      CMatrix prod = ideal_pulse_product(sched);
      Complex c = prod(0, 0);
      CHECK(std::abs(std::abs(c) - 1.0) < 1e-14);
      CHECK(op_norm(prod - c * CMatrix::Identity(2, 2)) < 1e-14);
    }
  }
}

TEST_CASE("ideal propagation equals the toggling-frame product") {
  auto h = sample_random(0.02, 0.03, 2, 8);
  auto sched = cdd_schedule(1, Setting::computational, h.tau());
  CMatrix u = propagate_ideal(sched, h);
  CHECK(is_unitary(u));
  // PDD in the toggling frame: product of the four toggled exponentials
  auto segs = pdd_segments(h);
  CMatrix toggled = CMatrix::Identity(4, 4);
  for (const CMatrix& o : segs) toggled = exp_generator(o) * toggled;
  CHECK(op_norm(u - toggled) < 1e-13);
}

TEST_CASE("ideal propagation by direct slot product, level 2") {
  auto h = sample_random(0.015, 0.02, 2, 9);
  auto sched = cdd_schedule(2, Setting::computational, h.tau());
  CMatrix e = exp_generator(h.tau() * h.joint());
  CMatrix u = CMatrix::Identity(4, 4);
  Complex phase(1.0, 0.0);
  for (const ScheduleSlot& slot : sched.slots) {
    u = e * u;
    for (PulseLabel g : slot.gates) {
      PauliAxis a = g == PulseLabel::X ? PauliAxis::X
                    : g == PulseLabel::Y ? PauliAxis::Y
                                         : PauliAxis::Z;
      u = lift(pauli(a), 2) * u;
      phase *= (pauli(a) * pauli(a))(0, 0);  // stays 1; tracks shape only
    }
  }
  // divide by the scalar the ideal gate product contributes
  CMatrix gates_only = ideal_pulse_product(sched);
  u /= gates_only(0, 0);
  CHECK(op_norm(u - propagate_ideal(sched, h)) < 1e-12);
}

TEST_CASE("pure-bath Hamiltonians pass through the pulses untouched") {
  CMatrix bi = CMatrix::Zero(2, 2);
  bi(0, 0) = 0.4;
  bi(1, 1) = -0.4;
  CMatrix zero = CMatrix::Zero(2, 2);
  auto h = SystemBathHamiltonian::assemble({bi, zero, zero, zero});
  auto pdd = cdd_schedule(1, Setting::computational, h.tau());
  CMatrix expect = kron(CMatrix::Identity(2, 2), exp_generator(4.0 * h.tau() * bi));
  CHECK(op_norm(propagate_ideal(pdd, h) - expect) < 1e-13);

  auto bare = cdd_schedule(0, Setting::computational, h.tau());
  auto hr = sample_random(0.02, 0.03, 2, 16);
  CHECK(op_norm(propagate_ideal(bare, hr) - exp_generator(hr.tau() * hr.joint())) < 1e-14);
}

TEST_CASE("gate-independent control noise cancels to first order without a bath") {
  std::array<CMatrix, 4> zeros;
  zeros.fill(CMatrix::Zero(2, 2));
  auto h0 = SystemBathHamiltonian::assemble(zeros);
  auto sched = cdd_schedule(1, Setting::computational, 1.0);
  std::vector<double> etas = {0.02, 0.01, 0.005};
  std::vector<double> phases;
  for (double eta : etas) {
    NoisyGateSet gates;
    gates.ctrl = unitary_control_error(eta, Eigen::Vector3d(0.6, 0.0, 0.8));
    auto eff = effective_generator(propagate_noisy(sched, h0, gates), h0.split());
    phases.push_back(eff.phi_sb);
  }
  // second order survives: halving eta quarters the residual
  CHECK(phases[0] > 0.0);
  CHECK(phases[1] == doctest::Approx(phases[0] / 4.0).epsilon(0.05));
  CHECK(phases[2] == doctest::Approx(phases[1] / 4.0).epsilon(0.05));
}

TEST_CASE("canonical phase: switching the Hamiltonian off gives the identity") {
  std::array<CMatrix, 4> zeros;
  zeros.fill(CMatrix::Zero(2, 2));
  auto h0 = SystemBathHamiltonian::assemble(zeros);
  for (int n = 1; n <= 3; ++n) {
    auto sched = cdd_schedule(n, Setting::computational, 1.0);
    CHECK(op_norm(propagate_ideal(sched, h0) - CMatrix::Identity(4, 4)) < 1e-13);
  }
}

TEST_CASE("merged and unmerged schedules propagate identically") {
  auto h = sample_random(0.02, 0.025, 2, 10);
  for (int n = 2; n <= 3; ++n) {
    CMatrix a = propagate_ideal(cdd_schedule(n, Setting::computational, h.tau()), h);
    CMatrix b = propagate_ideal(cdd_schedule(n, Setting::computational, h.tau(), true), h);
    CHECK(op_norm(a - b) < 1e-12);
  }
}

TEST_CASE("noisy propagation reduces to ideal and matches a hand product") {
  auto h = sample_random(0.02, 0.03, 2, 12);
  auto sched = cdd_schedule(1, Setting::computational, h.tau());
  NoisyGateSet off;
  CHECK(op_norm(propagate_noisy(sched, h, off) - propagate_ideal(sched, h)) < 1e-13);

  NoisyGateSet noisy;
  noisy.ctrl = unitary_control_error(0.03, Eigen::Vector3d(0.0, 0.0, 1.0));
  CMatrix kick = exp_generator(noisy.ctrl.gamma_x_joint(2));
  CMatrix e = exp_generator(h.tau() * h.joint());
  CMatrix x = lift(pauli(PauliAxis::X), 2), z = lift(pauli(PauliAxis::Z), 2);
  // time order X, Z, X, Z; each gate is the bare pulse after its control kick
  CMatrix u = z * kick * e * x * kick * e * z * kick * e * x * kick * e;
  u /= (pauli(PauliAxis::Z) * pauli(PauliAxis::X) * pauli(PauliAxis::Z) *
        pauli(PauliAxis::X))(0, 0);
  CHECK(op_norm(propagate_noisy(sched, h, noisy) - u) < 1e-13);
}

TEST_CASE("finite-width pulses keep the slot length and stay unitary") {
  auto h = sample_random(0.01, 0.015, 2, 13);
  auto sched = cdd_schedule(1, Setting::computational, h.tau());
  NoisyGateSet gates;
  gates.width = PulseWidthSpec(0.2);
  CMatrix u = propagate_noisy(sched, h, gates);
  CHECK(is_unitary(u));
  // widened pulses converge to the instantaneous limit
  double prev = 1e300;
  for (double d : {0.02, 0.01, 0.005}) {
    gates.width = PulseWidthSpec(d);
    double gap = op_norm(propagate_noisy(sched, h, gates) - propagate_ideal(sched, h));
    CHECK(gap < prev);
    prev = gap;
  }
  gates.width = PulseWidthSpec(0.999);
  CHECK_NOTHROW(propagate_noisy(sched, h, gates));
}

TEST_CASE("merged schedules reject control noise on the compiled Y gate") {
  auto h = sample_random(0.01, 0.01, 2, 14);
  auto merged = cdd_schedule(2, Setting::computational, h.tau(), true);
  NoisyGateSet gates;
  gates.ctrl = unitary_control_error(0.02, Eigen::Vector3d(1.0, 0.0, 0.0));
  CHECK_THROWS_AS(propagate_noisy(merged, h, gates), std::invalid_argument);
  NoisyGateSet widthonly;
  widthonly.width = PulseWidthSpec(0.1);
  CHECK_NOTHROW(propagate_noisy(merged, h, widthonly));
}

TEST_CASE("schedule dump lists one line per gate in time order") {
  auto sched = cdd_schedule(2, Setting::computational, 0.25);
  std::string dump = dump_schedule(sched);
  std::istringstream in(dump);
  std::string line;
  std::size_t lines = 0;
  double prev_t = 0.0;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    double t = std::stod(line.substr(0, tab));
    std::string label = line.substr(tab + 1);
    CHECK(t >= prev_t);
    prev_t = t;
    bool known = label == "X" || label == "Y" || label == "Z";
    CHECK(known);
    ++lines;
  }
  CHECK(lines == sched.gate_count());
  CHECK(dump.substr(0, dump.find('\t')) == "0.25");
}
