#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "symmix/mixer.hpp"
#include "symmix/sat.hpp"

namespace symmix {

// full statevector simulation is capped at 2^26 amplitudes
inline constexpr int kStateCap = 26;

struct StateVector {
    int n = 0;
    std::vector<std::complex<double>> amp;
};

double state_norm(const StateVector& psi);

// Product initial state: init blocks contribute equal-weight pattern
// superpositions, plus_mask qubits start in |+>, everything else in |0>.
StateVector prepare_initial(const AnsatzSpec& spec);

// Number of violated clauses (among the given indices) per basis state.
std::vector<uint8_t> violation_table(const SatInstance& inst,
                                     const std::vector<int>& clause_indices);

// amp[x] *= e^{i alpha V(x)}
void apply_phase(StateVector& psi, double alpha, const std::vector<uint8_t>& violations);

// In-place U(angle) = I + (e^{-i angle} - 1) P over the diffusor's support.
void apply_diffusor(StateVector& psi, double angle, const DiffusorSpec& spec);

struct Schedule {
    std::vector<double> alpha; // phase angle per round
    std::vector<double> beta;  // mixer angle per round
    std::vector<double> gamma; // symmetry-cover angle per round, empty = zeros
    int rounds() const { return static_cast<int>(alpha.size()); }
};

// One ansatz round: phase, then every mixer layer, then symcov layers.
void apply_round(StateVector& psi, const AnsatzSpec& spec,
                 const std::vector<uint8_t>& violations, double alpha, double beta,
                 double gamma);

// Reusable per-instance state for schedule sweeps.
struct PreparedRun {
    AnsatzSpec spec;
    std::vector<uint8_t> violations;
    std::vector<uint64_t> solutions;
    StateVector psi0;
};
PreparedRun prepare_run(const SatInstance& inst, const AnsatzSpec& spec);
double run_prepared(const PreparedRun& ctx, const Schedule& sched);

struct RunResult {
    StateVector psi;
    std::vector<double> round_norms;
    double success = 0.0;
};
RunResult run(const SatInstance& inst, const AnsatzSpec& spec, const Schedule& sched);

double success_probability(const StateVector& psi, const std::vector<uint64_t>& solutions);

} // namespace symmix
