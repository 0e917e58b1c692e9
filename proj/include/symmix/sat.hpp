#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "symmix/constraint.hpp"
#include "symmix/mixer.hpp"

namespace symmix {

struct Literal {
    int var = 0;
    int pol = 1; // +1 plain, -1 negated
};

// Three literals over three distinct variables, stored in ascending variable
// order.
struct Clause {
    std::array<Literal, 3> lits;

    uint64_t var_mask() const {
        return bitmask(lits[0].var) | bitmask(lits[1].var) | bitmask(lits[2].var);
    }
    // true literals for assignment x, counted over the three positions
    int true_count(uint64_t x) const {
        int k = 0;
        for (const auto& l : lits)
            k += (bit(x, l.var) == (l.pol > 0)) ? 1 : 0;
        return k;
    }
    bool satisfied(uint64_t x) const { return true_count(x) == 1; }
};

struct SatInstance {
    int n = 0;
    std::vector<Clause> clauses;
    uint64_t seed = 0;
};

SatInstance generate(int n, uint64_t seed);

struct SatisfiableDraw {
    SatInstance inst;
    uint64_t attempts = 0;
};
SatisfiableDraw generate_satisfiable(int n, uint64_t seed);

struct ReduceResult {
    SatInstance inst;
    std::vector<int> var_map; // old index -> new index, -1 when dropped
};
ReduceResult reduce(const SatInstance& inst);

std::vector<uint64_t> brute_solutions(const SatInstance& inst);

struct MdsResult {
    std::vector<int> clause_indices;
    std::vector<uint64_t> var_masks;
};
// Exact maximum disjoint clause set by branch and bound, ties toward lowest
// indices.
MdsResult find_mds(const SatInstance& inst);

// The 3 of 8 local assignments with exactly one true literal, as 3-bit
// patterns over the clause's variables in ascending order.
std::vector<uint64_t> clause_solutions(const Clause& c);

// Indices of clauses sharing a variable with clause ci, including ci itself.
std::vector<int> neighborhood(const SatInstance& inst, int ci);

// The exactly-one-true condition as a linear equation over the instance (or
// a compacted variable subset when remap is provided).
LinearConstraint clause_linear(const Clause& c, int n, const std::vector<int>* remap = nullptr);

enum class AnsatzKind { X, MDS, MDS_SYMCOV };

struct AnsatzConfig {
    int symcov_locality = 4;
    std::optional<bool> partial_mixers; // default: on only for MDS_SYMCOV
};

struct InitBlock {
    std::vector<int> support;
    std::vector<uint64_t> patterns;
};

struct AnsatzSpec {
    AnsatzKind kind = AnsatzKind::X;
    int n = 0;
    std::vector<int> phase_clauses;
    MixerProgram mixer;                  // beta-tagged
    std::optional<MixerProgram> symcov;  // gamma-tagged
    std::vector<InitBlock> init_blocks;  // 1/sqrt(k) superposition factors
    uint64_t plus_mask = 0;              // |+> qubits in the initial state
    bool uses_partial_mixers = false;
};

AnsatzSpec build_ansatz(const SatInstance& inst, AnsatzKind kind, const AnsatzConfig& cfg = {});

} // namespace symmix
