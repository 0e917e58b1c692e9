#pragma once

#include <vector>

#include "symmix/term.hpp"

namespace symmix {

struct GeneratorGroup {
    std::vector<HermitianPair> members;
};

struct GeneratorCollection {
    std::vector<GeneratorGroup> groups;

    size_t total_members() const {
        size_t k = 0;
        for (auto& g : groups) k += g.members.size();
        return k;
    }
};

// True iff some chain of anticommutators of members of G (with diagonal
// factors reduced away at each step) reproduces t's ladder pattern, no qubit
// being touched by more than two chosen generators. Approximate by design:
// it can only ever under-approximate the matrix ring generated by G.
bool is_generatable(const HermitianPair& t, const std::vector<HermitianPair>& g);

bool group_commutes(const HermitianPair& g, const GeneratorGroup& group);

// Greedy pass in ascending (locality, mask) order: skip candidates already
// generatable from the selected members, otherwise place into the first
// group whose members all commute with the candidate.
GeneratorCollection select_generators(const std::vector<HermitianPair>& k);

} // namespace symmix
