#pragma once

#include <vector>

#include "symmix/constraint.hpp"
#include "symmix/term.hpp"

namespace symmix {

struct SearchConfig {
    int max_locality = 2;
    bool require_offdiagonal = true;
    bool dedup = true;
    // The prefix prunes are an optimization only; switching them off must not
    // change the result set (checked by a differential test).
    bool prune = true;
};

bool commutes_linear(const HermitianPair& pair, const LinearConstraint& l);

// Exact decision of [pair, C_hat] = 0 via term products with rational
// coefficients; no floating point involved.
bool commutes_poly(const HermitianPair& pair, const PolyConstraint& c);

TermSum commutator_with_constraint(const HermitianPair& pair, const PolyConstraint& c);

inline constexpr int kOracleCap = 10;

bool commutes_matrix_oracle(const HermitianPair& pair,
                            const std::vector<PolyConstraint>& cs, int n);

// All canonical ladder-only pairs (alpha = 1) with support <= max_locality
// commuting with every linear constraint.
std::vector<HermitianPair> search_linear(const std::vector<LinearConstraint>& cs,
                                         int n, const SearchConfig& cfg);

// All canonical pairs with at least one ladder operator and support
// <= max_locality commuting with every polynomial constraint.
std::vector<HermitianPair> search_poly(const std::vector<PolyConstraint>& cs,
                                       int n, const SearchConfig& cfg);

// Deterministic output order shared by the searches and the generator
// selection: ascending (support size, v, w, x, y).
void sort_pairs(std::vector<HermitianPair>& ps);

} // namespace symmix
