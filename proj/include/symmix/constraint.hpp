#pragma once

#include <cstdint>
#include <vector>

#include "symmix/term.hpp"

namespace symmix {

// c . x = rhs over 0/1 variables.
struct LinearConstraint {
    std::vector<long long> c;
    long long rhs = 0;

    int n() const { return static_cast<int>(c.size()); }
};

// One monomial beta * prod_{i in a}(1-x_i) * prod_{i in b} x_i. The embedded
// operator is the diagonal word T(a,b,0,0) scaled by beta.
struct Monomial {
    uint64_t a = 0;
    uint64_t b = 0;
    long long beta = 0;
};

struct PolyConstraint {
    int n = 0;
    std::vector<Monomial> monomials;
    long long rhs = 0;
};

struct FeasibleSet {
    int n = 0;
    std::vector<uint64_t> bitstrings;
};

long long evaluate(const LinearConstraint& c, uint64_t xbits);
long long evaluate(const PolyConstraint& c, uint64_t xbits);

PolyConstraint from_linear(const LinearConstraint& l);

inline constexpr int kEnumCap = 26;

FeasibleSet feasible_set(const std::vector<PolyConstraint>& cs, int n);

} // namespace symmix
