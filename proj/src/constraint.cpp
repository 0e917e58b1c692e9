#include "symmix/constraint.hpp"

#include <stdexcept>

namespace symmix {

long long evaluate(const LinearConstraint& c, uint64_t xbits) {
    long long s = 0;
    for (int i = 0; i < c.n(); i++)
        if (bit(xbits, i)) s += c.c[i];
    return s;
}

long long evaluate(const PolyConstraint& c, uint64_t xbits) {
    long long s = 0;
    for (const auto& m : c.monomials) {
        // prod (1-x_i) over a is 1 iff no a-bit is set; prod x_i over b is 1
        // iff every b-bit is set
        if ((m.a & xbits) == 0 && (m.b & xbits) == m.b) s += m.beta;
    }
    return s;
}

PolyConstraint from_linear(const LinearConstraint& l) {
    PolyConstraint out;
    out.n = l.n();
    out.rhs = l.rhs;
    for (int i = 0; i < l.n(); i++) {
        if (l.c[i] == 0) continue;
        out.monomials.push_back({0, bitmask(i), l.c[i]});
    }
    if (out.monomials.empty())
        throw std::invalid_argument("from_linear: all-zero coefficient vector");
    return out;
}

FeasibleSet feasible_set(const std::vector<PolyConstraint>& cs, int n) {
    if (n > kEnumCap) throw std::invalid_argument("feasible_set: n exceeds enumeration cap");
    FeasibleSet out;
    out.n = n;
    for (uint64_t x = 0; x < (1ull << n); x++) {
        bool ok = true;
        for (const auto& c : cs)
            if (evaluate(c, x) != c.rhs) { ok = false; break; }
        if (ok) out.bitstrings.push_back(x);
    }
    return out;
}

} // namespace symmix
