#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symmix/bits.hpp"
#include "symmix/exact.hpp"

namespace symmix {

// Single-qubit operators of the projector/ladder basis:
//   p0 = |0><0|, p1 = |1><1|, raise = |1><0|, lower = |0><1|,
// plus the identity. Products never pick up phases; they either stay in the
// basis or annihilate.
enum class Op1 { ident, p0, p1, raise, lower };

// nullopt encodes the zero operator.
std::optional<Op1> single_qubit_product(Op1 a, Op1 b);

// One n-qubit basis word: qubit i carries p0 if x has bit i, p1 for y,
// raise for v, lower for w, identity otherwise. Masks are pairwise disjoint.
struct Term {
    int n = 0;
    uint64_t x = 0, y = 0, v = 0, w = 0;

    bool masks_disjoint() const {
        return (x & y) == 0 && (x & v) == 0 && (x & w) == 0 &&
               (y & v) == 0 && (y & w) == 0 && (v & w) == 0;
    }
    uint64_t support() const { return x | y | v | w; }
    int locality() const { return popcount(support()); }
    bool is_diagonal() const { return v == 0 && w == 0; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.n == b.n && a.x == b.x && a.y == b.y && a.v == b.v && a.w == b.w;
    }
};

struct ScaledTerm {
    CRational coeff;
    Term term;
};

// alpha * T(x,y,v,w) + conj(alpha) * T(x,y,w,v). Canonical orientation keeps
// v <= w so that a pair and its adjoint share one representative.
struct HermitianPair {
    CRational alpha;
    Term term;

    Term adjoint_term() const;
};

HermitianPair make_pair(CRational alpha, Term t);
HermitianPair canonical_pair(const HermitianPair& p);

// Sum of scaled words over a common n, kept sorted by (x,y,v,w) with zero
// coefficients dropped. The list being empty is *syntactic* zero; because the
// basis is overcomplete a nonempty list can still be the zero operator, which
// is what sum_is_zero_operator decides exactly.
struct TermSum {
    int n = 0;
    std::vector<ScaledTerm> terms;

    bool empty() const { return terms.empty(); }
};

TermSum make_sum(int n, std::vector<ScaledTerm> entries);
TermSum sum_add(const TermSum& a, const TermSum& b);
TermSum sum_scale(const TermSum& a, const CRational& c);
void sum_accumulate(TermSum& acc, const CRational& coeff, const Term& t);

Term term_adjoint(const Term& t);
std::optional<ScaledTerm> term_multiply(const Term& t1, const Term& t2);
std::optional<uint64_t> term_apply(const Term& t, uint64_t s);

TermSum pair_product(const HermitianPair& d1, const HermitianPair& d2);
TermSum pair_anticommutator(const HermitianPair& d1, const HermitianPair& d2);
TermSum pair_commutator(const HermitianPair& d1, const HermitianPair& d2);

// Clears the diagonal masks of every word and merges duplicates (the
// projector factors are irrelevant when commuting with linear constraints).
TermSum reduce_linear(const TermSum& ts);

// Exact zero-operator decision: groups words by ladder masks and expands the
// diagonal dressings into multilinear indicator polynomials.
bool sum_is_zero_operator(const TermSum& ts);

TermSum pair_to_sum(const HermitianPair& p);

} // namespace symmix
