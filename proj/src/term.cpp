#include "symmix/term.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace symmix {

std::optional<Op1> single_qubit_product(Op1 a, Op1 b) {
    if (a == Op1::ident) return b;
    if (b == Op1::ident) return a;
    switch (a) {
        case Op1::p0:
            switch (b) {
                case Op1::p0: return Op1::p0;
                case Op1::lower: return Op1::lower;
                default: return std::nullopt; // p0*p1, p0*raise
            }
        case Op1::p1:
            switch (b) {
                case Op1::p1: return Op1::p1;
                case Op1::raise: return Op1::raise;
                default: return std::nullopt;
            }
        case Op1::raise:
            switch (b) {
                case Op1::p0: return Op1::raise;
                case Op1::lower: return Op1::p1;
                default: return std::nullopt; // raise*p1, raise*raise
            }
        case Op1::lower:
            switch (b) {
                case Op1::p1: return Op1::lower;
                case Op1::raise: return Op1::p0;
                default: return std::nullopt;
            }
        default: return std::nullopt;
    }
}

static Op1 term_op_at(const Term& t, int i) {
    if (bit(t.x, i)) return Op1::p0;
    if (bit(t.y, i)) return Op1::p1;
    if (bit(t.v, i)) return Op1::raise;
    if (bit(t.w, i)) return Op1::lower;
    return Op1::ident;
}

static void term_set_op(Term& t, int i, Op1 op) {
    switch (op) {
        case Op1::ident: break;
        case Op1::p0: t.x |= bitmask(i); break;
        case Op1::p1: t.y |= bitmask(i); break;
        case Op1::raise: t.v |= bitmask(i); break;
        case Op1::lower: t.w |= bitmask(i); break;
    }
}

Term term_adjoint(const Term& t) {
    Term r = t;
    std::swap(r.v, r.w);
    return r;
}

std::optional<ScaledTerm> term_multiply(const Term& t1, const Term& t2) {
    if (t1.n != t2.n) throw std::invalid_argument("term_multiply: size mismatch");
    Term r;
    r.n = t1.n;
    uint64_t touched = t1.support() | t2.support();
    while (touched) {
        int i = std::countr_zero(touched);
        touched &= touched - 1;
        auto p = single_qubit_product(term_op_at(t1, i), term_op_at(t2, i));
        if (!p) return std::nullopt;
        term_set_op(r, i, *p);
    }
    return ScaledTerm{CRational(1), r};
}

std::optional<uint64_t> term_apply(const Term& t, uint64_t s) {
    // p0 and raise need a 0 bit, p1 and lower need a 1 bit; anything else
    // annihilates the basis state.
    if ((t.x & s) != 0) return std::nullopt;
    if ((t.y & s) != t.y) return std::nullopt;
    if ((t.v & s) != 0) return std::nullopt;
    if ((t.w & s) != t.w) return std::nullopt;
    return (s | t.v) & ~t.w;
}

Term HermitianPair::adjoint_term() const { return term_adjoint(term); }

HermitianPair make_pair(CRational alpha, Term t) {
    return canonical_pair(HermitianPair{std::move(alpha), t});
}

HermitianPair canonical_pair(const HermitianPair& p) {
    if (p.term.w < p.term.v) {
        HermitianPair q;
        q.alpha = p.alpha.conj();
        q.term = term_adjoint(p.term);
        return q;
    }
    return p;
}

static std::tuple<uint64_t, uint64_t, uint64_t, uint64_t> term_key(const Term& t) {
    return {t.v, t.w, t.x, t.y};
}

TermSum make_sum(int n, std::vector<ScaledTerm> entries) {
    TermSum out;
    out.n = n;
    std::map<std::tuple<uint64_t, uint64_t, uint64_t, uint64_t>, CRational> acc;
    for (auto& e : entries) acc[term_key(e.term)] += e.coeff;
    for (auto& [k, c] : acc) {
        if (c.is_zero()) continue;
        Term t;
        t.n = n;
        t.v = std::get<0>(k);
        t.w = std::get<1>(k);
        t.x = std::get<2>(k);
        t.y = std::get<3>(k);
        out.terms.push_back({c, t});
    }
    return out;
}

void sum_accumulate(TermSum& acc, const CRational& coeff, const Term& t) {
    acc.terms.push_back({coeff, t});
}

TermSum sum_add(const TermSum& a, const TermSum& b) {
    std::vector<ScaledTerm> all = a.terms;
    all.insert(all.end(), b.terms.begin(), b.terms.end());
    return make_sum(a.n ? a.n : b.n, std::move(all));
}

TermSum sum_scale(const TermSum& a, const CRational& c) {
    TermSum out;
    out.n = a.n;
    if (c.is_zero()) return out;
    for (auto& e : a.terms) out.terms.push_back({e.coeff * c, e.term});
    return out;
}

TermSum pair_to_sum(const HermitianPair& p) {
    std::vector<ScaledTerm> es;
    es.push_back({p.alpha, p.term});
    es.push_back({p.alpha.conj(), term_adjoint(p.term)});
    return make_sum(p.term.n, std::move(es));
}

TermSum pair_product(const HermitianPair& d1, const HermitianPair& d2) {
    if (d1.term.n != d2.term.n) throw std::invalid_argument("pair_product: size mismatch");
    const Term a = d1.term, ad = term_adjoint(d1.term);
    const Term b = d2.term, bd = term_adjoint(d2.term);
    const CRational c1 = d1.alpha, c1d = d1.alpha.conj();
    const CRational c2 = d2.alpha, c2d = d2.alpha.conj();
    std::vector<ScaledTerm> es;
    auto mul = [&](const CRational& c, const Term& t1, const Term& t2) {
        if (auto r = term_multiply(t1, t2)) es.push_back({c * r->coeff, r->term});
    };
    mul(c1 * c2, a, b);
    mul(c1 * c2d, a, bd);
    mul(c1d * c2, ad, b);
    mul(c1d * c2d, ad, bd);
    return make_sum(d1.term.n, std::move(es));
}

TermSum pair_anticommutator(const HermitianPair& d1, const HermitianPair& d2) {
    return sum_add(pair_product(d1, d2), pair_product(d2, d1));
}

TermSum pair_commutator(const HermitianPair& d1, const HermitianPair& d2) {
    return sum_add(pair_product(d1, d2), sum_scale(pair_product(d2, d1), CRational(-1)));
}

TermSum reduce_linear(const TermSum& ts) {
    std::vector<ScaledTerm> es;
    for (auto& e : ts.terms) {
        Term t = e.term;
        t.x = 0;
        t.y = 0;
        es.push_back({e.coeff, t});
    }
    TermSum out = make_sum(ts.n, std::move(es));
    return out;
}

bool sum_is_zero_operator(const TermSum& ts) {
    if (ts.terms.empty()) return true;
    // Group words by (v,w). Within a group the word is determined by its
    // diagonal dressing D(x,y) = prod_{i in x}(1-s_i) * prod_{i in y} s_i,
    // a multilinear polynomial in the bit variables s. Distinct ladder masks
    // move different basis-state pairs, so the sum vanishes iff every group's
    // polynomial has all-zero coefficients.
    std::map<std::pair<uint64_t, uint64_t>, std::map<uint64_t, CRational>> groups;
    for (auto& e : ts.terms) {
        auto& poly = groups[{e.term.v, e.term.w}];
        // expand prod_{i in x}(1 - s_i) over subsets of x
        uint64_t x = e.term.x, y = e.term.y;
        uint64_t sub = 0;
        while (true) {
            CRational c = (popcount(sub) % 2 == 0) ? e.coeff : -e.coeff;
            poly[sub | y] += c;
            if (sub == x) break;
            sub = (sub - x) & x; // next subset of x
        }
    }
    for (auto& [vw, poly] : groups)
        for (auto& [mono, c] : poly)
            if (!c.is_zero()) return false;
    return true;
}

} // namespace symmix
