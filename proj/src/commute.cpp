#include "symmix/commute.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <tuple>

#include "symmix/dense.hpp"

namespace symmix {

bool commutes_linear(const HermitianPair& pair, const LinearConstraint& l) {
    long long s = 0;
    for (int i = 0; i < l.n(); i++) {
        if (bit(pair.term.v, i)) s += l.c[i];
        if (bit(pair.term.w, i)) s -= l.c[i];
    }
    return s == 0;
}

TermSum commutator_with_constraint(const HermitianPair& pair, const PolyConstraint& c) {
    TermSum acc;
    acc.n = pair.term.n;
    std::vector<ScaledTerm> es;
    const Term branches[2] = {pair.term, term_adjoint(pair.term)};
    const CRational coeffs[2] = {pair.alpha, pair.alpha.conj()};
    for (int b = 0; b < 2; b++) {
        if (b == 1 && branches[1] == branches[0]) {
            // diagonal pair: both branches coincide, fold the coefficient
            break;
        }
        CRational cb = coeffs[b];
        if (b == 0 && branches[1] == branches[0]) cb += coeffs[1];
        for (const auto& m : c.monomials) {
            Term d;
            d.n = pair.term.n;
            d.x = m.a;
            d.y = m.b;
            CRational beta(static_cast<long>(m.beta));
            if (auto r = term_multiply(branches[b], d))
                es.push_back({cb * beta, r->term});
            if (auto r = term_multiply(d, branches[b]))
                es.push_back({-(cb * beta), r->term});
        }
    }
    return make_sum(pair.term.n, std::move(es));
}

bool commutes_poly(const HermitianPair& pair, const PolyConstraint& c) {
    return sum_is_zero_operator(commutator_with_constraint(pair, c));
}

bool commutes_matrix_oracle(const HermitianPair& pair,
                            const std::vector<PolyConstraint>& cs, int n) {
    if (n > kOracleCap) throw std::invalid_argument("commutes_matrix_oracle: n exceeds cap");
    Mat mp = lower_to_matrix(pair, n);
    for (const auto& c : cs) {
        Mat mc = lower_to_matrix(c, n);
        if (mat_max_abs(mat_commutator(mp, mc)) > 1e-12) return false;
    }
    return true;
}

void sort_pairs(std::vector<HermitianPair>& ps) {
    std::sort(ps.begin(), ps.end(), [](const HermitianPair& a, const HermitianPair& b) {
        auto ka = std::make_tuple(a.term.locality(), a.term.v, a.term.w, a.term.x, a.term.y);
        auto kb = std::make_tuple(b.term.locality(), b.term.v, b.term.w, b.term.x, b.term.y);
        return ka < kb;
    });
}

namespace {

using MaskKey = std::tuple<uint64_t, uint64_t, uint64_t, uint64_t>;

MaskKey pair_key(const HermitianPair& p) {
    return {p.term.v, p.term.w, p.term.x, p.term.y};
}

struct LinearSearch {
    const std::vector<LinearConstraint>& cs;
    int n;
    const SearchConfig& cfg;
    // suffix[c][i]: sum of |c_k| for k >= i, the largest swing the undecided
    // positions can still contribute to c.(v-w)
    std::vector<std::vector<long long>> suffix;
    std::set<MaskKey> seen;
    std::vector<HermitianPair> out;

    LinearSearch(const std::vector<LinearConstraint>& cs_, int n_, const SearchConfig& cfg_)
        : cs(cs_), n(n_), cfg(cfg_) {
        suffix.resize(cs.size(), std::vector<long long>(n + 1, 0));
        for (size_t c = 0; c < cs.size(); c++)
            for (int i = n - 1; i >= 0; i--)
                suffix[c][i] = suffix[c][i + 1] + std::llabs(cs[c].c[i]);
    }

    void emit(uint64_t v, uint64_t w) {
        Term t;
        t.n = n;
        t.v = v;
        t.w = w;
        HermitianPair p = make_pair(CRational(1), t);
        if (cfg.dedup) {
            if (!seen.insert(pair_key(p)).second) return;
        }
        out.push_back(p);
    }

    void rec(int i, int budget, uint64_t v, uint64_t w, std::vector<long long>& diff) {
        if (cfg.prune) {
            for (size_t c = 0; c < cs.size(); c++)
                if (std::llabs(diff[c]) > suffix[c][i]) return;
        }
        if (i == n) {
            for (size_t c = 0; c < cs.size(); c++)
                if (diff[c] != 0) return;
            if ((v | w) == 0) return;
            emit(v, w);
            return;
        }
        rec(i + 1, budget, v, w, diff);
        if (budget == 0) return;
        for (int op = 0; op < 2; op++) {
            uint64_t nv = v, nw = w;
            for (size_t c = 0; c < cs.size(); c++)
                diff[c] += (op == 0 ? cs[c].c[i] : -cs[c].c[i]);
            if (op == 0) nv |= bitmask(i); else nw |= bitmask(i);
            rec(i + 1, budget - 1, nv, nw, diff);
            for (size_t c = 0; c < cs.size(); c++)
                diff[c] -= (op == 0 ? cs[c].c[i] : -cs[c].c[i]);
        }
    }
};

struct PolySearch {
    const std::vector<PolyConstraint>& cs;
    int n;
    const SearchConfig& cfg;
    // constraints whose support ends at qubit i, checked as soon as the scan
    // moves past them
    std::vector<std::vector<size_t>> completes_at;
    std::set<MaskKey> seen;
    std::vector<HermitianPair> out;

    PolySearch(const std::vector<PolyConstraint>& cs_, int n_, const SearchConfig& cfg_)
        : cs(cs_), n(n_), cfg(cfg_) {
        completes_at.resize(n + 1);
        for (size_t c = 0; c < cs.size(); c++) {
            uint64_t sup = 0;
            for (const auto& m : cs[c].monomials) sup |= m.a | m.b;
            int last = sup ? (64 - std::countl_zero(sup)) : 0;
            completes_at[last].push_back(c);
        }
    }

    bool word_commutes(const Term& t, const PolyConstraint& c) const {
        return commutes_poly(HermitianPair{CRational(1), t}, c);
    }

    void emit(const Term& t) {
        for (const auto& c : cs)
            if (!word_commutes(t, c)) return;
        HermitianPair p = make_pair(CRational(1), t);
        if (cfg.dedup) {
            if (!seen.insert(pair_key(p)).second) return;
        }
        out.push_back(p);
    }

    void rec(int i, int budget, Term t) {
        if (cfg.prune) {
            // Once the scan passes a constraint's support, the decided prefix
            // determines commutation with it: a word extends as prefix (x)
            // suffix and [prefix (x) suffix, C (x) I] vanishes only if the
            // prefix pair already commutes with C.
            for (size_t c : completes_at[i])
                if (!word_commutes(t, cs[c])) return;
        }
        if (i == n) {
            if ((t.v | t.w) == 0) {
                if (cfg.require_offdiagonal) return;
                if ((t.x | t.y) == 0) return;
            }
            if (t.locality() > cfg.max_locality) return;
            emit(t);
            return;
        }
        rec(i + 1, budget, t);
        if (budget == 0) return;
        for (Op1 op : {Op1::p0, Op1::p1, Op1::raise, Op1::lower}) {
            Term u = t;
            switch (op) {
                case Op1::p0: u.x |= bitmask(i); break;
                case Op1::p1: u.y |= bitmask(i); break;
                case Op1::raise: u.v |= bitmask(i); break;
                case Op1::lower: u.w |= bitmask(i); break;
                default: break;
            }
            rec(i + 1, budget - 1, u);
        }
    }
};

} // namespace

std::vector<HermitianPair> search_linear(const std::vector<LinearConstraint>& cs,
                                         int n, const SearchConfig& cfg) {
    if (n > 64) throw std::invalid_argument("search_linear: n exceeds bitmask width");
    for (const auto& c : cs)
        if (c.n() != n) throw std::invalid_argument("search_linear: constraint size mismatch");
    LinearSearch s(cs, n, cfg);
    std::vector<long long> diff(cs.size(), 0);
    s.rec(0, std::min(cfg.max_locality, n), 0, 0, diff);
    sort_pairs(s.out);
    return s.out;
}

std::vector<HermitianPair> search_poly(const std::vector<PolyConstraint>& cs,
                                       int n, const SearchConfig& cfg) {
    if (n > 64) throw std::invalid_argument("search_poly: n exceeds bitmask width");
    PolySearch s(cs, n, cfg);
    Term root;
    root.n = n;
    s.rec(0, std::min(cfg.max_locality, n), root);
    sort_pairs(s.out);
    return s.out;
}

} // namespace symmix
