#include "symmix/zbasis.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace symmix {

std::vector<ZMonomial> ising_monomials(const IsingConstraint& c) {
    std::vector<ZMonomial> out;
    for (int i = 0; i < c.n(); i++)
        if (c.h[i] != 0) out.push_back({c.h[i], bitmask(i)});
    for (int i = 0; i < c.n(); i++)
        for (int j = i + 1; j < c.n(); j++)
            if (c.j[i][j] != 0) out.push_back({c.j[i][j], bitmask(i) | bitmask(j)});
    return out;
}

QuadVerdict sufficient_quadratic_verdict(const ZPair& pair, const IsingConstraint& c) {
    const int n = c.n();
    const uint64_t v = pair.term.v, w = pair.term.w;
    std::vector<long long> u(n, 0);
    for (int i = 0; i < n; i++) u[i] = (bit(v, i) ? 1 : 0) - (bit(w, i) ? 1 : 0);

    long long hu = 0;
    for (int i = 0; i < n; i++) hu += c.h[i] * u[i];
    if (hu != 0) return QuadVerdict::linear_fails;

    std::vector<long long> ju(n, 0);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) ju[i] += c.j[i][j] * u[j];

    long long uju = 0;
    for (int i = 0; i < n; i++) uju += u[i] * ju[i];
    if (uju != 0) return QuadVerdict::quadratic_fails;

    for (int l = 0; l < n; l++)
        if (u[l] == 0 && ju[l] != 0) return QuadVerdict::cross_fails;
    return QuadVerdict::ok;
}

bool sufficient_quadratic(const ZPair& pair, const IsingConstraint& c) {
    return sufficient_quadratic_verdict(pair, c) == QuadVerdict::ok;
}

ZTermSum commutator_zbasis(const ZPair& pair, const std::vector<ZMonomial>& k_sets) {
    if (!pair.term.masks_disjoint())
        throw std::invalid_argument("commutator_zbasis: overlapping masks");
    std::map<std::tuple<uint64_t, uint64_t, uint64_t>, CRational> acc;
    const ZTerm branches[2] = {pair.term, ZTerm{pair.term.y, pair.term.w, pair.term.v}};
    const CRational coeffs[2] = {pair.alpha, pair.alpha.conj()};
    const bool diagonal = pair.term.v == pair.term.w;
    for (int b = 0; b < (diagonal ? 1 : 2); b++) {
        CRational cb = coeffs[b];
        if (diagonal) cb += coeffs[1];
        const ZTerm& t = branches[b];
        for (const auto& m : k_sets) {
            long long f = ((popcount(t.w & m.k) % 2) ? -1 : 1) -
                          ((popcount(t.v & m.k) % 2) ? -1 : 1);
            if (f == 0) continue;
            uint64_t flip = m.k & ~(t.v | t.w);
            ZTerm r{t.y ^ flip, t.v, t.w};
            acc[{r.y, r.v, r.w}] += cb * CRational(static_cast<long>(f * m.coeff));
        }
    }
    ZTermSum out;
    for (auto& [key, c] : acc) {
        if (c.is_zero()) continue;
        out.terms.push_back({c, ZTerm{std::get<0>(key), std::get<1>(key), std::get<2>(key)}});
    }
    return out;
}

Mat lower_to_matrix(const ZTerm& t, int n) {
    if (n > kLowerCap) throw std::invalid_argument("lower_to_matrix: n exceeds cap");
    Mat m(1 << n);
    for (uint64_t s = 0; s < (1ull << n); s++) {
        // ladder gating as in the projector basis
        if ((t.v & s) != 0) continue;
        if ((t.w & s) != t.w) continue;
        uint64_t out = (s | t.v) & ~t.w;
        double sign = (popcount(t.y & s) % 2) ? -1.0 : 1.0;
        m.at(static_cast<int>(out), static_cast<int>(s)) += sign;
    }
    return m;
}

Mat lower_to_matrix(const ZTermSum& ts, int n) {
    Mat m(1 << n);
    for (const auto& e : ts.terms) {
        Mat t = lower_to_matrix(e.term, n);
        m = mat_add(m, mat_scale(t, e.coeff.to_complex()));
    }
    return m;
}

Mat lower_to_matrix(const ZPair& p, int n) {
    ZTermSum s;
    s.terms.push_back({p.alpha, p.term});
    if (!(p.term.v == p.term.w)) {
        s.terms.push_back({p.alpha.conj(), ZTerm{p.term.y, p.term.w, p.term.v}});
    } else {
        s.terms[0].coeff += p.alpha.conj();
    }
    return lower_to_matrix(s, n);
}

Mat lower_to_matrix(const IsingConstraint& c) {
    const int n = c.n();
    if (n > kLowerCap) throw std::invalid_argument("lower_to_matrix: n exceeds cap");
    Mat m(1 << n);
    for (uint64_t s = 0; s < (1ull << n); s++) {
        long long val = 0;
        for (const auto& mono : ising_monomials(c)) {
            long long z = (popcount(mono.k & s) % 2) ? -1 : 1;
            val += mono.coeff * z;
        }
        m.at(static_cast<int>(s), static_cast<int>(s)) = static_cast<double>(val);
    }
    return m;
}

} // namespace symmix
