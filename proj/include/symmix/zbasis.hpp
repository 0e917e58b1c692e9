#pragma once

#include <cstdint>
#include <vector>

#include "symmix/dense.hpp"
#include "symmix/exact.hpp"

namespace symmix {

// Basis word over {1, sigma_z, raise, lower}: sigma_z at y, ladders at v/w.
struct ZTerm {
    uint64_t y = 0, v = 0, w = 0;

    bool masks_disjoint() const {
        return (y & v) == 0 && (y & w) == 0 && (v & w) == 0;
    }
    friend bool operator==(const ZTerm&, const ZTerm&) = default;
};

// alpha * T(y,v,w) + conj(alpha) * T(y,w,v)
struct ZPair {
    CRational alpha;
    ZTerm term;
};

struct ScaledZTerm {
    CRational coeff;
    ZTerm term;
};

struct ZTermSum {
    std::vector<ScaledZTerm> terms; // merged, zero coefficients dropped
    bool empty() const { return terms.empty(); }
};

// C = sum_i h_i sigma_z_i + sum_{i<j} J_ij sigma_z_i sigma_z_j
struct IsingConstraint {
    std::vector<long long> h;
    std::vector<std::vector<long long>> j; // symmetric, zero diagonal

    int n() const { return static_cast<int>(h.size()); }
};

struct ZMonomial {
    long long coeff = 0;
    uint64_t k = 0; // qubit set of the sigma_z product
};

std::vector<ZMonomial> ising_monomials(const IsingConstraint& c);

// Soundness-repaired sufficient condition for [pair, C_hat] = 0 with
// u = v - w entrywise: h.u = 0, u^T J u = 0, and (J u)_l = 0 on every qubit l
// outside supp(u). True implies exact matrix commutation; false says nothing.
// Named after the conjunct it checks so the CLI can report which one failed.
enum class QuadVerdict { ok, linear_fails, quadratic_fails, cross_fails };

QuadVerdict sufficient_quadratic_verdict(const ZPair& pair, const IsingConstraint& c);
bool sufficient_quadratic(const ZPair& pair, const IsingConstraint& c);

// Exact symbolic [pair, sum_K J_K prod_{k in K} sigma_z_k]. Each monomial
// contributes the factor (-1)^{|w & K|} - (-1)^{|v & K|} and flips the
// sigma_z mask on the ladder-free part of K; the adjoint branch contributes
// the negated factor.
ZTermSum commutator_zbasis(const ZPair& pair, const std::vector<ZMonomial>& k_sets);

Mat lower_to_matrix(const ZTerm& t, int n);
Mat lower_to_matrix(const ZTermSum& ts, int n);
Mat lower_to_matrix(const ZPair& p, int n);
Mat lower_to_matrix(const IsingConstraint& c);

} // namespace symmix
