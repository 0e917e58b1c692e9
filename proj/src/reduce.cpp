#include "symmix/reduce.hpp"

#include <optional>
#include <set>
#include <tuple>

#include "symmix/commute.hpp"

namespace symmix {

namespace {

// A reduced anticommutator chain state is useful only while it stays a single
// Hermitian pair; sums of several ladder words cannot match one target word.
std::optional<HermitianPair> collapse_to_pair(const TermSum& s) {
    if (s.terms.size() != 2) return std::nullopt;
    const auto& a = s.terms[0];
    const auto& b = s.terms[1];
    if (!(term_adjoint(a.term) == b.term)) return std::nullopt;
    if (!(a.coeff.conj() == b.coeff)) return std::nullopt;
    if (a.term.is_diagonal()) return std::nullopt;
    return canonical_pair(HermitianPair{a.coeff, a.term});
}

struct UsageKey {
    uint64_t v, w, lo, hi;
    auto operator<=>(const UsageKey&) const = default;
};

struct GenSearch {
    const std::vector<HermitianPair>& gens;
    uint64_t target_v, target_w;
    std::set<UsageKey> visited;

    // usage counts per qubit capped at 2, packed as two bit-planes
    static bool add_usage(uint64_t sup, uint64_t& lo, uint64_t& hi) {
        if (hi & sup) return false; // some qubit would reach 3 uses
        uint64_t carry = lo & sup;
        lo ^= sup;
        hi |= carry;
        return true;
    }

    bool dfs(const HermitianPair& cur, uint64_t lo, uint64_t hi) {
        if (cur.term.v == target_v && cur.term.w == target_w) return true;
        if (!visited.insert({cur.term.v, cur.term.w, lo, hi}).second) return false;
        for (const auto& g : gens) {
            uint64_t nlo = lo, nhi = hi;
            if (!add_usage(g.term.v | g.term.w, nlo, nhi)) continue;
            auto next = collapse_to_pair(reduce_linear(pair_anticommutator(cur, g)));
            if (!next) continue;
            if (dfs(*next, nlo, nhi)) return true;
        }
        return false;
    }
};

} // namespace

bool is_generatable(const HermitianPair& t, const std::vector<HermitianPair>& g) {
    if (g.empty()) return false;
    HermitianPair target = canonical_pair(t);
    Term tr = target.term;
    tr.x = 0;
    tr.y = 0;
    GenSearch s{g, tr.v, tr.w, {}};
    for (const auto& gen : g) {
        HermitianPair start = canonical_pair(gen);
        uint64_t lo = 0, hi = 0;
        GenSearch::add_usage(start.term.v | start.term.w, lo, hi);
        if (s.dfs(start, lo, hi)) return true;
    }
    return false;
}

bool group_commutes(const HermitianPair& g, const GeneratorGroup& group) {
    for (const auto& m : group.members)
        if (!sum_is_zero_operator(pair_commutator(g, m))) return false;
    return true;
}

GeneratorCollection select_generators(const std::vector<HermitianPair>& k) {
    std::vector<HermitianPair> ordered = k;
    for (auto& p : ordered) p = canonical_pair(p);
    sort_pairs(ordered);

    GeneratorCollection out;
    std::vector<HermitianPair> selected;
    for (const auto& cand : ordered) {
        if (is_generatable(cand, selected)) continue;
        selected.push_back(cand);
        bool placed = false;
        for (auto& grp : out.groups) {
            if (group_commutes(cand, grp)) {
                grp.members.push_back(cand);
                placed = true;
                break;
            }
        }
        if (!placed) out.groups.push_back(GeneratorGroup{{cand}});
    }
    return out;
}

} // namespace symmix
