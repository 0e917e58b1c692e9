#include "symmix/sat.hpp"

#include <algorithm>
#include <stdexcept>

#include "symmix/commute.hpp"
#include "symmix/rng.hpp"

namespace symmix {

SatInstance generate(int n, uint64_t seed) {
    if (n < 3) throw std::invalid_argument("generate: need at least 3 variables");
    SatInstance inst;
    inst.n = n;
    inst.seed = seed;
    Rng rng(seed);
    int m = (n + 2) / 3;
    for (int c = 0; c < m; c++) {
        int a = static_cast<int>(rng.uniform_below(n));
        int b;
        do { b = static_cast<int>(rng.uniform_below(n)); } while (b == a);
        int d;
        do { d = static_cast<int>(rng.uniform_below(n)); } while (d == a || d == b);
        Clause cl;
        cl.lits[0] = {a, rng.coin() ? 1 : -1};
        cl.lits[1] = {b, rng.coin() ? 1 : -1};
        cl.lits[2] = {d, rng.coin() ? 1 : -1};
        std::sort(cl.lits.begin(), cl.lits.end(),
                  [](const Literal& p, const Literal& q) { return p.var < q.var; });
        inst.clauses.push_back(cl);
    }
    return inst;
}

SatisfiableDraw generate_satisfiable(int n, uint64_t seed) {
    if (n > kEnumCap) throw std::invalid_argument("generate_satisfiable: n exceeds brute-force cap");
    for (uint64_t attempt = 0;; attempt++) {
        SatInstance inst = generate(n, derive_seed(seed, attempt));
        if (!brute_solutions(inst).empty()) return {inst, attempt + 1};
    }
}

ReduceResult reduce(const SatInstance& inst) {
    std::vector<int> map(inst.n, -1);
    uint64_t used = 0;
    for (const auto& c : inst.clauses) used |= c.var_mask();
    int next = 0;
    for (int i = 0; i < inst.n; i++)
        if (bit(used, i)) map[i] = next++;
    ReduceResult out;
    out.var_map = map;
    out.inst.n = next;
    out.inst.seed = inst.seed;
    for (const auto& c : inst.clauses) {
        Clause r = c;
        for (auto& l : r.lits) l.var = map[l.var];
        out.inst.clauses.push_back(r);
    }
    return out;
}

std::vector<uint64_t> brute_solutions(const SatInstance& inst) {
    if (inst.n > kEnumCap) throw std::invalid_argument("brute_solutions: n exceeds cap");
    std::vector<uint64_t> out;
    for (uint64_t x = 0; x < (1ull << inst.n); x++) {
        bool ok = true;
        for (const auto& c : inst.clauses)
            if (!c.satisfied(x)) { ok = false; break; }
        if (ok) out.push_back(x);
    }
    return out;
}

namespace {

struct MdsSearch {
    const std::vector<uint64_t>& masks;
    std::vector<int> best;
    std::vector<int> cur;

    void rec(size_t idx, uint64_t used) {
        if (cur.size() + (masks.size() - idx) <= best.size()) return;
        if (idx == masks.size()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        if ((masks[idx] & used) == 0) {
            cur.push_back(static_cast<int>(idx));
            rec(idx + 1, used | masks[idx]);
            cur.pop_back();
        }
        rec(idx + 1, used);
    }
};

} // namespace

MdsResult find_mds(const SatInstance& inst) {
    std::vector<uint64_t> masks;
    for (const auto& c : inst.clauses) masks.push_back(c.var_mask());
    MdsSearch s{masks, {}, {}};
    // greedy pass seeds the bound; the include-first recursion only replaces
    // it on strict improvement, which keeps ties at the lowest indices
    uint64_t used = 0;
    for (size_t i = 0; i < masks.size(); i++)
        if ((masks[i] & used) == 0) {
            s.best.push_back(static_cast<int>(i));
            used |= masks[i];
        }
    s.rec(0, 0);
    MdsResult out;
    out.clause_indices = s.best;
    for (int i : s.best) out.var_masks.push_back(masks[i]);
    return out;
}

std::vector<uint64_t> clause_solutions(const Clause& c) {
    std::vector<uint64_t> out;
    for (uint64_t p = 0; p < 8; p++) {
        int k = 0;
        for (int j = 0; j < 3; j++)
            k += (bit(p, j) == (c.lits[j].pol > 0)) ? 1 : 0;
        if (k == 1) out.push_back(p);
    }
    return out;
}

std::vector<int> neighborhood(const SatInstance& inst, int ci) {
    if (ci < 0 || ci >= static_cast<int>(inst.clauses.size()))
        throw std::out_of_range("neighborhood: clause index");
    uint64_t m = inst.clauses[ci].var_mask();
    std::vector<int> out;
    for (size_t i = 0; i < inst.clauses.size(); i++)
        if (static_cast<int>(i) == ci || (inst.clauses[i].var_mask() & m) != 0)
            out.push_back(static_cast<int>(i));
    return out;
}

LinearConstraint clause_linear(const Clause& c, int n, const std::vector<int>* remap) {
    LinearConstraint l;
    l.c.assign(n, 0);
    l.rhs = 1;
    for (const auto& lit : c.lits) {
        int var = remap ? (*remap)[lit.var] : lit.var;
        l.c[var] = lit.pol;
        if (lit.pol < 0) l.rhs -= 1; // move the 1-x constant to the right side
    }
    return l;
}

namespace {

std::vector<int> clause_vars(const Clause& c) {
    return {c.lits[0].var, c.lits[1].var, c.lits[2].var};
}

MixerProgram build_symcov(const SatInstance& inst, const MdsResult& mds, int locality) {
    MixerProgram prog;
    for (int ci : mds.clause_indices) {
        std::vector<int> nb = neighborhood(inst, ci);
        uint64_t vars = 0;
        for (int i : nb) vars |= inst.clauses[i].var_mask();
        std::vector<int> sub_to_global;
        std::vector<int> global_to_sub(inst.n, -1);
        for (int q = 0; q < inst.n; q++)
            if (bit(vars, q)) {
                global_to_sub[q] = static_cast<int>(sub_to_global.size());
                sub_to_global.push_back(q);
            }
        int nsub = static_cast<int>(sub_to_global.size());
        std::vector<LinearConstraint> cs;
        for (int i : nb) cs.push_back(clause_linear(inst.clauses[i], nsub, &global_to_sub));
        SearchConfig cfg;
        cfg.max_locality = std::min(locality, nsub);
        std::vector<HermitianPair> found = search_linear(cs, nsub, cfg);
        std::vector<HermitianPair> remapped;
        for (const auto& p : found) {
            Term t;
            t.n = inst.n;
            for (int q = 0; q < nsub; q++) {
                if (bit(p.term.v, q)) t.v |= bitmask(sub_to_global[q]);
                if (bit(p.term.w, q)) t.w |= bitmask(sub_to_global[q]);
            }
            remapped.push_back(make_pair(p.alpha, t));
        }
        GeneratorCollection coll = select_generators(remapped);
        MixerProgram part = compile_mixer(coll, AngleTag::gamma);
        for (auto& layer : part.layers) prog.layers.push_back(std::move(layer));
    }
    return prog;
}

} // namespace

AnsatzSpec build_ansatz(const SatInstance& inst, AnsatzKind kind, const AnsatzConfig& cfg) {
    AnsatzSpec spec;
    spec.kind = kind;
    spec.n = inst.n;

    if (kind == AnsatzKind::X) {
        for (size_t i = 0; i < inst.clauses.size(); i++)
            spec.phase_clauses.push_back(static_cast<int>(i));
        spec.mixer = prefab_x_mixer(inst.n);
        spec.plus_mask = (inst.n == 64) ? ~0ull : ((1ull << inst.n) - 1);
        return spec;
    }

    bool partial = cfg.partial_mixers.value_or(kind == AnsatzKind::MDS_SYMCOV);
    spec.uses_partial_mixers = partial;

    MdsResult mds = find_mds(inst);
    uint64_t covered = 0;
    for (uint64_t m : mds.var_masks) covered |= m;

    std::vector<bool> in_mds(inst.clauses.size(), false);
    for (int i : mds.clause_indices) in_mds[i] = true;
    for (size_t i = 0; i < inst.clauses.size(); i++)
        if (!in_mds[i]) spec.phase_clauses.push_back(static_cast<int>(i));

    std::vector<DiffusorSpec> clause_layer;
    for (int ci : mds.clause_indices) {
        const Clause& c = inst.clauses[ci];
        DiffusorSpec d = make_pattern_diffusor(clause_vars(c), clause_solutions(c), AngleTag::beta);
        clause_layer.push_back(d);
        spec.init_blocks.push_back({clause_vars(c), clause_solutions(c)});
    }
    spec.mixer.layers.push_back(std::move(clause_layer));

    uint64_t paired = 0;
    std::vector<DiffusorSpec> free_layer;
    if (partial) {
        for (size_t i = 0; i < inst.clauses.size(); i++) {
            if (in_mds[i]) continue;
            uint64_t uncov = inst.clauses[i].var_mask() & ~covered & ~paired;
            if (popcount(inst.clauses[i].var_mask() & ~covered) != 2) continue;
            if (popcount(uncov) != 2) continue;
            // the two uncovered variables may hold at most one true literal,
            // leaving 3 of the 4 local patterns
            int qa = std::countr_zero(uncov);
            int qb = 63 - std::countl_zero(uncov);
            int pa = 0, pb = 0;
            for (const auto& l : inst.clauses[i].lits) {
                if (l.var == qa) pa = l.pol;
                if (l.var == qb) pb = l.pol;
            }
            uint64_t forbidden = (pa > 0 ? 1u : 0u) | (pb > 0 ? 2u : 0u);
            std::vector<uint64_t> pats;
            for (uint64_t p = 0; p < 4; p++)
                if (p != forbidden) pats.push_back(p);
            free_layer.push_back(make_pattern_diffusor({qa, qb}, pats, AngleTag::beta));
            spec.init_blocks.push_back({{qa, qb}, pats});
            paired |= uncov;
        }
    }
    uint64_t all = (inst.n == 64) ? ~0ull : ((1ull << inst.n) - 1);
    uint64_t loose = all & ~covered & ~paired;
    for (int q = 0; q < inst.n; q++)
        if (bit(loose, q)) free_layer.push_back(build_Q(0.0, bitmask(q), 0));
    spec.plus_mask = loose;
    if (!free_layer.empty()) spec.mixer.layers.push_back(std::move(free_layer));

    if (kind == AnsatzKind::MDS_SYMCOV) {
        if (cfg.symcov_locality < 2)
            throw std::invalid_argument("build_ansatz: symcov locality must be >= 2");
        spec.symcov = build_symcov(inst, mds, cfg.symcov_locality);
    }
    return spec;
}

} // namespace symmix
