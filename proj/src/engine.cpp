#include "symmix/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "symmix/bits.hpp"

namespace symmix {

double state_norm(const StateVector& psi) {
    double s = 0.0;
    for (const auto& a : psi.amp) s += std::norm(a);
    return std::sqrt(s);
}

namespace {

uint64_t n_mask(int n) { return (n == 64) ? ~0ull : ((1ull << n) - 1); }

struct BlockScatter {
    uint64_t supmask = 0;
    std::vector<uint64_t> offsets;
};

BlockScatter scatter_block(const InitBlock& b, int n) {
    BlockScatter out;
    for (int q : b.support) {
        if (q < 0 || q >= n) throw std::out_of_range("init block qubit out of range");
        if (bit(out.supmask, q)) throw std::invalid_argument("init block repeats a qubit");
        out.supmask |= bitmask(q);
    }
    if (b.patterns.empty()) throw std::invalid_argument("init block has no patterns");
    for (uint64_t p : b.patterns) {
        if (p >> b.support.size()) throw std::invalid_argument("init pattern exceeds support");
        uint64_t off = 0;
        for (size_t j = 0; j < b.support.size(); j++)
            if (bit(p, static_cast<int>(j))) off |= bitmask(b.support[j]);
        if (std::find(out.offsets.begin(), out.offsets.end(), off) != out.offsets.end())
            throw std::invalid_argument("init block repeats a pattern");
        out.offsets.push_back(off);
    }
    return out;
}

} // namespace

StateVector prepare_initial(const AnsatzSpec& spec) {
    if (spec.n < 1 || spec.n > kStateCap) throw std::invalid_argument("state size out of range");
    std::vector<BlockScatter> blocks;
    uint64_t claimed = spec.plus_mask;
    if (claimed & ~n_mask(spec.n)) throw std::invalid_argument("plus_mask exceeds register");
    for (const auto& b : spec.init_blocks) {
        BlockScatter s = scatter_block(b, spec.n);
        if (s.supmask & claimed) throw std::invalid_argument("init blocks overlap");
        claimed |= s.supmask;
        blocks.push_back(std::move(s));
    }

    StateVector psi;
    psi.n = spec.n;
    psi.amp.assign(1ull << spec.n, 0.0);
    uint64_t zero_mask = n_mask(spec.n) & ~claimed;
    double base = std::pow(0.5, 0.5 * popcount(spec.plus_mask));
    std::vector<double> block_amp;
    for (const auto& b : blocks)
        block_amp.push_back(1.0 / std::sqrt(static_cast<double>(b.offsets.size())));

    for (uint64_t x = 0; x < psi.amp.size(); x++) {
        if (x & zero_mask) continue;
        double a = base;
        bool ok = true;
        for (size_t bi = 0; bi < blocks.size() && ok; bi++) {
            uint64_t r = x & blocks[bi].supmask;
            const auto& offs = blocks[bi].offsets;
            if (std::find(offs.begin(), offs.end(), r) == offs.end())
                ok = false;
            else
                a *= block_amp[bi];
        }
        if (ok) psi.amp[x] = a;
    }
    return psi;
}

std::vector<uint8_t> violation_table(const SatInstance& inst,
                                     const std::vector<int>& clause_indices) {
    if (inst.n < 1 || inst.n > kStateCap) throw std::invalid_argument("state size out of range");
    if (clause_indices.size() > 255) throw std::invalid_argument("too many phased clauses");
    struct Cm {
        uint64_t varmask, negmask;
    };
    std::vector<Cm> cm;
    for (int ci : clause_indices) {
        const Clause& c = inst.clauses.at(ci);
        uint64_t neg = 0;
        for (const auto& l : c.lits)
            if (l.pol < 0) neg |= bitmask(l.var);
        cm.push_back({c.var_mask(), neg});
    }
    std::vector<uint8_t> table(1ull << inst.n, 0);
    for (uint64_t x = 0; x < table.size(); x++) {
        int v = 0;
        for (const auto& c : cm)
            v += (popcount((x ^ c.negmask) & c.varmask) == 1) ? 0 : 1;
        table[x] = static_cast<uint8_t>(v);
    }
    return table;
}

void apply_phase(StateVector& psi, double alpha, const std::vector<uint8_t>& violations) {
    if (violations.size() != psi.amp.size())
        throw std::invalid_argument("violation table size mismatch");
    // phases repeat over the small violation-count range
    std::vector<std::complex<double>> ph(256);
    for (int v = 0; v < 256; v++)
        ph[v] = std::exp(std::complex<double>(0.0, alpha * v));
    for (uint64_t x = 0; x < psi.amp.size(); x++) psi.amp[x] *= ph[violations[x]];
}

void apply_diffusor(StateVector& psi, double angle, const DiffusorSpec& spec) {
    DiffusorPatterns pat = diffusor_patterns(spec);
    uint64_t supmask = 0;
    for (int q : pat.support) {
        if (q < 0 || q >= psi.n) throw std::out_of_range("diffusor qubit out of range");
        supmask |= bitmask(q);
    }
    uint64_t reg = n_mask(psi.n);
    if ((spec.diag_x | spec.diag_y) & ~reg)
        throw std::invalid_argument("diffusor dressing exceeds register");
    if ((spec.diag_x | spec.diag_y) & supmask)
        throw std::invalid_argument("diffusor dressing overlaps support");

    const std::complex<double> f =
        std::exp(std::complex<double>(0.0, -angle)) - 1.0;
    const int k = static_cast<int>(pat.support.size());
    const size_t np = pat.offsets.size();
    const uint64_t rest_count = 1ull << (psi.n - k);
    for (uint64_t r = 0; r < rest_count; r++) {
        uint64_t base = r;
        for (int p : pat.support) {
            uint64_t low = bitmask(p) - 1;
            base = ((base & ~low) << 1) | (base & low);
        }
        if (base & spec.diag_x) continue;
        if ((base & spec.diag_y) != spec.diag_y) continue;
        std::complex<double> c = 0.0;
        for (size_t i = 0; i < np; i++)
            c += std::conj(pat.phases[i]) * psi.amp[base | pat.offsets[i]];
        if (c == std::complex<double>(0.0)) continue;
        c *= f;
        for (size_t i = 0; i < np; i++) psi.amp[base | pat.offsets[i]] += pat.phases[i] * c;
    }
}

void apply_round(StateVector& psi, const AnsatzSpec& spec,
                 const std::vector<uint8_t>& violations, double alpha, double beta,
                 double gamma) {
    apply_phase(psi, alpha, violations);
    for (const auto& layer : spec.mixer.layers)
        for (const auto& d : layer) apply_diffusor(psi, beta, d);
    if (spec.symcov)
        for (const auto& layer : spec.symcov->layers)
            for (const auto& d : layer) apply_diffusor(psi, gamma, d);
}

PreparedRun prepare_run(const SatInstance& inst, const AnsatzSpec& spec) {
    if (inst.n != spec.n) throw std::invalid_argument("instance and ansatz sizes differ");
    PreparedRun ctx;
    ctx.spec = spec;
    ctx.violations = violation_table(inst, spec.phase_clauses);
    ctx.solutions = brute_solutions(inst);
    ctx.psi0 = prepare_initial(spec);
    return ctx;
}

namespace {

void check_schedule(const AnsatzSpec& spec, const Schedule& sched) {
    if (sched.beta.size() != sched.alpha.size())
        throw std::invalid_argument("schedule alpha/beta lengths differ");
    if (!sched.gamma.empty() && sched.gamma.size() != sched.alpha.size())
        throw std::invalid_argument("schedule gamma length differs");
    if (spec.symcov && !spec.symcov->layers.empty() && sched.gamma.empty() &&
        sched.rounds() > 0)
        throw std::invalid_argument("ansatz has symcov layers but schedule lacks gamma");
}

} // namespace

double run_prepared(const PreparedRun& ctx, const Schedule& sched) {
    check_schedule(ctx.spec, sched);
    StateVector psi = ctx.psi0;
    for (int l = 0; l < sched.rounds(); l++)
        apply_round(psi, ctx.spec, ctx.violations, sched.alpha[l], sched.beta[l],
                    sched.gamma.empty() ? 0.0 : sched.gamma[l]);
    return success_probability(psi, ctx.solutions);
}

RunResult run(const SatInstance& inst, const AnsatzSpec& spec, const Schedule& sched) {
    check_schedule(spec, sched);
    PreparedRun ctx = prepare_run(inst, spec);
    RunResult out;
    out.psi = ctx.psi0;
    for (int l = 0; l < sched.rounds(); l++) {
        apply_round(out.psi, spec, ctx.violations, sched.alpha[l], sched.beta[l],
                    sched.gamma.empty() ? 0.0 : sched.gamma[l]);
        out.round_norms.push_back(state_norm(out.psi));
    }
    out.success = success_probability(out.psi, ctx.solutions);
    return out;
}

double success_probability(const StateVector& psi, const std::vector<uint64_t>& solutions) {
    double s = 0.0;
    for (uint64_t x : solutions) s += std::norm(psi.amp.at(x));
    return s;
}

} // namespace symmix
