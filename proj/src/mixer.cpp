#include "symmix/mixer.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace symmix {

DiffusorSpec build_Q(double theta, uint64_t v, uint64_t w) {
    if ((v & w) != 0) throw std::invalid_argument("build_Q: overlapping ladder masks");
    if ((v | w) == 0) throw std::invalid_argument("build_Q: empty pattern");
    DiffusorSpec s;
    s.v = v;
    s.w = w;
    s.theta = theta;
    return s;
}

DiffusorSpec build_P(uint64_t x, uint64_t y, uint64_t v, uint64_t w) {
    Term probe{64, x, y, v, w};
    if (!probe.masks_disjoint()) throw std::invalid_argument("build_P: masks overlap");
    DiffusorSpec s = build_Q(0.0, v, w);
    s.diag_x = x;
    s.diag_y = y;
    return s;
}

DiffusorSpec make_pattern_diffusor(std::vector<int> support,
                                   std::vector<uint64_t> patterns, AngleTag tag) {
    if (support.empty() || patterns.empty())
        throw std::invalid_argument("make_pattern_diffusor: empty support or patterns");
    DiffusorSpec s;
    s.support = std::move(support);
    s.patterns = std::move(patterns);
    s.tag = tag;
    return s;
}

DiffusorPatterns diffusor_patterns(const DiffusorSpec& spec) {
    DiffusorPatterns out;
    if (spec.multi_pattern()) {
        out.support = spec.support;
        double amp = 1.0 / std::sqrt(static_cast<double>(spec.patterns.size()));
        for (uint64_t p : spec.patterns) {
            uint64_t off = 0;
            for (size_t j = 0; j < spec.support.size(); j++)
                if (bit(p, static_cast<int>(j))) off |= bitmask(spec.support[j]);
            out.offsets.push_back(off);
            out.phases.push_back(amp);
        }
        return out;
    }
    uint64_t sup = spec.v | spec.w;
    for (int i = 0; i < 64; i++)
        if (bit(sup, i)) out.support.push_back(i);
    // pattern a: 1 exactly at w; pattern b: 1 exactly at v
    double amp = 1.0 / std::sqrt(2.0);
    out.offsets.push_back(spec.w);
    out.phases.push_back(amp);
    out.offsets.push_back(spec.v);
    out.phases.push_back(amp * std::complex<double>(std::cos(spec.theta), std::sin(spec.theta)));
    return out;
}

Mat diffusor_projector_matrix(const DiffusorSpec& spec, int n) {
    if (n > kLowerCap) throw std::invalid_argument("diffusor matrix: n exceeds cap");
    DiffusorPatterns pat = diffusor_patterns(spec);
    uint64_t supmask = 0;
    for (int q : pat.support) supmask |= bitmask(q);
    Mat P(1 << n);
    for (uint64_t s = 0; s < (1ull << n); s++) {
        if ((s & spec.diag_x) != 0) continue;
        if ((s & spec.diag_y) != spec.diag_y) continue;
        uint64_t rest = s & ~supmask;
        // column s overlaps pattern i when it matches offsets[i] on the support
        for (size_t i = 0; i < pat.offsets.size(); i++) {
            if ((s & supmask) != pat.offsets[i]) continue;
            for (size_t j = 0; j < pat.offsets.size(); j++) {
                uint64_t t = rest | pat.offsets[j];
                P.at(static_cast<int>(t), static_cast<int>(s)) +=
                    pat.phases[j] * std::conj(pat.phases[i]);
            }
        }
    }
    return P;
}

Mat diffusor_unitary_matrix(double beta, const DiffusorSpec& spec, int n) {
    Mat P = diffusor_projector_matrix(spec, n);
    std::complex<double> f = std::exp(std::complex<double>(0.0, -beta)) - 1.0;
    Mat U = mat_add(Mat::identity(1 << n), mat_scale(P, f));
    return U;
}

MixerProgram compile_mixer(const GeneratorCollection& collection, AngleTag tag) {
    MixerProgram prog;
    for (const auto& grp : collection.groups) {
        std::vector<DiffusorSpec> layer;
        for (const auto& g : grp.members) {
            DiffusorSpec s = build_P(g.term.x, g.term.y, g.term.v, g.term.w);
            s.tag = tag;
            layer.push_back(s);
        }
        prog.layers.push_back(std::move(layer));
    }
    return prog;
}

TermSum compile_driver(const GeneratorCollection& collection,
                       const std::vector<CRational>& coefficients) {
    size_t total = collection.total_members();
    if (!coefficients.empty() && coefficients.size() != total)
        throw std::invalid_argument("compile_driver: coefficient count mismatch");
    TermSum acc;
    size_t idx = 0;
    for (const auto& grp : collection.groups)
        for (const auto& g : grp.members) {
            CRational c = coefficients.empty() ? CRational(1) : coefficients[idx];
            idx++;
            HermitianPair scaled{g.alpha * c, g.term};
            acc = sum_add(acc, pair_to_sum(scaled));
        }
    return acc;
}

MixerProgram prefab_x_mixer(int n) {
    if (n < 1) throw std::invalid_argument("prefab_x_mixer: n must be >= 1");
    MixerProgram prog;
    std::vector<DiffusorSpec> layer;
    for (int i = 0; i < n; i++) layer.push_back(build_Q(0.0, bitmask(i), 0));
    prog.layers.push_back(std::move(layer));
    return prog;
}

MixerProgram prefab_ring_xy(int n) {
    if (n < 2) throw std::invalid_argument("prefab_ring_xy: n must be >= 2");
    auto hop = [](int i, int j) { return build_Q(0.0, bitmask(i), bitmask(j)); };
    MixerProgram prog;
    if (n == 2) {
        prog.layers.push_back({hop(0, 1)});
        prog.layers.push_back({hop(0, 1)});
        return prog;
    }
    std::vector<DiffusorSpec> odd, even, last;
    for (int i = 0; i + 1 < n; i += 2) odd.push_back(hop(i, i + 1));
    for (int i = 1; i + 1 < n; i += 2) even.push_back(hop(i, i + 1));
    if (n % 2 == 0) {
        even.push_back(hop(n - 1, 0));
        prog.layers.push_back(std::move(odd));
        prog.layers.push_back(std::move(even));
    } else {
        last.push_back(hop(n - 1, 0));
        prog.layers.push_back(std::move(odd));
        prog.layers.push_back(std::move(even));
        prog.layers.push_back(std::move(last));
    }
    return prog;
}

} // namespace symmix
