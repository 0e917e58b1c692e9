#pragma once

#include <cstdint>
#include <vector>

#include "symmix/dense.hpp"
#include "symmix/reduce.hpp"
#include "symmix/term.hpp"

namespace symmix {

enum class AngleTag { beta, gamma };

// One rank-1 diffusor rotation U(angle) = I + (e^{-i angle} - 1) P where
// P = T(diag_x, diag_y, 0, 0) * |psi><psi| and |psi> is an equal-weight
// superposition of basis patterns on the support qubits.
//
// The two-pattern form (patterns empty) is determined by the ladder masks:
// pattern a has 0 at v and 1 at w, pattern b the reverse, with relative
// phase e^{i theta}. Clause mixers and partial mixers carry an explicit
// support/pattern list instead.
struct DiffusorSpec {
    uint64_t diag_x = 0, diag_y = 0;
    uint64_t v = 0, w = 0;
    double theta = 0.0;
    AngleTag tag = AngleTag::beta;

    std::vector<int> support;       // used only by the multi-pattern form
    std::vector<uint64_t> patterns; // local basis states over `support`

    bool multi_pattern() const { return !patterns.empty(); }
};

struct MixerProgram {
    std::vector<std::vector<DiffusorSpec>> layers;

    size_t total_specs() const {
        size_t k = 0;
        for (auto& l : layers) k += l.size();
        return k;
    }
};

DiffusorSpec build_Q(double theta, uint64_t v, uint64_t w);
DiffusorSpec build_P(uint64_t x, uint64_t y, uint64_t v, uint64_t w);
DiffusorSpec make_pattern_diffusor(std::vector<int> support,
                                   std::vector<uint64_t> patterns, AngleTag tag);

// Support qubits and pattern phases in a uniform representation shared by
// the dense lowering and the statevector kernel.
struct DiffusorPatterns {
    std::vector<int> support;                 // ascending qubit indices
    std::vector<uint64_t> offsets;            // patterns scattered to full-width masks
    std::vector<std::complex<double>> phases; // pattern amplitudes, modulus 1/sqrt(k)
};
DiffusorPatterns diffusor_patterns(const DiffusorSpec& spec);

Mat diffusor_projector_matrix(const DiffusorSpec& spec, int n);
Mat diffusor_unitary_matrix(double beta, const DiffusorSpec& spec, int n);

MixerProgram compile_mixer(const GeneratorCollection& collection, AngleTag tag);
TermSum compile_driver(const GeneratorCollection& collection,
                       const std::vector<CRational>& coefficients);

MixerProgram prefab_x_mixer(int n);
MixerProgram prefab_ring_xy(int n);

} // namespace symmix
