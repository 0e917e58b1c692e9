#pragma once

#include <cstdint>
#include <random>

namespace symmix {

// Deterministic seed-stream derivation. Used to split one master seed into
// independent sub-seeds (per instance, per batch draw) so that parallel
// generation stays reproducible.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    uint64_t s = master + 0x632be59bd9b4e019ull * (stream + 1);
    return splitmix64(s);
}

// mt19937_64 with rejection sampling instead of std distributions; the
// standard distributions are not bit-portable across library versions and
// pinned-seed artifacts must replay exactly everywhere.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform on [0, k)
    uint64_t uniform_below(uint64_t k) {
        if (k == 0) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % k;
        uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % k;
    }

    bool coin() { return eng_() & 1ull; }

    // uniform on [0,1) with 53 random bits
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace symmix
