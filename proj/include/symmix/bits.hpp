#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symmix {

inline int popcount(uint64_t m) { return std::popcount(m); }

inline bool bit(uint64_t m, int i) { return (m >> i) & 1ull; }

inline uint64_t bitmask(int i) { return 1ull << i; }

// Bitmasks serialize as lowercase hex with qubit 0 in the least significant
// bit. "0" for the empty mask.
inline std::string mask_to_hex(uint64_t m) {
    if (m == 0) return "0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    while (m) {
        out.insert(out.begin(), digits[m & 0xf]);
        m >>= 4;
    }
    return out;
}

inline uint64_t mask_from_hex(const std::string& s) {
    std::string t = s;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
    if (t.empty() || t.size() > 16) throw std::invalid_argument("bad hex mask: " + s);
    uint64_t m = 0;
    for (char c : t) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("bad hex mask: " + s);
        m = (m << 4) | static_cast<uint64_t>(d);
    }
    return m;
}

} // namespace symmix
