// Bit-level helpers for tripartite tables with binary inputs and outputs.
// A table maps 8 input tuples to 8 output tuples and packs into 24 bits:
// bits [3s, 3s+2] hold the output tuple at input tuple s, party 1 in the
// most significant position of each 3-bit group and of the tuple index.
// Shared by the census, the process-function sweep and the verdict sweep;
// not part of the public interface.
#pragma once

#include <cstdint>

namespace antinomy::tri {

// Input tuple index s = b1*4 + b2*2 + b3, so party j's input toggles with
// stride 4/2/1 and the tuples where it is 0 form these masks.
inline constexpr int kStride[3] = {4, 2, 1};
inline constexpr std::uint8_t kPair[3] = {0x0F, 0x33, 0x55};

// One 8-bit row per party: bit s of m[k] is party k's output at tuple s.
struct Masks {
    std::uint8_t m[3];
};

inline Masks masks(std::uint32_t code) {
    Masks r{{0, 0, 0}};
    for (int s = 0; s < 8; ++s) {
        const std::uint32_t d = (code >> (3 * s)) & 7u;
        r.m[0] |= static_cast<std::uint8_t>(((d >> 2) & 1u) << s);
        r.m[1] |= static_cast<std::uint8_t>(((d >> 1) & 1u) << s);
        r.m[2] |= static_cast<std::uint8_t>((d & 1u) << s);
    }
    return r;
}

// Tuples s (with input j equal to 0 there) where flipping input j changes
// party k's output. Nonzero iff component k depends on input j.
inline std::uint8_t diff(const Masks& M, int j, int k) {
    return static_cast<std::uint8_t>(((M.m[k] >> kStride[j]) ^ M.m[k]) & kPair[j]);
}

// Input tuples where input j takes value c.
inline std::uint8_t fix(int j, int c) {
    return c ? static_cast<std::uint8_t>(~kPair[j]) : kPair[j];
}

// Labelled dependence graph as an adjacency key: bit (j*3 + k) set iff
// component k depends on input j, j != k. Matches adjacency_key() on the
// equivalent Digraph.
inline std::uint16_t adjacency_key(const Masks& M) {
    std::uint16_t key = 0;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            if (j != k && diff(M, j, k)) key |= static_cast<std::uint16_t>(1u << (j * 3 + k));
    return key;
}

// Causal test specialized to three binary parties: some pivot k's output
// depends on its own input alone, and for both values of that input the
// residual two-party table signals at most one way.
inline bool causal(const Masks& M) {
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        if (diff(M, i, k) | diff(M, j, k)) continue;
        bool ok = true;
        for (int c = 0; c < 2 && ok; ++c) {
            const std::uint8_t within = fix(k, c);
            const bool i_on_j = (diff(M, j, i) & within) != 0;  // x_i moves with a_j
            const bool j_on_i = (diff(M, i, j) & within) != 0;  // x_j moves with a_i
            ok = !(i_on_j && j_on_i);
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace antinomy::tri
