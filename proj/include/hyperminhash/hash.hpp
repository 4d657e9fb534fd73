#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <string_view>

namespace hmh {

// Identifier of the only hash algorithm this build knows. Stored in every
// sketch and in serialized files so that sketches hashed differently are
// rejected instead of silently compared.
inline constexpr std::string_view kHashId = "mmh3-128";

// Three 64-bit words per item, drawn from disjoint regions of 256 bits of
// keyed MurmurHash3 output: one word addresses the bucket, one feeds the
// leading-zero exponent, one supplies the mantissa bits.
struct HashWords {
    uint64_t bucket_word;
    uint64_t exponent_word;
    uint64_t mantissa_word;
};

// MurmurHash3 x64 128 with the seed widened to 64 bits (h1 = h2 = seed).
// Byte-identical to the reference implementation for seeds below 2^32.
void murmur3_x64_128(const void* key, size_t len, uint64_t seed, uint64_t out[2]);

uint64_t splitmix64(uint64_t x);

// Hashes `item` twice (second invocation under a splitmix64-derived
// sub-seed) and splits the 256-bit stream into three independent words.
// Total and deterministic: identical (item, seed) always yield identical
// words, on every platform.
HashWords derive_words(std::string_view item, uint64_t seed);

// Position of the leading 1-bit, counting from 1, capped at 2^q.
// An all-zero word maps to the cap.
inline uint32_t rho(uint64_t word, uint32_t q) {
    assert(q >= 1 && q <= 6);
    const uint32_t cap = uint32_t{1} << q;
    const uint32_t pos = static_cast<uint32_t>(std::countl_zero(word)) + 1;
    return pos < cap ? pos : cap;
}

// Top r bits of the word as an unsigned integer; r = 0 yields 0.
inline uint64_t sigma(uint64_t word, uint32_t r) {
    assert(r <= 63);
    return r == 0 ? 0 : word >> (64 - r);
}

}  // namespace hmh
