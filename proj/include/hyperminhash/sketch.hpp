#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hyperminhash/errors.hpp"
#include "hyperminhash/hash.hpp"

namespace hmh {

// Sketch configuration: 2^p buckets, exponent values in {0, ..., 2^q} where
// 0 marks an empty bucket, and r mantissa bits. Two sketches are comparable
// iff all five fields are equal.
struct SketchParams {
    uint32_t p = 12;
    uint32_t q = 6;
    uint32_t r = 10;
    uint64_t seed = 0;
    std::string hash_id = std::string(kHashId);

    uint64_t bucket_count() const { return uint64_t{1} << p; }
    uint32_t exponent_cap() const { return uint32_t{1} << q; }
    // Logical bits per bucket: q+1 for the exponent (the empty marker needs
    // one value beyond {1, ..., 2^q}) plus r for the mantissa.
    uint32_t bucket_bits() const { return q + 1 + r; }

    // Throws ParamError unless 0 <= p <= 24, 1 <= q <= 6, 0 <= r <= 32 and
    // hash_id names the built-in hash.
    void validate() const;

    bool operator==(const SketchParams&) const = default;
};

SketchParams make_params(uint32_t p, uint32_t q, uint32_t r, uint64_t seed = 0);

// One register: the floating-point encoding of a bucket's minimum hash.
struct Bucket {
    uint32_t exponent = 0;  // 0 = empty, otherwise in [1, 2^q]
    uint32_t mantissa = 0;  // in [0, 2^r - 1]; 0 whenever empty

    bool empty() const { return exponent == 0; }
    bool operator==(const Bucket&) const = default;
};

// Strict total order matching the order of the underlying minimum hashes:
// a is "less" than b when a stands for the smaller hash value, i.e. a has
// the larger exponent, or the same exponent and the smaller mantissa.
// The empty bucket is the maximum element.
inline bool bucket_less(Bucket a, Bucket b) {
    if (a.exponent != b.exponent) return a.exponent > b.exponent;
    return a.mantissa < b.mantissa;
}

// word = exponent * 2^r + mantissa, occupying q+1+r logical bits.
uint64_t pack_bucket(Bucket b, const SketchParams& params);
Bucket unpack_bucket(uint64_t word, const SketchParams& params);

// Max-transform packing: exponent kept, mantissa bit-complemented, so that
// bucket_less(a, b) == (bucket_order_key(a) > bucket_order_key(b)) and one
// unsigned comparison decides an insert or merge.
uint64_t bucket_order_key(Bucket b, const SketchParams& params);

// The sketch: 2^p buckets holding per-partition minima in floating-point
// form. A sketch is a plain value; mutation needs exclusive access, reads
// are freely concurrent. Streams are sharded by sketching per thread and
// merging with union_of.
class HmhSketch {
public:
    explicit HmhSketch(SketchParams params);

    const SketchParams& params() const { return params_; }
    uint64_t bucket_count() const { return words_.size(); }

    Bucket bucket(uint64_t i) const {
        const uint64_t w = words_[i];
        return Bucket{static_cast<uint32_t>(w >> params_.r),
                      static_cast<uint32_t>(w & mantissa_mask_)};
    }

    // Throws ParamError if b violates the bucket invariants for params().
    void set_bucket(uint64_t i, Bucket b);

    void insert(std::string_view item) {
        insert_hashed(derive_words(item, params_.seed));
    }

    // Bucket-update step with hashing already done: the addressed bucket is
    // replaced iff the candidate encodes a smaller hash.
    void insert_hashed(const HashWords& words);

    // Bucket-wise minimum; equals the sketch of the union of the underlying
    // item streams. Throws IncompatibleParamsError when params differ.
    void merge(const HmhSketch& other);

    bool operator==(const HmhSketch&) const = default;

private:
    SketchParams params_;
    uint64_t mantissa_mask_;
    std::vector<uint64_t> words_;  // pack_bucket encoding; empty bucket = 0
};

HmhSketch union_of(const HmhSketch& s, const HmhSketch& t);

}  // namespace hmh
