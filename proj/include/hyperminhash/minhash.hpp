#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperminhash/hash.hpp"

namespace hmh {

// Classic k-partition MinHash truncated to `width` bits per bucket, used as
// the fixed-memory baseline in the accuracy experiments. A sketch takes
// 2^k_log2 * width bits (ignoring the out-of-band empty flags).
struct MhParams {
    uint32_t k_log2 = 8;  // log2 of the bucket count, 0..24
    uint32_t width = 8;   // stored bits per bucket, 1..32
    uint64_t seed = 0;
    std::string hash_id = std::string(kHashId);

    uint64_t bucket_count() const { return uint64_t{1} << k_log2; }
    void validate() const;
    bool operator==(const MhParams&) const = default;
};

class MhSketch {
  public:
    explicit MhSketch(const MhParams& params);

    const MhParams& params() const { return params_; }
    uint64_t bucket_count() const { return params_.bucket_count(); }

    // Empty buckets are tracked out of band, so the full value range of a
    // hash truncation stays usable.
    std::optional<uint32_t> value(uint64_t index) const;

    void insert(std::string_view item);
    void insert_hashed(const HashWords& words);
    void merge(const MhSketch& other);

    bool operator==(const MhSketch&) const = default;

  private:
    MhParams params_;
    std::vector<uint32_t> values_;
    std::vector<uint8_t> occupied_;
};

MhSketch union_of(const MhSketch& a, const MhSketch& b);

// Fraction of equal non-empty buckets among buckets non-empty in either
// sketch. Throws EmptySketchError when both sketches are empty.
double mh_jaccard(const MhSketch& a, const MhSketch& b);

}  // namespace hmh
