#include "hyperminhash/minhash.hpp"

#include "hyperminhash/errors.hpp"

namespace hmh {

void MhParams::validate() const {
    if (k_log2 > 24) throw ParamError("bucket count exponent must be at most 24");
    if (width < 1 || width > 32) throw ParamError("bucket width must be 1..32 bits");
    if (hash_id != kHashId) throw ParamError("unknown hash function id: " + hash_id);
}

MhSketch::MhSketch(const MhParams& params) : params_(params) {
    params_.validate();
    values_.assign(params_.bucket_count(), 0);
    occupied_.assign(params_.bucket_count(), 0);
}

std::optional<uint32_t> MhSketch::value(uint64_t index) const {
    if (!occupied_.at(index)) return std::nullopt;
    return values_[index];
}

void MhSketch::insert(std::string_view item) {
    insert_hashed(derive_words(item, params_.seed));
}

void MhSketch::insert_hashed(const HashWords& words) {
    const uint64_t index =
        params_.k_log2 == 0 ? 0 : words.bucket_word >> (64 - params_.k_log2);
    const auto candidate =
        static_cast<uint32_t>(sigma(words.exponent_word, params_.width));
    if (!occupied_[index] || candidate < values_[index]) {
        values_[index] = candidate;
        occupied_[index] = 1;
    }
}

void MhSketch::merge(const MhSketch& other) {
    if (params_ != other.params_) {
        throw IncompatibleParamsError("sketch parameters differ");
    }
    for (uint64_t i = 0; i < values_.size(); ++i) {
        if (other.occupied_[i] && (!occupied_[i] || other.values_[i] < values_[i])) {
            values_[i] = other.values_[i];
            occupied_[i] = 1;
        }
    }
}

MhSketch union_of(const MhSketch& a, const MhSketch& b) {
    MhSketch out = a;
    out.merge(b);
    return out;
}

double mh_jaccard(const MhSketch& a, const MhSketch& b) {
    if (a.params() != b.params()) {
        throw IncompatibleParamsError("sketch parameters differ");
    }
    uint64_t matched = 0;
    uint64_t occupied = 0;
    for (uint64_t i = 0; i < a.bucket_count(); ++i) {
        const auto x = a.value(i);
        const auto y = b.value(i);
        if (x || y) ++occupied;
        if (x && y && *x == *y) ++matched;
    }
    if (occupied == 0) throw EmptySketchError("both sketches are empty");
    return static_cast<double>(matched) / static_cast<double>(occupied);
}

}  // namespace hmh
