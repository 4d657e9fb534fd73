#include "hyperminhash/sketch.hpp"

namespace hmh {

void SketchParams::validate() const {
    if (p > 24) {
        throw ParamError("bucket exponent p out of range [0, 24]: " + std::to_string(p));
    }
    if (q < 1 || q > 6) {
        throw ParamError("exponent cap q out of range [1, 6]: " + std::to_string(q));
    }
    if (r > 32) {
        throw ParamError("mantissa width r out of range [0, 32]: " + std::to_string(r));
    }
    if (hash_id != kHashId) {
        throw ParamError("unknown hash algorithm id: '" + hash_id + "'");
    }
}

SketchParams make_params(uint32_t p, uint32_t q, uint32_t r, uint64_t seed) {
    SketchParams params;
    params.p = p;
    params.q = q;
    params.r = r;
    params.seed = seed;
    params.validate();
    return params;
}

namespace {

void check_bucket(Bucket b, const SketchParams& params) {
    if (b.exponent > params.exponent_cap()) {
        throw ParamError("bucket exponent " + std::to_string(b.exponent) +
                         " above cap 2^q = " + std::to_string(params.exponent_cap()));
    }
    if (b.exponent == 0 && b.mantissa != 0) {
        throw ParamError("empty bucket must carry mantissa 0");
    }
    if (params.r < 32 && b.mantissa >> params.r != 0) {
        throw ParamError("bucket mantissa " + std::to_string(b.mantissa) +
                         " wider than r = " + std::to_string(params.r) + " bits");
    }
}

}  // namespace

uint64_t pack_bucket(Bucket b, const SketchParams& params) {
    if (params.bucket_bits() > 62) {
        throw ParamError("packed bucket width " + std::to_string(params.bucket_bits()) +
                         " exceeds 62 bits");
    }
    check_bucket(b, params);
    return (uint64_t{b.exponent} << params.r) | b.mantissa;
}

Bucket unpack_bucket(uint64_t word, const SketchParams& params) {
    const uint64_t mask = (uint64_t{1} << params.r) - 1;
    Bucket b{static_cast<uint32_t>(word >> params.r),
             static_cast<uint32_t>(word & mask)};
    check_bucket(b, params);
    return b;
}

uint64_t bucket_order_key(Bucket b, const SketchParams& params) {
    const uint64_t mask = (uint64_t{1} << params.r) - 1;
    return (uint64_t{b.exponent} << params.r) | (mask & ~uint64_t{b.mantissa});
}

HmhSketch::HmhSketch(SketchParams params) : params_(std::move(params)) {
    params_.validate();
    mantissa_mask_ = (uint64_t{1} << params_.r) - 1;
    words_.assign(params_.bucket_count(), 0);
}

void HmhSketch::set_bucket(uint64_t i, Bucket b) {
    words_[i] = pack_bucket(b, params_);
}

void HmhSketch::insert_hashed(const HashWords& words) {
    const uint64_t idx = params_.p == 0 ? 0 : words.bucket_word >> (64 - params_.p);
    const Bucket candidate{rho(words.exponent_word, params_.q),
                           static_cast<uint32_t>(sigma(words.mantissa_word, params_.r))};
    if (bucket_less(candidate, bucket(idx))) {
        words_[idx] = (uint64_t{candidate.exponent} << params_.r) | candidate.mantissa;
    }
}

void HmhSketch::merge(const HmhSketch& other) {
    if (params_ != other.params_) {
        throw IncompatibleParamsError("cannot union sketches with different parameters");
    }
    for (uint64_t i = 0; i < words_.size(); i++) {
        if (bucket_less(other.bucket(i), bucket(i))) {
            words_[i] = other.words_[i];
        }
    }
}

HmhSketch union_of(const HmhSketch& s, const HmhSketch& t) {
    HmhSketch result = s;
    result.merge(t);
    return result;
}

}  // namespace hmh
