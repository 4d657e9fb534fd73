#include "hyperminhash/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperminhash/errors.hpp"

namespace hmh {

namespace {

// Standard LogLog bias constants; the closed form kicks in at 128 buckets
// and the published small-m values cover the rest.
double alpha_for(size_t m) {
    if (m <= 16) return 0.673;
    if (m <= 32) return 0.697;
    if (m <= 64) return 0.709;
    return 0.7213 / (1.0 + 1.079 / static_cast<double>(m));
}

}  // namespace

double hll_subestimate(std::span<const uint32_t> exponents, uint32_t p) {
    const size_t m = exponents.size();
    if (m == 0 || m != (size_t{1} << p)) {
        throw ParamError("exponent vector size must be 2^p");
    }
    double inv_sum = 0.0;
    size_t zeros = 0;
    for (uint32_t e : exponents) {
        inv_sum += std::ldexp(1.0, -static_cast<int>(e));
        zeros += (e == 0);
    }
    const double md = static_cast<double>(m);
    const double raw = alpha_for(m) * md * md / inv_sum;
    if (raw <= 2.5 * md && zeros > 0) {
        return md * std::log(md / static_cast<double>(zeros));
    }
    return raw;
}

double estimate_cardinality(const HmhSketch& sketch) {
    const SketchParams& params = sketch.params();
    const uint64_t count = sketch.bucket_count();

    std::vector<uint32_t> exponents(count);
    for (uint64_t i = 0; i < count; ++i) exponents[i] = sketch.bucket(i).exponent;
    const double loglog = hll_subestimate(exponents, params.p);
    if (loglog < 1024.0 * static_cast<double>(count)) return loglog;

    // Beyond the comfort zone of the exponent-only estimate, fall back to
    // the harmonic mean of the full bucket values 2^-exp * (1 + mant/2^r),
    // whose extra mantissa bits extend the usable range.
    const double mant_scale = std::ldexp(1.0, -static_cast<int>(params.r));
    double inv_sum = 0.0;
    for (uint64_t i = 0; i < count; ++i) {
        const Bucket b = sketch.bucket(i);
        inv_sum += std::ldexp(1.0 + static_cast<double>(b.mantissa) * mant_scale,
                              -static_cast<int>(b.exponent));
    }
    if (inv_sum <= 0.0) {
        throw SaturatedSketchError("sketch exhausted its value range");
    }
    const double md = static_cast<double>(count);
    return md * md / inv_sum;
}

JaccardResult jaccard(const HmhSketch& a, const HmhSketch& b, Correction correction) {
    if (a.params() != b.params()) {
        throw IncompatibleParamsError("sketch parameters differ");
    }
    JaccardResult out;
    out.method = correction;
    const uint64_t count = a.bucket_count();
    for (uint64_t i = 0; i < count; ++i) {
        const Bucket x = a.bucket(i);
        const Bucket y = b.bucket(i);
        const bool xe = x.empty();
        const bool ye = y.empty();
        if (!xe || !ye) ++out.occupied;
        if (!xe && x == y) ++out.matched;
    }
    if (out.occupied == 0) {
        throw EmptySketchError("both sketches are empty");
    }
    if (correction != Correction::none) {
        const double n = estimate_cardinality(a);
        const double m = estimate_cardinality(b);
        out.correction = correction == Correction::exact
                             ? expected_collisions_exact(n, m, a.params())
                             : expected_collisions_approx(n, m, a.params());
    }
    const double raw = (static_cast<double>(out.matched) - out.correction) /
                       static_cast<double>(out.occupied);
    out.estimate = std::clamp(raw, 0.0, 1.0);
    return out;
}

double intersection(const HmhSketch& a, const HmhSketch& b, Correction correction) {
    const JaccardResult j = jaccard(a, b, correction);
    return j.estimate * estimate_cardinality(union_of(a, b));
}

}  // namespace hmh
