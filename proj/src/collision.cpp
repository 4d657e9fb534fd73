#include "hyperminhash/collision.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hyperminhash/errors.hpp"

namespace hmh {

namespace {

// Leading constant of the flat collision regime, 2^(p-r) * phi aside:
// the limit of the exact sum for n well above the bucket count.
constexpr double kFlatCollisionConstant = 0.169919487159739093975315012348;

// (1-b1)^n - (1-b1-width)^n without cancellation: the second factor is
// -expm1(n * log((1-b2)/(1-b1))), and the log of the ratio comes out of a
// single log1p because the box width is exact in binary.
double box_mass(double b1, double width, double n) {
    const double rest = 1.0 - b1;
    if (rest <= 0.0) return 0.0;  // b1 == 1: both powers vanish
    const double head = n * std::log1p(-b1);
    const double ratio = std::log1p(-width / rest);
    return -std::exp(head) * std::expm1(n * ratio);
}

}  // namespace

double expected_collisions_exact(double n, double m, const SketchParams& params) {
    params.validate();
    if (n < 0 || m < 0 || std::isnan(n) || std::isnan(m)) {
        throw ParamError("collision model needs nonnegative cardinalities");
    }
    if (n == 0 || m == 0) return 0.0;

    const int p = static_cast<int>(params.p);
    const int r = static_cast<int>(params.r);
    const int cap = static_cast<int>(params.exponent_cap());
    const double mant = std::ldexp(1.0, r);  // 2^r

    double sum = 0.0;
    for (int i = 1; i <= cap; ++i) {
        // Exponent value i covers hashes in (2^-i, 2^-(i-1)], except the
        // final value which also absorbs everything below it.
        const int scale = (i < cap) ? -(p + r + i) : -(p + r + i - 1);
        const double width = std::ldexp(1.0, scale);
        for (double j = 0; j < mant; ++j) {
            const double b1 = (i < cap) ? std::ldexp(mant + j, scale) : std::ldexp(j, scale);
            sum += box_mass(b1, width, n) * box_mass(b1, width, m);
        }
    }
    return std::ldexp(sum, p);
}

double expected_collisions_approx(double n, double m, const SketchParams& params) {
    params.validate();
    if (n < 0 || m < 0 || std::isnan(n) || std::isnan(m)) {
        throw ParamError("collision model needs nonnegative cardinalities");
    }
    if (n < m) std::swap(n, m);

    const int p = static_cast<int>(params.p);
    const int r = static_cast<int>(params.r);
    const int cap = static_cast<int>(params.exponent_cap());

    if (n > std::ldexp(1.0, cap + r)) {
        throw CardinalityRangeError(
            "cardinality too large for the collision approximation");
    }
    if (n > std::ldexp(1.0, p + 5)) {
        if (m == 0) return 0.0;
        const double ratio = n / m;
        const double phi = 4.0 * ratio / ((1.0 + ratio) * (1.0 + ratio));
        return kFlatCollisionConstant * std::ldexp(phi, p - r);
    }
    // Low range: collisions are dominated by the exponents; the mantissa
    // bits just split each box into 2^r equal slices.
    SketchParams coarse = params;
    coarse.r = 0;
    return std::ldexp(expected_collisions_exact(n, m, coarse), -r);
}

double collision_bound(double n, const SketchParams& params) {
    params.validate();
    const int shift = static_cast<int>(params.exponent_cap() + params.r);
    return std::ldexp(5.0, static_cast<int>(params.p) - static_cast<int>(params.r)) +
           std::ldexp(n, -shift);
}

double gamma_bound(double n, uint32_t q, uint32_t r) {
    SketchParams probe = make_params(0, q, r);  // reuse the range checks
    const int shift = static_cast<int>(probe.exponent_cap() + r);
    return std::ldexp(6.0, -static_cast<int>(r)) + std::ldexp(n, -shift);
}

double variance_bound(double expected) { return expected * expected + expected; }

CollisionEstimate estimate_collisions(double n, double m, const SketchParams& params,
                                      CollisionMethod method) {
    if (n < m) std::swap(n, m);
    CollisionEstimate out;
    out.n = n;
    out.m = m;
    out.method = method;
    switch (method) {
        case CollisionMethod::exact:
            out.expected = expected_collisions_exact(n, m, params);
            break;
        case CollisionMethod::approximate:
            out.expected = expected_collisions_approx(n, m, params);
            break;
        case CollisionMethod::bound:
            out.expected = collision_bound(n, params);
            break;
    }
    out.variance_bound = variance_bound(out.expected);
    return out;
}

SketchParams recommend_params(double epsilon, double t_min, uint64_t n_max) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw ParamError("error tolerance must be in (0, 1]");
    }
    if (!(t_min > 0.0) || t_min > 1.0) {
        throw ParamError("minimum Jaccard of interest must be in (0, 1]");
    }
    const auto ceil_log2 = [](double x) {
        return static_cast<uint32_t>(std::max(0.0, std::ceil(std::log2(x))));
    };
    const uint32_t r = ceil_log2(6.0 / (epsilon * t_min));
    const uint32_t p = ceil_log2(1.0 / (epsilon * epsilon));

    // Smallest q with n_max < 2^(2^q), i.e. 2^q at least the bit width of
    // n_max; q = 1 handles everything up to 3.
    const int width = std::bit_width(std::max<uint64_t>(n_max, 1));
    uint32_t q = 1;
    while (q < 6 && (1 << q) < width) ++q;
    if ((1 << q) < width) {
        throw ParamError("no exponent range covers the requested cardinality");
    }
    return make_params(p, q, r);
}

}  // namespace hmh
