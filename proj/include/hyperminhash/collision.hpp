#pragma once

#include <cstdint>

#include "hyperminhash/sketch.hpp"

namespace hmh {

enum class CollisionMethod { exact, approximate, bound };

// Expected accidental-collision count between the sketches of two disjoint
// sets of the given cardinalities, with the variance bound E^2 + E.
struct CollisionEstimate {
    double n = 0;  // larger cardinality
    double m = 0;  // smaller cardinality
    double expected = 0;
    double variance_bound = 0;
    CollisionMethod method = CollisionMethod::exact;
};

// Expected number of matching buckets between sketches of two disjoint sets
// with n and m elements: the double sum over the (exponent, mantissa) boxes
// of the encoding, scaled by 2^p. Powers (1-b)^n are evaluated in log space
// (exp(n*log1p(-b))) so no arbitrary precision is needed for large n.
// Runs in O(2^q * 2^r) time, which is the reason the approximation below
// exists; keep r <= 16 or so when calling this directly.
// Cardinalities are real-valued so that estimated counts can be passed in.
double expected_collisions_exact(double n, double m, const SketchParams& params);

// Fast approximation: above 2^(p+5) the collision count is flat at
// 0.1699... * 2^(p-r) times a ratio factor; below it the r = 0 exact count
// divided by 2^r is close enough. Throws CardinalityRangeError when the
// larger cardinality exceeds 2^(2^q + r), where the flat regime ends.
double expected_collisions_approx(double n, double m, const SketchParams& params);

// Closed-form upper bound on the expected collisions: 2^p * (5/2^r + n/2^(p+2^q+r)).
double collision_bound(double n, const SketchParams& params);

// Single-bucket collision probability bound: 6/2^r + n/2^(2^q+r).
double gamma_bound(double n, uint32_t q, uint32_t r);

// Var(C) <= E[C]^2 + E[C].
double variance_bound(double expected);

CollisionEstimate estimate_collisions(double n, double m, const SketchParams& params,
                                      CollisionMethod method);

// Smallest configuration keeping the collision-induced absolute Jaccard
// error below epsilon * t_min for cardinalities up to n_max:
// r = ceil(log2(6/(epsilon*t_min))), p = ceil(log2(1/epsilon^2)), and the
// least q <= 6 with n_max < 2^(2^q).
SketchParams recommend_params(double epsilon, double t_min, uint64_t n_max);

}  // namespace hmh
