#pragma once

#include <cstdint>
#include <span>

#include "hyperminhash/collision.hpp"
#include "hyperminhash/sketch.hpp"

namespace hmh {

// Collision handling for similarity estimates.
enum class Correction { none, exact, approximate };

struct JaccardResult {
    double estimate = 0;       // clamped to [0, 1]
    uint64_t matched = 0;      // equal non-empty bucket pairs
    uint64_t occupied = 0;     // buckets non-empty in at least one sketch
    double correction = 0;     // expected accidental matches subtracted
    Correction method = Correction::none;
};

// LogLog-style estimate from the exponent fields alone (with the usual
// small-range linear-counting switch). Exposed for tests; cardinality
// estimation on a sketch goes through estimate_cardinality.
double hll_subestimate(std::span<const uint32_t> exponents, uint32_t p);

// Cardinality of the inserted multiset. Uses the exponent-only estimate
// while it is trustworthy (below 1024 * 2^p) and otherwise the harmonic
// mean over the full floating-point bucket values, which keeps working
// where a plain LogLog with the same exponent cap would saturate.
double estimate_cardinality(const HmhSketch& sketch);

// Jaccard similarity from the fraction of matching buckets, minus the
// expected number of accidental matches when a correction is requested.
// Throws IncompatibleParamsError on mismatched sketches and
// EmptySketchError when both sketches are empty.
JaccardResult jaccard(const HmhSketch& a, const HmhSketch& b,
                      Correction correction = Correction::none);

// Intersection cardinality: Jaccard estimate times union cardinality.
double intersection(const HmhSketch& a, const HmhSketch& b,
                    Correction correction = Correction::none);

}  // namespace hmh
