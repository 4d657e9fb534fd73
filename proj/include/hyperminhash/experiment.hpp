#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hyperminhash/minhash.hpp"
#include "hyperminhash/sketch.hpp"

namespace hmh {

// One estimator entered into the accuracy sweep: either a full sketch
// configuration or a truncated MinHash baseline.
struct SweepMethod {
    std::string name;
    std::variant<SketchParams, MhParams> config;
};

// The three 256-byte arms compared by default: the sketch at p=8, q=4, r=4
// against MinHash with 256 8-bit and 128 16-bit buckets.
std::vector<SweepMethod> default_sweep_methods();

struct SweepConfig {
    std::vector<SweepMethod> methods = default_sweep_methods();
    std::vector<uint64_t> cardinalities;  // |A| = |B| per data point
    double target_jaccard = 1.0 / 3.0;
    uint32_t trials = 30;
    uint64_t seed = 0;           // trial i hashes with seed + i
    uint64_t max_items = uint64_t{1} << 24;
    unsigned threads = 0;        // 0: hardware concurrency
};

struct SweepRow {
    std::string method;
    uint64_t cardinality = 0;
    uint32_t trials = 0;
    double mean_rel_error = 0;
    double stddev_rel_error = 0;
};

// For each (method, cardinality) pair, builds `trials` pairs of sets with
// overlap chosen to realize the target Jaccard, sketches them, and records
// the relative error of the uncorrected Jaccard estimate against the
// realized similarity. Deterministic for a fixed config, independent of
// the thread count.
std::vector<SweepRow> run_similarity_sweep(const SweepConfig& config);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Empirical matching-bucket counts between sketches of disjoint sets,
// compared against the collision model.
struct CollisionTrialSummary {
    uint64_t n = 0;
    uint64_t m = 0;
    uint32_t trials = 0;
    double mean_collisions = 0;
    double sample_variance = 0;
    double expected_exact = 0;    // model prediction
    double expected_bound = 0;    // closed-form bound on the mean
    double var_bound = 0;         // bound on the variance
    bool mean_below_bound = false;
    bool mean_within_3se = false; // |mean - model| <= 3 standard errors
    bool variance_below_bound = false;  // up to 3 sd of a sample variance
};

CollisionTrialSummary run_collision_trials(const SketchParams& params, uint64_t n,
                                           uint64_t m, uint32_t trials, uint64_t seed,
                                           unsigned threads = 0);

void write_collision_csv(std::ostream& out, const CollisionTrialSummary& s);

}  // namespace hmh
