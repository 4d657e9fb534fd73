#include "hyperminhash/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <functional>
#include <ostream>
#include <thread>

#include "hyperminhash/errors.hpp"
#include "hyperminhash/estimators.hpp"

namespace hmh {

namespace {

// Synthetic items are 64-bit counters in little-endian byte order, drawn
// from disjoint id ranges so overlaps are exactly the shared core.
constexpr uint64_t kExtraA = uint64_t{1} << 40;
constexpr uint64_t kExtraB = uint64_t{1} << 41;

HashWords hash_id_word(uint64_t id, uint64_t seed) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>(id >> (8 * i));
    return derive_words(std::string_view(bytes, sizeof(bytes)), seed);
}

// Runs fn(0..trials-1) across a worker pool. Each index is processed
// exactly once and writes only its own output slot, so scheduling order
// cannot change the results.
void parallel_trials(uint32_t trials, unsigned threads,
                     const std::function<void(uint32_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, trials);
    if (threads <= 1) {
        for (uint32_t i = 0; i < trials; ++i) fn(i);
        return;
    }
    std::atomic<uint32_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (uint32_t i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (std::thread& t : pool) t.join();
}

struct MeanStddev {
    double mean = 0;
    double stddev = 0;  // sample (n-1) flavor
};

MeanStddev summarize(const std::vector<double>& xs) {
    MeanStddev out;
    if (xs.empty()) return out;
    for (double x : xs) out.mean += x;
    out.mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double ss = 0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return out;
}

// Sketches for every method arm over one item stream; items are hashed
// once and fed to all arms, which share the seed.
struct ArmSketches {
    std::vector<HmhSketch> hmh;
    std::vector<MhSketch> mh;

    ArmSketches(const std::vector<SweepMethod>& methods, uint64_t seed) {
        for (const SweepMethod& method : methods) {
            if (const auto* hp = std::get_if<SketchParams>(&method.config)) {
                SketchParams params = *hp;
                params.seed = seed;
                hmh.emplace_back(params);
            } else {
                MhParams params = std::get<MhParams>(method.config);
                params.seed = seed;
                mh.emplace_back(params);
            }
        }
    }

    void insert(const HashWords& words) {
        for (HmhSketch& s : hmh) s.insert_hashed(words);
        for (MhSketch& s : mh) s.insert_hashed(words);
    }
};

}  // namespace

std::vector<SweepMethod> default_sweep_methods() {
    return {
        {"hmh_p8_q4_r4", make_params(8, 4, 4)},
        {"minhash_k256_w8", MhParams{.k_log2 = 8, .width = 8}},
        {"minhash_k128_w16", MhParams{.k_log2 = 7, .width = 16}},
    };
}

std::vector<SweepRow> run_similarity_sweep(const SweepConfig& config) {
    if (config.methods.empty()) throw ParamError("no methods to sweep");
    if (config.trials == 0) throw ParamError("need at least one trial");
    if (!(config.target_jaccard > 0.0) || config.target_jaccard > 1.0) {
        throw ParamError("target Jaccard must be in (0, 1]");
    }
    for (uint64_t n : config.cardinalities) {
        // Each trial streams both sets once: 2n hashed items.
        if (n > config.max_items) {
            throw ParamError("cardinality " + std::to_string(n) +
                             " exceeds the per-trial item budget");
        }
    }

    const size_t arms = config.methods.size();
    std::vector<SweepRow> rows;
    for (uint64_t n : config.cardinalities) {
        // |A| = |B| = n sharing a core of s items gives J = s / (2n - s).
        const double t = config.target_jaccard;
        const auto s = static_cast<uint64_t>(std::llround(2.0 * t * static_cast<double>(n) / (1.0 + t)));
        const double t_true =
            static_cast<double>(s) / static_cast<double>(2 * n - s);

        std::vector<std::vector<double>> errors(arms,
                                                std::vector<double>(config.trials));
        parallel_trials(config.trials, config.threads, [&](uint32_t trial) {
            const uint64_t seed = config.seed + trial;
            ArmSketches a(config.methods, seed);
            ArmSketches b(config.methods, seed);
            for (uint64_t id = 0; id < s; ++id) {
                const HashWords words = hash_id_word(id, seed);
                a.insert(words);
                b.insert(words);
            }
            for (uint64_t id = 0; id < n - s; ++id) {
                a.insert(hash_id_word(kExtraA + id, seed));
                b.insert(hash_id_word(kExtraB + id, seed));
            }
            size_t hi = 0;
            size_t mi = 0;
            for (size_t arm = 0; arm < arms; ++arm) {
                double estimate;
                if (std::holds_alternative<SketchParams>(config.methods[arm].config)) {
                    estimate = jaccard(a.hmh[hi], b.hmh[hi], Correction::none).estimate;
                    ++hi;
                } else {
                    estimate = mh_jaccard(a.mh[mi], b.mh[mi]);
                    ++mi;
                }
                errors[arm][trial] = std::abs(estimate - t_true) / t_true;
            }
        });

        for (size_t arm = 0; arm < arms; ++arm) {
            const MeanStddev stats = summarize(errors[arm]);
            rows.push_back({config.methods[arm].name, n, config.trials, stats.mean,
                            stats.stddev});
        }
    }

    // method-major ordering: one block per method, cardinalities ascending
    // in config order within it.
    std::vector<SweepRow> ordered;
    ordered.reserve(rows.size());
    for (size_t arm = 0; arm < arms; ++arm) {
        for (size_t i = arm; i < rows.size(); i += arms) ordered.push_back(rows[i]);
    }
    return ordered;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "method,cardinality,trials,mean_rel_error,stddev_rel_error\n";
    char line[160];
    for (const SweepRow& row : rows) {
        std::snprintf(line, sizeof(line), "%s,%llu,%u,%.6f,%.6f\n", row.method.c_str(),
                      static_cast<unsigned long long>(row.cardinality), row.trials,
                      row.mean_rel_error, row.stddev_rel_error);
        out << line;
    }
}

CollisionTrialSummary run_collision_trials(const SketchParams& params, uint64_t n,
                                           uint64_t m, uint32_t trials, uint64_t seed,
                                           unsigned threads) {
    params.validate();
    if (trials < 100) throw ParamError("need at least 100 trials for stable moments");

    std::vector<double> collisions(trials);
    parallel_trials(trials, threads, [&](uint32_t trial) {
        SketchParams trial_params = params;
        trial_params.seed = seed + trial;
        HmhSketch a(trial_params);
        HmhSketch b(trial_params);
        for (uint64_t id = 0; id < n; ++id) {
            a.insert_hashed(hash_id_word(kExtraA + id, trial_params.seed));
        }
        for (uint64_t id = 0; id < m; ++id) {
            b.insert_hashed(hash_id_word(kExtraB + id, trial_params.seed));
        }
        uint64_t matched = 0;
        for (uint64_t i = 0; i < a.bucket_count(); ++i) {
            const Bucket x = a.bucket(i);
            if (!x.empty() && x == b.bucket(i)) ++matched;
        }
        collisions[trial] = static_cast<double>(matched);
    });

    CollisionTrialSummary out;
    out.n = n;
    out.m = m;
    out.trials = trials;
    const MeanStddev stats = summarize(collisions);
    out.mean_collisions = stats.mean;
    out.sample_variance = stats.stddev * stats.stddev;
    out.expected_exact = expected_collisions_exact(static_cast<double>(n),
                                                   static_cast<double>(m), params);
    out.expected_bound = collision_bound(static_cast<double>(std::max(n, m)), params);
    out.var_bound = variance_bound(out.expected_exact);

    const double se = std::sqrt(out.sample_variance / trials);
    out.mean_below_bound = out.mean_collisions <= out.expected_bound;
    out.mean_within_3se = std::abs(out.mean_collisions - out.expected_exact) <= 3.0 * se;
    // A sample variance of a well-behaved statistic has spread about
    // var * sqrt(2/(trials-1)); allow three of those.
    const double var_slack = out.sample_variance * std::sqrt(2.0 / (trials - 1));
    out.variance_below_bound = out.sample_variance <= out.var_bound + 3.0 * var_slack;
    return out;
}

void write_collision_csv(std::ostream& out, const CollisionTrialSummary& s) {
    out << "n,m,trials,mean_collisions,sample_variance,expected_exact,"
           "mean_bound,variance_bound\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%llu,%llu,%u,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  static_cast<unsigned long long>(s.n),
                  static_cast<unsigned long long>(s.m), s.trials, s.mean_collisions,
                  s.sample_variance, s.expected_exact, s.expected_bound, s.var_bound);
    out << line;
}

}  // namespace hmh
