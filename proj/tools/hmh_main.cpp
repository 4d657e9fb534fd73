// Command-line front end: build sketches from newline-delimited streams,
// merge and query them, evaluate the collision model, and run the
// accuracy/collision experiment harnesses.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperminhash/collision.hpp"
#include "hyperminhash/errors.hpp"
#include "hyperminhash/estimators.hpp"
#include "hyperminhash/experiment.hpp"
#include "hyperminhash/serialize.hpp"
#include "hyperminhash/sketch.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitIncompatible = 2;
constexpr int kExitIo = 3;
constexpr int kExitDomain = 4;
constexpr int kExitUsage = 64;

uint64_t default_seed() {
    const char* env = std::getenv("HMH_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 0);
    if (end == nullptr || *end != '\0') {
        throw hmh::ParamError(std::string("HMH_SEED is not an integer: ") + env);
    }
    return value;
}

hmh::Correction parse_correction(const std::string& name) {
    if (name == "none") return hmh::Correction::none;
    if (name == "exact") return hmh::Correction::exact;
    if (name == "approx") return hmh::Correction::approximate;
    throw hmh::ParamError("unknown correction mode: " + name);
}

struct ParamFlags {
    uint32_t p = 12;
    uint32_t q = 6;
    uint32_t r = 10;
    uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("-p", p, "log2 of the bucket count")->capture_default_str();
        cmd->add_option("-q", q, "log2 of the exponent range")->capture_default_str();
        cmd->add_option("-r", r, "mantissa bits per bucket")->capture_default_str();
        cmd->add_option("--seed", seed, "hash seed (default: HMH_SEED or 0)");
    }
};

int cmd_sketch(const ParamFlags& flags, const std::string& input,
               const std::string& output) {
    hmh::HmhSketch sketch(hmh::make_params(flags.p, flags.q, flags.r, flags.seed));

    std::ifstream file;
    std::istream* in = &std::cin;
    if (!input.empty() && input != "-") {
        file.open(input, std::ios::binary);
        if (!file) throw hmh::IoError("cannot open " + input + " for reading");
        in = &file;
    }
    uint64_t items = 0;
    std::string line;
    while (std::getline(*in, line)) {
        sketch.insert(line);
        ++items;
    }
    if (in->bad()) throw hmh::IoError("failed reading " + (input.empty() ? "stdin" : input));

    hmh::save_sketch(sketch, output);
    double distinct = 0.0;
    if (items > 0) distinct = hmh::estimate_cardinality(sketch);
    std::printf("items=%llu distinct=%.17g\n", static_cast<unsigned long long>(items),
                distinct);
    return kExitOk;
}

int cmd_union(const std::string& a, const std::string& b, const std::string& output) {
    hmh::HmhSketch merged =
        hmh::union_of(hmh::load_sketch(a), hmh::load_sketch(b));
    hmh::save_sketch(merged, output);
    return kExitOk;
}

int cmd_card(const std::string& path) {
    std::printf("%.17g\n", hmh::estimate_cardinality(hmh::load_sketch(path)));
    return kExitOk;
}

int cmd_jaccard(const std::string& a, const std::string& b,
                const std::string& correction) {
    const hmh::JaccardResult res = hmh::jaccard(
        hmh::load_sketch(a), hmh::load_sketch(b), parse_correction(correction));
    std::printf("jaccard=%.17g matched=%llu occupied=%llu expected_collisions=%.17g\n",
                res.estimate, static_cast<unsigned long long>(res.matched),
                static_cast<unsigned long long>(res.occupied), res.correction);
    return kExitOk;
}

int cmd_intersect(const std::string& a, const std::string& b,
                  const std::string& correction) {
    std::printf("%.17g\n", hmh::intersection(hmh::load_sketch(a), hmh::load_sketch(b),
                                             parse_correction(correction)));
    return kExitOk;
}

int cmd_expected(const ParamFlags& flags, double n, double m, bool approx) {
    const hmh::SketchParams params = hmh::make_params(flags.p, flags.q, flags.r);
    const double expected = approx ? hmh::expected_collisions_approx(n, m, params)
                                   : hmh::expected_collisions_exact(n, m, params);
    std::printf("expected=%.17g bound=%.17g\n", expected,
                hmh::collision_bound(std::max(n, m), params));
    return kExitOk;
}

int cmd_sweep(const hmh::SweepConfig& config, const std::string& output) {
    const std::vector<hmh::SweepRow> rows = hmh::run_similarity_sweep(config);
    if (output.empty() || output == "-") {
        hmh::write_sweep_csv(std::cout, rows);
        return kExitOk;
    }
    std::ofstream out(output, std::ios::trunc);
    if (!out) throw hmh::IoError("cannot open " + output + " for writing");
    hmh::write_sweep_csv(out, rows);
    if (!out.flush()) throw hmh::IoError("failed writing " + output);
    return kExitOk;
}

int cmd_verify(const ParamFlags& flags, uint64_t n, uint64_t m, uint32_t trials,
               unsigned threads) {
    const hmh::SketchParams params = hmh::make_params(flags.p, flags.q, flags.r);
    const hmh::CollisionTrialSummary summary =
        hmh::run_collision_trials(params, n, m, trials, flags.seed, threads);
    hmh::write_collision_csv(std::cout, summary);
    const bool ok = summary.mean_below_bound && summary.mean_within_3se;
    if (!ok) {
        std::fprintf(stderr, "verification failed: mean %.6f vs exact %.6f (bound %.6f)\n",
                     summary.mean_collisions, summary.expected_exact,
                     summary.expected_bound);
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HyperMinHash sketches: streaming cardinality and similarity"};
    app.require_subcommand(1);

    ParamFlags flags;
    std::string input;
    std::string output;
    std::string file_a;
    std::string file_b;
    std::string correction = "none";
    double card_n = 0;
    double card_m = 0;
    bool want_exact = false;
    bool want_approx = false;
    hmh::SweepConfig sweep;
    sweep.cardinalities = {1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 18, 1 << 20, 1 << 22};
    uint64_t verify_n = 1000;
    uint64_t verify_m = 1000;
    uint32_t verify_trials = 2000;
    unsigned threads = 0;

    CLI::App* c_sketch = app.add_subcommand(
        "sketch", "Sketch newline-delimited items from a stream");
    flags.attach(c_sketch);
    c_sketch->add_option("--input,-i", input, "input file (default: stdin)");
    c_sketch->add_option("--output,-o", output, "sketch file to write")->required();

    CLI::App* c_union = app.add_subcommand("union", "Merge two sketch files");
    c_union->add_option("a", file_a, "first sketch file")->required();
    c_union->add_option("b", file_b, "second sketch file")->required();
    c_union->add_option("--output,-o", output, "merged sketch file")->required();

    CLI::App* c_card = app.add_subcommand("card", "Estimate the cardinality of a sketch");
    c_card->add_option("a", file_a, "sketch file")->required();

    CLI::App* c_jac = app.add_subcommand("jaccard", "Estimate Jaccard similarity");
    c_jac->add_option("a", file_a, "first sketch file")->required();
    c_jac->add_option("b", file_b, "second sketch file")->required();
    c_jac->add_option("--correction", correction, "collision correction: none|exact|approx")
        ->capture_default_str();

    CLI::App* c_int = app.add_subcommand("intersect", "Estimate intersection cardinality");
    c_int->add_option("a", file_a, "first sketch file")->required();
    c_int->add_option("b", file_b, "second sketch file")->required();
    c_int->add_option("--correction", correction, "collision correction: none|exact|approx")
        ->capture_default_str();

    CLI::App* c_exp = app.add_subcommand(
        "expected-collisions", "Expected matching buckets for disjoint sets");
    flags.attach(c_exp);
    c_exp->add_option("-n", card_n, "first cardinality")->required();
    c_exp->add_option("-m", card_m, "second cardinality")->required();
    c_exp->add_flag("--exact", want_exact, "use the exact double sum (default)");
    c_exp->add_flag("--approx", want_approx, "use the fast approximation");

    CLI::App* c_sweep = app.add_subcommand(
        "sweep", "Similarity-accuracy sweep over the 256-byte configurations");
    c_sweep->add_option("--trials", sweep.trials, "trials per data point")
        ->capture_default_str();
    c_sweep->add_option("--seed", sweep.seed, "base seed (default: HMH_SEED or 0)");
    c_sweep->add_option("--cardinalities", sweep.cardinalities, "set sizes to test")
        ->capture_default_str();
    c_sweep->add_option("--jaccard", sweep.target_jaccard, "target similarity")
        ->capture_default_str();
    c_sweep->add_option("--max-items", sweep.max_items, "per-set item budget")
        ->capture_default_str();
    c_sweep->add_option("--threads", sweep.threads, "worker threads (0: auto)");
    c_sweep->add_option("--output,-o", output, "CSV file (default: stdout)");

    CLI::App* c_verify = app.add_subcommand(
        "verify-collisions", "Monte-Carlo check of the collision model");
    flags.attach(c_verify);
    c_verify->add_option("-n", verify_n, "first set size")->capture_default_str();
    c_verify->add_option("-m", verify_m, "second set size")->capture_default_str();
    c_verify->add_option("--trials", verify_trials, "disjoint pairs to sketch")
        ->capture_default_str();
    c_verify->add_option("--threads", threads, "worker threads (0: auto)");

    try {
        flags.seed = default_seed();
        sweep.seed = flags.seed;
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? kExitOk : kExitUsage;
        }

        if (c_sketch->parsed()) return cmd_sketch(flags, input, output);
        if (c_union->parsed()) return cmd_union(file_a, file_b, output);
        if (c_card->parsed()) return cmd_card(file_a);
        if (c_jac->parsed()) return cmd_jaccard(file_a, file_b, correction);
        if (c_int->parsed()) return cmd_intersect(file_a, file_b, correction);
        if (c_exp->parsed()) {
            if (want_exact && want_approx) {
                throw hmh::ParamError("--exact and --approx are mutually exclusive");
            }
            return cmd_expected(flags, card_n, card_m, want_approx);
        }
        if (c_sweep->parsed()) return cmd_sweep(sweep, output);
        if (c_verify->parsed()) {
            return cmd_verify(flags, verify_n, verify_m, verify_trials, threads);
        }
        std::fprintf(stderr, "no subcommand given\n");
        return kExitUsage;
    } catch (const hmh::IncompatibleParamsError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIncompatible;
    } catch (const hmh::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const hmh::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 70;
    }
}
