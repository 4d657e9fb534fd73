#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hyperminhash/errors.hpp"
#include "hyperminhash/minhash.hpp"

using namespace hmh;

namespace {

std::vector<std::string> random_items(std::mt19937_64& rng, size_t count) {
    std::vector<std::string> items;
    items.reserve(count);
    for (size_t i = 0; i < count; ++i) items.push_back("mh-" + std::to_string(rng()));
    return items;
}

MhSketch sketch_of(const MhParams& params, const std::vector<std::string>& items) {
    MhSketch s(params);
    for (const std::string& item : items) s.insert(item);
    return s;
}

}  // namespace

TEST_CASE("minhash parameter validation") {
    CHECK_NOTHROW(MhSketch(MhParams{.k_log2 = 0, .width = 1}));
    CHECK_NOTHROW(MhSketch(MhParams{.k_log2 = 24, .width = 32}));
    CHECK_THROWS_AS(MhSketch(MhParams{.k_log2 = 25, .width = 8}), ParamError);
    CHECK_THROWS_AS(MhSketch(MhParams{.k_log2 = 8, .width = 0}), ParamError);
    CHECK_THROWS_AS(MhSketch(MhParams{.k_log2 = 8, .width = 33}), ParamError);
}

TEST_CASE("first insert populates exactly one bucket") {
    MhSketch s(MhParams{.k_log2 = 4, .width = 8});
    s.insert("only");
    int populated = 0;
    for (uint64_t i = 0; i < s.bucket_count(); ++i) populated += s.value(i).has_value();
    CHECK(populated == 1);
}

TEST_CASE("buckets keep the minimum truncated value") {
    MhSketch s(MhParams{.k_log2 = 2, .width = 8});
    HashWords low{uint64_t{0b01} << 62, uint64_t{0x20} << 56, 0};
    HashWords high{uint64_t{0b01} << 62, uint64_t{0x90} << 56, 0};
    s.insert_hashed(high);
    CHECK(s.value(1) == 0x90);
    s.insert_hashed(low);
    CHECK(s.value(1) == 0x20);
    s.insert_hashed(high);  // larger value leaves the bucket unchanged
    CHECK(s.value(1) == 0x20);
    CHECK_FALSE(s.value(0).has_value());
}

TEST_CASE("re-insert is a no-op") {
    MhSketch s(MhParams{.k_log2 = 6, .width = 16});
    std::mt19937_64 rng(5);
    for (const std::string& item : random_items(rng, 300)) s.insert(item);
    s.insert("mh-again");
    MhSketch once = s;
    s.insert("mh-again");
    CHECK(s == once);
}

TEST_CASE("the all-ones truncated value is representable") {
    // empty is tracked out of band, so 0xff is a real stored value
    MhSketch s(MhParams{.k_log2 = 0, .width = 8});
    s.insert_hashed(HashWords{0, ~uint64_t{0}, 0});
    CHECK(s.value(0) == 0xff);
}

TEST_CASE("union with empty is identity") {
    const MhParams params{.k_log2 = 5, .width = 8};
    std::mt19937_64 rng(9);
    const MhSketch s = sketch_of(params, random_items(rng, 400));
    CHECK(union_of(s, MhSketch(params)) == s);
    CHECK(union_of(MhSketch(params), s) == s);
}

TEST_CASE("union rejects incompatible configurations") {
    const MhSketch a(MhParams{.k_log2 = 4, .width = 8});
    CHECK_THROWS_AS(union_of(a, MhSketch(MhParams{.k_log2 = 5, .width = 8})),
                    IncompatibleParamsError);
    CHECK_THROWS_AS(union_of(a, MhSketch(MhParams{.k_log2 = 4, .width = 16})),
                    IncompatibleParamsError);
    MhParams other_seed{.k_log2 = 4, .width = 8};
    other_seed.seed = 1;
    CHECK_THROWS_AS(union_of(a, MhSketch(other_seed)), IncompatibleParamsError);
}

TEST_CASE("union equals the sketch of the combined stream") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 200; ++round) {
        MhParams params{.k_log2 = static_cast<uint32_t>(rng() % 7),
                        .width = static_cast<uint32_t>(1 + rng() % 32)};
        params.seed = rng();
        const auto items_a = random_items(rng, 1 + rng() % 300);
        const auto items_b = random_items(rng, 1 + rng() % 300);
        auto both = items_a;
        both.insert(both.end(), items_b.begin(), items_b.end());
        CHECK(union_of(sketch_of(params, items_a), sketch_of(params, items_b)) ==
              sketch_of(params, both));
    }
}

TEST_CASE("union is a semilattice") {
    const MhParams params{.k_log2 = 5, .width = 12};
    std::mt19937_64 rng(21);
    for (int round = 0; round < 100; ++round) {
        const MhSketch a = sketch_of(params, random_items(rng, 80));
        const MhSketch b = sketch_of(params, random_items(rng, 80));
        const MhSketch c = sketch_of(params, random_items(rng, 80));
        CHECK(union_of(a, b) == union_of(b, a));
        CHECK(union_of(union_of(a, b), c) == union_of(a, union_of(b, c)));
        CHECK(union_of(a, a) == a);
    }
}

TEST_CASE("sketching is order-insensitive") {
    const MhParams params{.k_log2 = 6, .width = 10};
    std::mt19937_64 rng(33);
    auto items = random_items(rng, 1000);
    const MhSketch reference = sketch_of(params, items);
    for (int round = 0; round < 100; ++round) {
        std::shuffle(items.begin(), items.end(), rng);
        CHECK(sketch_of(params, items) == reference);
    }
}

TEST_CASE("jaccard of a sketch with itself is one") {
    std::mt19937_64 rng(37);
    const MhSketch s = sketch_of(MhParams{.k_log2 = 8, .width = 8},
                                 random_items(rng, 2000));
    CHECK(mh_jaccard(s, s) == 1.0);
}

TEST_CASE("jaccard errors") {
    const MhParams params{.k_log2 = 4, .width = 8};
    CHECK_THROWS_AS(mh_jaccard(MhSketch(params), MhSketch(params)), EmptySketchError);
    std::mt19937_64 rng(39);
    const MhSketch s = sketch_of(params, random_items(rng, 50));
    CHECK_THROWS_AS(mh_jaccard(s, MhSketch(MhParams{.k_log2 = 5, .width = 8})),
                    IncompatibleParamsError);
    CHECK(mh_jaccard(s, MhSketch(params)) == 0.0);
}

TEST_CASE("one-third overlap at low cardinality is accurate") {
    const uint64_t n = 1024;
    double total = 0;
    for (uint64_t trial = 0; trial < 100; ++trial) {
        MhParams params{.k_log2 = 8, .width = 8};
        params.seed = trial;
        MhSketch a(params);
        MhSketch b(params);
        for (uint64_t i = 0; i < n / 2; ++i) {
            const std::string shared = "core-" + std::to_string(i);
            a.insert(shared);
            b.insert(shared);
            a.insert("left-" + std::to_string(i));
            b.insert("right-" + std::to_string(i));
        }
        total += mh_jaccard(a, b);
    }
    CHECK(std::abs(total / 100.0 - 1.0 / 3.0) < 0.05);
}

TEST_CASE("8-bit truncation fails at high cardinality") {
    // With 2^16 items per set, nearly every bucket minimum truncates to
    // zero, driving the match fraction toward 1 regardless of overlap.
    const uint64_t n = uint64_t{1} << 16;
    double total_rel_error = 0;
    const int trials = 20;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        MhParams params{.k_log2 = 8, .width = 8};
        params.seed = 100 + trial;
        MhSketch a(params);
        MhSketch b(params);
        for (uint64_t i = 0; i < n / 2; ++i) {
            const std::string shared = "core-" + std::to_string(i);
            a.insert(shared);
            b.insert(shared);
            a.insert("left-" + std::to_string(i));
            b.insert("right-" + std::to_string(i));
        }
        total_rel_error += std::abs(mh_jaccard(a, b) - 1.0 / 3.0) / (1.0 / 3.0);
    }
    CHECK(total_rel_error / trials > 0.5);
}
