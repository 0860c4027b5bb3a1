#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ifskit/diagnostics.hpp"
#include "ifskit/model.hpp"
#include "ifskit/numeric.hpp"
#include "ifskit/presets.hpp"
#include "ifskit/rng.hpp"
#include "ifskit/word.hpp"

#include "generators.hpp"

using ifskit::Word;

TEST_CASE("diameter series on the halving/doubling pair", "[diagnostics]") {
    const ifskit::IfsModel model = ifskit::example6_ifs();
    const auto series = ifskit::diam_series(model, {0, 1});
    REQUIRE(series.backward.size() == 2);
    // backward applies the later letter first: cap to [0,1], then halve
    CHECK(series.backward[0] == 0.5);
    CHECK(series.backward[1] == 0.5);
    // forward halves first, then the doubling restores full diameter
    CHECK(series.forward[0] == 0.5);
    CHECK(series.forward[1] == 1.0);
    CHECK(series.cesaro[0] == 0.5);
    CHECK(series.cesaro[1] == 0.75);
}

TEST_CASE("uniform contractions shrink both series geometrically", "[diagnostics]") {
    const ifskit::IfsModel model = ifskit::cantor_ifs();
    const Word word = {1, 0, 1, 1, 0};
    const auto series = ifskit::diam_series(model, word);
    double expected = 1.0;
    for (std::size_t k = 0; k < word.size(); ++k) {
        expected /= 3.0;
        CHECK_THAT(series.backward[k], Catch::Matchers::WithinRel(expected, 1e-14));
        CHECK_THAT(series.forward[k], Catch::Matchers::WithinRel(expected, 1e-14));
    }
}

TEST_CASE("a constant map collapses every diameter to zero", "[diagnostics]") {
    const ifskit::Interval unit{0.0, 1.0};
    const ifskit::IfsModel model{
        unit, {ifskit::PiecewiseLinearMap({{0.0, 0.4}, {1.0, 0.4}})}, {1.0}};
    const auto series = ifskit::diam_series(model, {0, 0, 0});
    for (double h : series.backward) {
        CHECK(h == 0.0);
    }
    for (double f : series.forward) {
        CHECK(f == 0.0);
    }
}

TEST_CASE("series rejects empty or out-of-alphabet words", "[diagnostics]") {
    const ifskit::IfsModel model = ifskit::example6_ifs();
    CHECK_THROWS_AS(ifskit::diam_series(model, {}), std::invalid_argument);
    CHECK_THROWS_AS(ifskit::diam_series(model, {0, 2}), std::invalid_argument);
}

TEST_CASE("cesaro entries are the running means of the forward series", "[diagnostics]") {
    ifskit::SplitMix64 rng(0x11aau);
    for (int round = 0; round < 100; ++round) {
        const ifskit::IfsModel model = testgen::random_model(rng);
        const Word word = testgen::random_word(rng, model.map_count(), 1 + rng.next_u64() % 30);
        const auto series = ifskit::diam_series(model, word);
        ifskit::KahanSum sum;
        for (std::size_t k = 0; k < word.size(); ++k) {
            sum.add(series.forward[k]);
            CHECK_THAT(series.cesaro[k],
                       Catch::Matchers::WithinAbs(sum.value() / static_cast<double>(k + 1),
                                                  1e-12));
            CHECK(series.forward[k] >= 0.0);
            CHECK(series.forward[k] <= model.domain().diameter());
            CHECK(series.backward[k] <= model.domain().diameter());
        }
    }
}

TEST_CASE("backward diameters never increase with depth", "[diagnostics]") {
    ifskit::SplitMix64 rng(0x22bbu);
    for (int round = 0; round < 1000; ++round) {
        const ifskit::IfsModel model = testgen::random_model(rng);
        const Word word = testgen::random_word(rng, model.map_count(), 2 + rng.next_u64() % 20);
        const auto series = ifskit::diam_series(model, word);
        for (std::size_t k = 1; k < word.size(); ++k) {
            CHECK(series.backward[k] <= series.backward[k - 1]);
        }
    }
}

TEST_CASE("forward diameter of a longer word is bounded by its shifted tail", "[diagnostics]") {
    ifskit::SplitMix64 rng(0x33ccu);
    for (int round = 0; round < 1000; ++round) {
        const ifskit::IfsModel model = testgen::random_model(rng);
        const std::size_t m = 1 + rng.next_u64() % 10;
        const std::size_t k = rng.next_u64() % 10;
        const Word word = testgen::random_word(rng, model.map_count(), m + k);
        const double whole = ifskit::forward_diameter(model, word);
        const double tail = ifskit::forward_diameter(model, ifskit::shift(word, k));
        CHECK(whole <= tail);
    }
}

TEST_CASE("reversal swaps the two diameter orders exactly", "[diagnostics]") {
    ifskit::SplitMix64 rng(0x44ddu);
    for (int round = 0; round < 500; ++round) {
        const ifskit::IfsModel model = testgen::random_model(rng);
        const Word word = testgen::random_word(rng, model.map_count(), 1 + rng.next_u64() % 16);
        CHECK(ifskit::forward_diameter(model, word) ==
              ifskit::backward_diameter(model, ifskit::reversed(word)));
    }
}

TEST_CASE("enumerated integrals agree between the two orders", "[diagnostics]") {
    for (const auto& model :
         {ifskit::example6_ifs(), ifskit::cantor_ifs(), ifskit::malicet_ifs()}) {
        for (std::size_t n : {1u, 2u, 5u, 8u}) {
            const auto check = ifskit::reversal_integral_check(model, n);
            CHECK(check.word_count == (std::size_t{1} << n));
            CHECK(std::abs(check.forward_integral - check.backward_integral) <= 1e-12);
            CHECK(check.max_pointwise_diff == 0.0);
        }
    }
}

TEST_CASE("enumerated integrals match closed forms", "[diagnostics]") {
    // Uniform 1/3-contractions: every word of length n has diameter 3^-n.
    const auto cantor = ifskit::reversal_integral_check(ifskit::cantor_ifs(), 6);
    CHECK_THAT(cantor.forward_integral,
               Catch::Matchers::WithinRel(ifskit::int_pow(1.0 / 3.0, 6), 1e-13));

    const auto walk = ifskit::reversal_integral_check(ifskit::example6_ifs(), 2);
    CHECK(walk.forward_integral == 0.6875);
    CHECK(walk.backward_integral == 0.6875);

    const auto depth1 = ifskit::reversal_integral_check(ifskit::malicet_ifs(), 1);
    CHECK(depth1.forward_integral == depth1.backward_integral);
}

TEST_CASE("enumeration refuses to exceed the word cap", "[diagnostics]") {
    const ifskit::IfsModel model = ifskit::example6_ifs();
    CHECK_THROWS_WITH(ifskit::reversal_integral_check(model, 21),
                      Catch::Matchers::ContainsSubstring("Monte-Carlo"));
    CHECK_THROWS_AS(ifskit::reversal_integral_check(model, 5, 16),
                    std::invalid_argument);
    CHECK_NOTHROW(ifskit::reversal_integral_check(model, 4, 16));
}

TEST_CASE("backward contraction estimator matches closed-form cases", "[diagnostics]") {
    const ifskit::IfsModel cantor = ifskit::cantor_ifs();
    // 3^-5 is about 0.0041: below 0.01 for every word, above 0.001 for every word.
    const auto all = ifskit::estimate_backward_contraction(cantor, 5, 0.01, 200, 1);
    CHECK(all.value == 1.0);
    CHECK(all.std_error == 0.0);
    const auto none = ifskit::estimate_backward_contraction(cantor, 5, 0.001, 200, 1);
    CHECK(none.value == 0.0);
    CHECK(none.hits == 0);
    CHECK(none.trials == 200);
}

TEST_CASE("estimator results are deterministic in the seed", "[diagnostics]") {
    const ifskit::IfsModel model = ifskit::example6_ifs();
    const auto a = ifskit::estimate_backward_contraction(model, 60, 0.01, 500, 31);
    const auto b = ifskit::estimate_backward_contraction(model, 60, 0.01, 500, 31);
    CHECK(a.value == b.value);
    CHECK(a.hits == b.hits);
    // different seeds draw different words (hit counts may still collide)
    CHECK(ifskit::trial_word(model, 31, 0, 60) != ifskit::trial_word(model, 32, 0, 60));
}

TEST_CASE("seed-matched contraction estimates grow with depth", "[diagnostics]") {
    const ifskit::IfsModel model = ifskit::example6_ifs();
    double previous = -1.0;
    for (std::size_t depth : {25u, 50u, 100u, 200u}) {
        const auto estimate = ifskit::estimate_backward_contraction(model, depth, 0.01, 400, 5);
        CHECK(estimate.value >= previous);
        previous = estimate.value;
    }
}

TEST_CASE("cesaro decay estimator on contractive and flat models", "[diagnostics]") {
    const auto cantor = ifskit::estimate_cesaro_decay(ifskit::cantor_ifs(), 20, 0.2, 100, 9);
    CHECK(cantor.value == 1.0);

    const ifskit::Interval unit{0.0, 1.0};
    const ifskit::IfsModel constant{
        unit, {ifskit::PiecewiseLinearMap({{0.0, 0.3}, {1.0, 0.3}})}, {1.0}};
    const auto flat = ifskit::estimate_cesaro_decay(constant, 10, 1e-9, 50, 9);
    CHECK(flat.value == 1.0);
}

TEST_CASE("forward window estimator flags sustained contraction only", "[diagnostics]") {
    const auto cantor =
        ifskit::estimate_forward_window_decay(ifskit::cantor_ifs(), 20, 10, 0.01, 100, 9);
    CHECK(cantor.value == 1.0);

    // The doubling branch keeps restoring full diameter, so with a generous
    // threshold the window statistic stays well below 1.
    const auto walk =
        ifskit::estimate_forward_window_decay(ifskit::example6_ifs(), 64, 32, 0.99, 2000, 9);
    CHECK(walk.value < 0.9);
    CHECK(walk.value > 0.1);

    CHECK_THROWS_AS(
        ifskit::estimate_forward_window_decay(ifskit::example6_ifs(), 10, 10, 0.5, 10, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        ifskit::estimate_forward_window_decay(ifskit::example6_ifs(), 10, 0, 0.5, 10, 1),
        std::invalid_argument);
}

TEST_CASE("estimator argument validation", "[diagnostics]") {
    const ifskit::IfsModel model = ifskit::example6_ifs();
    CHECK_THROWS_AS(ifskit::estimate_backward_contraction(model, 10, 0.0, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ifskit::estimate_backward_contraction(model, 10, 0.01, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(ifskit::estimate_cesaro_decay(model, 0, 0.01, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("binomial standard error matches the hit fraction", "[diagnostics]") {
    const auto estimate =
        ifskit::estimate_backward_contraction(ifskit::example6_ifs(), 50, 0.01, 1000, 77);
    const double p = estimate.value;
    CHECK_THAT(estimate.std_error,
               Catch::Matchers::WithinRel(std::sqrt(p * (1.0 - p) / 1000.0), 1e-12));
    CHECK(estimate.hits == static_cast<std::size_t>(p * 1000.0 + 0.5));
}
