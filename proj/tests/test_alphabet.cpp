#include "aperiodic/alphabet.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace aperiodic;

namespace {

Word make(const char* text, int base_count, int order) {
    return parse_word(text, Alphabet{base_count, order});
}

} // namespace

TEST_CASE("bar_shift cycles with the alphabet order") {
    CHECK(bar_shift(Letter{0, 0}, 0, 2) == Letter{0, 0});
    CHECK(bar_shift(Letter{1, 1}, 1, 2) == Letter{1, 0}); // double bar is none
    CHECK(bar_shift(Letter{2, 2}, 2, 3) == Letter{2, 1}); // 2+2 = 1 mod 3
    CHECK(bar_shift(Letter{0, 1}, -1, 4) == Letter{0, 0});
    CHECK(bar_shift(Letter{0, 0}, 3, 3) == Letter{0, 0});
}

TEST_CASE("bar_shift composes additively") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> order_dist(1, 7);
    std::uniform_int_distribution<int> shift_dist(-20, 20);
    for (int i = 0; i < 200; ++i) {
        const int order = order_dist(rng);
        const Letter l{0, std::uniform_int_distribution<int>(0, order - 1)(rng)};
        const int s = shift_dist(rng);
        const int t = shift_dist(rng);
        CHECK(bar_shift(bar_shift(l, s, order), t, order) ==
              bar_shift(l, s + t, order));
    }
}

TEST_CASE("unit_root returns exact values on the axes") {
    CHECK(unit_root(2, 0) == std::complex<double>(1.0, 0.0));
    CHECK(unit_root(2, 1) == std::complex<double>(-1.0, 0.0));
    CHECK(unit_root(4, 1) == std::complex<double>(0.0, 1.0));
    CHECK(unit_root(4, 3) == std::complex<double>(0.0, -1.0));
    const std::complex<double> w3 = unit_root(3, 1);
    CHECK(std::abs(w3 - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-15);
}

TEST_CASE("factor_map projects bars onto roots of unity") {
    const Word w = make("A0 B0 A0 B1 A0 B0 A1 B0", 2, 2);
    const CoefficientSequence seq = factor_map(w);
    REQUIRE(seq.size() == 8);
    const int expected[] = {0, 0, 0, 1, 0, 0, 1, 0};
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(seq.exponent(i) == expected[i]);
    CHECK(seq.value(3) == std::complex<double>(-1.0, 0.0));

    const CoefficientSequence single = factor_map(make("A", 2, 2));
    REQUIRE(single.size() == 1);
    CHECK(single.value(0) == std::complex<double>(1.0, 0.0));

    const CoefficientSequence ternary = factor_map(make("A0 B1 C2", 3, 3));
    CHECK(ternary.exponent(0) == 0);
    CHECK(ternary.exponent(1) == 1);
    CHECK(ternary.exponent(2) == 2);
    CHECK(std::abs(ternary.value(1) - unit_root(3, 1)) == 0.0);

    CHECK_THROWS_AS(factor_map(Word::empty(Alphabet{2, 2})), std::invalid_argument);
}

TEST_CASE("letterwise bar shift multiplies the factor map by a root of unity") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int order = std::uniform_int_distribution<int>(1, 5)(rng);
        const int bases = std::uniform_int_distribution<int>(1, 4)(rng);
        const int len = std::uniform_int_distribution<int>(1, 12)(rng);
        std::vector<Letter> letters;
        for (int i = 0; i < len; ++i)
            letters.push_back(Letter{
                std::uniform_int_distribution<int>(0, bases - 1)(rng),
                std::uniform_int_distribution<int>(0, order - 1)(rng)});
        const Word w(Alphabet{bases, order}, letters);
        const int t = std::uniform_int_distribution<int>(0, order - 1)(rng);

        std::vector<Letter> shifted;
        for (const Letter& l : w.letters())
            shifted.push_back(bar_shift(l, t, order));
        const Word wt(Alphabet{bases, order}, shifted);

        const auto base_values = factor_map(w).values();
        const auto shifted_values = factor_map(wt).values();
        const std::complex<double> scale = unit_root(order, t);
        for (std::size_t i = 0; i < base_values.size(); ++i)
            CHECK(std::abs(shifted_values[i] - scale * base_values[i]) < 1e-12);
    }
}

TEST_CASE("word codec round-trips and validates tokens") {
    const Word w = make("A0 B1", 2, 2);
    CHECK(w.size() == 2);
    CHECK(w[1] == Letter{1, 1});

    CHECK(format_word(parse_word("A0 B2 C1", Alphabet{3, 3})) == "A0 B2 C1");
    CHECK(make("A B", 2, 2) == make("A0 B0", 2, 2));

    CHECK_THROWS_WITH_AS(static_cast<void>(parse_word("A0 B5", Alphabet{2, 4})),
                         doctest::Contains("token 2"), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_word("Z0", Alphabet{2, 2})),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_word("A0 Bx", Alphabet{2, 2})),
                    std::invalid_argument);
}

TEST_CASE("word codec round-trips on random words") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int order = std::uniform_int_distribution<int>(1, 6)(rng);
        const int bases = std::uniform_int_distribution<int>(1, 5)(rng);
        const int len = std::uniform_int_distribution<int>(0, 24)(rng);
        std::vector<Letter> letters;
        for (int i = 0; i < len; ++i)
            letters.push_back(Letter{
                std::uniform_int_distribution<int>(0, bases - 1)(rng),
                std::uniform_int_distribution<int>(0, order - 1)(rng)});
        const Word w(Alphabet{bases, order}, letters);
        CHECK(parse_word(format_word(w), w.alphabet()) == w);
    }
}

TEST_CASE("subword_set lists distinct factors in lexicographic order") {
    const Word ab = make("A B", 2, 2);
    const std::set<Word> singles = subword_set(ab, 1);
    CHECK(singles.size() == 2);
    CHECK(singles.count(make("A", 2, 2)) == 1);
    CHECK(singles.count(make("B", 2, 2)) == 1);

    const Word w = make("A0 B0 A0 B1", 2, 2);
    const std::set<Word> pairs = subword_set(w, 2);
    CHECK(pairs.size() == 3);
    CHECK(pairs.count(make("A0 B0", 2, 2)) == 1);
    CHECK(pairs.count(make("B0 A0", 2, 2)) == 1);
    CHECK(pairs.count(make("A0 B1", 2, 2)) == 1);

    CHECK_THROWS_AS(subword_set(w, 5), std::out_of_range);
    CHECK_THROWS_AS(subword_set(w, 0), std::out_of_range);
}

TEST_CASE("subword counts respect the window and alphabet limits") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int order = std::uniform_int_distribution<int>(1, 3)(rng);
        const int bases = std::uniform_int_distribution<int>(1, 3)(rng);
        const int len = std::uniform_int_distribution<int>(2, 30)(rng);
        std::vector<Letter> letters;
        for (int i = 0; i < len; ++i)
            letters.push_back(Letter{
                std::uniform_int_distribution<int>(0, bases - 1)(rng),
                std::uniform_int_distribution<int>(0, order - 1)(rng)});
        const Word w(Alphabet{bases, order}, letters);
        const std::size_t l = static_cast<std::size_t>(
            std::uniform_int_distribution<int>(1, len)(rng));
        const double alphabet_words =
            std::pow(static_cast<double>(bases * order), static_cast<double>(l));
        const double window_count = static_cast<double>(w.size() - l + 1);
        CHECK(static_cast<double>(subword_set(w, l).size()) <=
              std::min(window_count, alphabet_words));
    }
}
