// alphabet.hpp -- letters with a cyclic bar decoration, finite words,
// and their projection onto roots of unity.
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aperiodic {

/// Alphabet parameters: `base_count` base letters (A, B, C, ...), each of
/// which exists in `order` bar flavours. The bar decoration cycles with
/// period `order`, so the full alphabet has base_count * order letters.
struct Alphabet {
    int base_count = 2;
    int order = 2;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

    int letter_count() const { return base_count * order; }

    void validate() const {
        if (base_count < 1 || base_count > 26)
            throw std::invalid_argument("alphabet: base_count must be in 1..26");
        if (order < 1 || order > 255)
            throw std::invalid_argument("alphabet: order must be in 1..255");
    }
};

/// A single symbol: base letter index (0 = A, 1 = B, ...) plus the number of
/// bars, counted modulo the alphabet order.
struct Letter {
    int base = 0;
    int bars = 0;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Shifts the bar count of `l` by `t` (any integer), modulo `order`.
/// Shifting by `order` is the identity.
inline Letter bar_shift(Letter l, long long t, int order) {
    if (order < 1)
        throw std::invalid_argument("bar_shift: order must be positive");
    long long b = (l.bars + t) % order;
    if (b < 0)
        b += order;
    return Letter{l.base, static_cast<int>(b)};
}

/// exp(2*pi*i * exponent / order), with exact values on the coordinate axes
/// so that orders 2 and 4 stay free of rounding noise.
inline std::complex<double> unit_root(int order, long long exponent) {
    if (order < 1)
        throw std::invalid_argument("unit_root: order must be positive");
    long long r = exponent % order;
    if (r < 0)
        r += order;
    if ((4 * r) % order == 0) {
        switch ((4 * r) / order) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            case 3: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) /
                         static_cast<double>(order);
    return {std::cos(angle), std::sin(angle)};
}

/// Finite word over a fixed alphabet. Letters are validated on construction;
/// all operations treat words as immutable values.
class Word {
public:
    Word(Alphabet alphabet, std::vector<Letter> letters)
        : alphabet_(alphabet), letters_(std::move(letters)) {
        alphabet_.validate();
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            const Letter& l = letters_[i];
            if (l.base < 0 || l.base >= alphabet_.base_count ||
                l.bars < 0 || l.bars >= alphabet_.order)
                throw std::invalid_argument(
                    "word: letter " + std::to_string(i + 1) +
                    " is outside the alphabet");
        }
    }

    static Word empty(Alphabet alphabet) { return Word(alphabet, {}); }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return letters_.size(); }
    bool is_empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const { return letters_; }

    Word subword(std::size_t pos, std::size_t len) const {
        if (pos + len > letters_.size())
            throw std::out_of_range("word: subword range out of bounds");
        return Word(alphabet_, std::vector<Letter>(letters_.begin() + pos,
                                                   letters_.begin() + pos + len));
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.alphabet_ == b.alphabet_ && a.letters_ == b.letters_;
    }

    // Lexicographic by (base, bars), then by length.
    friend bool operator<(const Word& a, const Word& b) {
        return std::lexicographical_compare(
            a.letters_.begin(), a.letters_.end(),
            b.letters_.begin(), b.letters_.end(),
            [](const Letter& x, const Letter& y) { return x < y; });
    }

private:
    Alphabet alphabet_;
    std::vector<Letter> letters_;
};

/// Content hash for words, for use in unordered containers.
struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](std::size_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(static_cast<std::size_t>(w.alphabet().base_count));
        mix(static_cast<std::size_t>(w.alphabet().order));
        for (const Letter& l : w.letters()) {
            mix(static_cast<std::size_t>(l.base));
            mix(static_cast<std::size_t>(l.bars));
        }
        return h;
    }
};

/// Weight sequence: nth roots of unity stored as exact exponent residues,
/// converted to complex numbers only at evaluation time.
class CoefficientSequence {
public:
    CoefficientSequence(int order, std::vector<std::uint8_t> exponents)
        : order_(order), exponents_(std::move(exponents)) {
        if (order_ < 1 || order_ > 255)
            throw std::invalid_argument("coefficient sequence: order must be in 1..255");
        for (std::uint8_t e : exponents_)
            if (e >= order_)
                throw std::invalid_argument(
                    "coefficient sequence: exponent residue >= order");
    }

    int order() const { return order_; }
    std::size_t size() const { return exponents_.size(); }
    int exponent(std::size_t i) const { return exponents_[i]; }
    const std::vector<std::uint8_t>& exponents() const { return exponents_; }

    std::complex<double> value(std::size_t i) const {
        return unit_root(order_, exponents_[i]);
    }

    std::vector<std::complex<double>> values() const {
        std::vector<std::complex<double>> table(static_cast<std::size_t>(order_));
        for (int r = 0; r < order_; ++r)
            table[static_cast<std::size_t>(r)] = unit_root(order_, r);
        std::vector<std::complex<double>> out;
        out.reserve(exponents_.size());
        for (std::uint8_t e : exponents_)
            out.push_back(table[e]);
        return out;
    }

    friend bool operator==(const CoefficientSequence& a,
                           const CoefficientSequence& b) {
        return a.order_ == b.order_ && a.exponents_ == b.exponents_;
    }

private:
    int order_;
    std::vector<std::uint8_t> exponents_;
};

/// Projects a word onto its weight sequence: a letter with b bars maps to
/// exp(2*pi*i*b/order). For order 2 this is the familiar +1/-1 assignment on
/// unbarred/barred letters.
inline CoefficientSequence factor_map(const Word& w) {
    if (w.is_empty())
        throw std::invalid_argument("factor_map: word must be nonempty");
    std::vector<std::uint8_t> exponents;
    exponents.reserve(w.size());
    for (const Letter& l : w.letters())
        exponents.push_back(static_cast<std::uint8_t>(l.bars));
    return CoefficientSequence(w.alphabet().order, std::move(exponents));
}

inline std::string format_letter(Letter l) {
    return std::string(1, static_cast<char>('A' + l.base)) + std::to_string(l.bars);
}

/// Token text form of a word: "A0 B1 ...". Bar counts are always written,
/// so the encoding round-trips exactly.
inline std::string format_word(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += format_letter(w[i]);
    }
    return out;
}

/// Parses whitespace-separated `<letter><bars>` tokens ("A0 B2"); a bare
/// letter is shorthand for zero bars. Errors name the offending token.
inline Word parse_word(std::string_view text, Alphabet alphabet) {
    alphabet.validate();
    std::vector<Letter> letters;
    std::size_t i = 0;
    std::size_t token_index = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size())
            break;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::string_view token = text.substr(start, i - start);
        ++token_index;
        const std::string where = "token " + std::to_string(token_index) + " '" +
                                  std::string(token) + "'";
        char c = token[0];
        if (c < 'A' || c >= 'A' + alphabet.base_count)
            throw std::invalid_argument("word parse: " + where +
                                        ": unknown base letter");
        int bars = 0;
        if (token.size() > 1) {
            for (char d : token.substr(1)) {
                if (d < '0' || d > '9')
                    throw std::invalid_argument("word parse: " + where +
                                                ": malformed bar count");
                bars = bars * 10 + (d - '0');
                if (bars > 255)
                    throw std::invalid_argument("word parse: " + where +
                                                ": bar count out of range");
            }
        }
        if (bars >= alphabet.order)
            throw std::invalid_argument("word parse: " + where +
                                        ": bar count must be < order " +
                                        std::to_string(alphabet.order));
        letters.push_back(Letter{c - 'A', bars});
    }
    return Word(alphabet, std::move(letters));
}

/// All distinct contiguous factors of length `len`, ordered lexicographically
/// by (base, bars).
inline std::set<Word> subword_set(const Word& w, std::size_t len) {
    if (len < 1 || len > w.size())
        throw std::out_of_range("subword_set: length out of range 1..|word|");
    std::set<Word> out;
    for (std::size_t pos = 0; pos + len <= w.size(); ++pos)
        out.insert(w.subword(pos, len));
    return out;
}

/// Position of a letter in the flattened alphabet, ordered by (base, bars).
inline int letter_index(Letter l, const Alphabet& alphabet) {
    return l.base * alphabet.order + l.bars;
}

inline Letter letter_from_index(int index, const Alphabet& alphabet) {
    return Letter{index / alphabet.order, index % alphabet.order};
}

} // namespace aperiodic
