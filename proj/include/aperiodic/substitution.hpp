// substitution.hpp -- constant-length substitution rules with bar-swap
// symmetry: the two length-2 sign rules, their compositions, and the
// Fourier-matrix rules of any order. Images of barred letters are derived
// from the base images, so bar-equivariance holds by construction.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "aperiodic/alphabet.hpp"
#include "aperiodic/polyroots.hpp"
#include "aperiodic/recurrence.hpp"

namespace aperiodic {

class SubstitutionRule {
public:
    /// Builds a rule from the images of the base (bars = 0) letters.
    /// All images must share one length, live over the given alphabet, and
    /// start with a letter of the A family; the barred images follow by
    /// shifting every letter of the base image.
    SubstitutionRule(Alphabet alphabet, std::vector<Word> base_images)
        : alphabet_(alphabet), base_images_(std::move(base_images)) {
        alphabet_.validate();
        if (base_images_.size() != static_cast<std::size_t>(alphabet_.base_count))
            throw std::invalid_argument(
                "substitution: need one image per base letter");
        length_ = static_cast<int>(base_images_.front().size());
        if (length_ < 1)
            throw std::invalid_argument("substitution: images must be nonempty");
        for (const Word& image : base_images_) {
            if (image.alphabet() != alphabet_)
                throw std::invalid_argument("substitution: image alphabet mismatch");
            if (static_cast<int>(image.size()) != length_)
                throw std::invalid_argument(
                    "substitution: images must share one length");
            if (image[0].base != 0)
                throw std::invalid_argument(
                    "substitution: every base image must start in the A family");
        }
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int length() const { return length_; }

    const Word& base_image(int base) const {
        return base_images_.at(static_cast<std::size_t>(base));
    }

    /// Image of an arbitrary letter, derived by bar-equivariance.
    Word image(Letter l) const {
        if (l.base < 0 || l.base >= alphabet_.base_count || l.bars < 0 ||
            l.bars >= alphabet_.order)
            throw std::invalid_argument("substitution: letter outside alphabet");
        const Word& base = base_images_[static_cast<std::size_t>(l.base)];
        if (l.bars == 0)
            return base;
        std::vector<Letter> letters;
        letters.reserve(base.size());
        for (const Letter& x : base.letters())
            letters.push_back(bar_shift(x, l.bars, alphabet_.order));
        return Word(alphabet_, std::move(letters));
    }

    friend bool operator==(const SubstitutionRule& a, const SubstitutionRule& b) {
        return a.alphabet_ == b.alphabet_ && a.base_images_ == b.base_images_;
    }

private:
    Alphabet alphabet_;
    std::vector<Word> base_images_;
    int length_;
};

/// The plus sign rule: A -> AB, B -> A B1.
inline SubstitutionRule s_plus_rule() {
    const Alphabet ab{2, 2};
    return SubstitutionRule(ab, {Word(ab, {{0, 0}, {1, 0}}),
                                 Word(ab, {{0, 0}, {1, 1}})});
}

/// The minus sign rule: A -> A B1, B -> AB.
inline SubstitutionRule s_minus_rule() {
    const Alphabet ab{2, 2};
    return SubstitutionRule(ab, {Word(ab, {{0, 0}, {1, 1}}),
                                 Word(ab, {{0, 0}, {1, 0}})});
}

inline SubstitutionRule sign_rule(int sigma) {
    if (sigma == 1)
        return s_plus_rule();
    if (sigma == -1)
        return s_minus_rule();
    throw std::invalid_argument("sign_rule: sigma must be +1 or -1");
}

/// Order-n Fourier rule on n base letters in n flavours: the image of base
/// letter j places base letter r at position r with (r * j) mod n bars,
/// mirroring the rows of the order-n Fourier matrix.
inline SubstitutionRule fourier_rule(int n) {
    if (n < 2)
        throw std::invalid_argument("fourier_rule: order must be >= 2");
    const Alphabet ab{n, n};
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<Letter> letters;
        letters.reserve(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            letters.push_back(Letter{r, (r * j) % n});
        images.emplace_back(ab, std::move(letters));
    }
    return SubstitutionRule(ab, std::move(images));
}

/// Applies a rule letterwise; the result concatenates the images.
inline Word apply(const SubstitutionRule& rule, const Word& w) {
    if (w.alphabet() != rule.alphabet())
        throw std::invalid_argument("apply: word alphabet does not match the rule");
    std::vector<Letter> letters;
    letters.reserve(w.size() * static_cast<std::size_t>(rule.length()));
    for (const Letter& l : w.letters()) {
        const Word img = rule.image(l);
        letters.insert(letters.end(), img.letters().begin(), img.letters().end());
    }
    return Word(rule.alphabet(), std::move(letters));
}

/// Composition f after g: (f . g)(a) = f applied letterwise to g(a).
inline SubstitutionRule compose(const SubstitutionRule& f,
                                const SubstitutionRule& g) {
    if (f.alphabet() != g.alphabet())
        throw std::invalid_argument("compose: alphabets differ");
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(f.alphabet().base_count));
    for (int base = 0; base < f.alphabet().base_count; ++base)
        images.push_back(apply(f, g.base_image(base)));
    return SubstitutionRule(f.alphabet(), std::move(images));
}

/// The composite rule S_{s0} . S_{s1} . ... . S_{s_{p-1}} of a periodic sign
/// program; one application advances the binary recurrence by one period.
inline SubstitutionRule rule_from_signs(const SignProgram& program) {
    if (!program.is_periodic())
        throw std::invalid_argument("rule_from_signs: program must be periodic");
    const std::vector<int>& pattern = program.pattern();
    SubstitutionRule rule = sign_rule(pattern.back());
    for (std::size_t i = pattern.size() - 1; i-- > 0;)
        rule = compose(sign_rule(pattern[i]), rule);
    return rule;
}

/// First `len` letters of the one-sided fixed point grown from `seed`.
/// The seed must begin its own image (A and its barred variants do).
inline Word fixed_point_prefix(const SubstitutionRule& rule, Letter seed,
                               std::size_t len) {
    const Word seed_image = rule.image(seed);
    if (seed_image[0] != seed)
        throw std::invalid_argument(
            "fixed_point_prefix: seed letter does not begin its own image");
    Word w(rule.alphabet(), {seed});
    while (w.size() < len)
        w = apply(rule, w);
    return w.subword(0, len);
}

/// Letter at 1-based position `pos` of the fixed point, by walking the
/// base-L digits of pos-1 from the most significant end. O(log pos).
inline Letter letter_at(const SubstitutionRule& rule, Letter seed,
                        std::uint64_t pos) {
    if (pos < 1)
        throw std::out_of_range("letter_at: positions start at 1");
    const Word seed_image = rule.image(seed);
    if (seed_image[0] != seed)
        throw std::invalid_argument(
            "letter_at: seed letter does not begin its own image");
    const std::uint64_t radix = static_cast<std::uint64_t>(rule.length());
    std::vector<unsigned> digits;
    for (std::uint64_t i = pos - 1; i > 0; i /= radix)
        digits.push_back(static_cast<unsigned>(i % radix));
    Letter current = seed;
    for (std::size_t i = digits.size(); i-- > 0;)
        current = rule.image(current)[digits[i]];
    return current;
}

/// Letter-occurrence counts of a rule. Convention: at(a, b) is the number of
/// occurrences of letter a in the image of letter b, so every column sums to
/// the rule length.
class SubstitutionMatrix {
public:
    explicit SubstitutionMatrix(int size)
        : size_(size), entries_(static_cast<std::size_t>(size) *
                                    static_cast<std::size_t>(size),
                                0) {
        if (size < 1)
            throw std::invalid_argument("substitution matrix: size must be >= 1");
    }

    int size() const { return size_; }

    long long& at(int row, int col) {
        return entries_[static_cast<std::size_t>(row) *
                            static_cast<std::size_t>(size_) +
                        static_cast<std::size_t>(col)];
    }
    long long at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) *
                            static_cast<std::size_t>(size_) +
                        static_cast<std::size_t>(col)];
    }

    const std::vector<long long>& entries() const { return entries_; }

    SubstitutionMatrix operator*(const SubstitutionMatrix& other) const {
        if (other.size_ != size_)
            throw std::invalid_argument("substitution matrix: size mismatch");
        SubstitutionMatrix out(size_);
        for (int i = 0; i < size_; ++i)
            for (int k = 0; k < size_; ++k) {
                const long long v = at(i, k);
                if (v == 0)
                    continue;
                for (int j = 0; j < size_; ++j)
                    out.at(i, j) += v * other.at(k, j);
            }
        return out;
    }

    SubstitutionMatrix power(int exponent) const {
        if (exponent < 1)
            throw std::invalid_argument("substitution matrix: power must be >= 1");
        SubstitutionMatrix result = *this;
        for (int i = 1; i < exponent; ++i)
            result = result * *this;
        return result;
    }

    std::vector<long long> column_sums() const {
        std::vector<long long> sums(static_cast<std::size_t>(size_), 0);
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j)
                sums[static_cast<std::size_t>(j)] += at(i, j);
        return sums;
    }

private:
    int size_;
    std::vector<long long> entries_;
};

inline SubstitutionMatrix substitution_matrix(const SubstitutionRule& rule) {
    const Alphabet& ab = rule.alphabet();
    SubstitutionMatrix m(ab.letter_count());
    for (int col = 0; col < ab.letter_count(); ++col) {
        const Word img = rule.image(letter_from_index(col, ab));
        for (const Letter& l : img.letters())
            ++m.at(letter_index(l, ab), col);
    }
    return m;
}

/// Full eigenvalue multiset, sorted by decreasing modulus and then by
/// argument. Exact characteristic polynomial, refined roots; repeated
/// eigenvalues keep full accuracy.
inline std::vector<std::complex<double>> eigenvalues(const SubstitutionMatrix& m) {
    const polyroots::IntPolynomial p =
        polyroots::characteristic_polynomial(m.entries(), m.size());
    const auto roots = polyroots::roots_with_multiplicity(p);

    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(m.size()));
    for (const auto& r : roots) {
        std::complex<double> v = r.value;
        if (std::abs(v.real()) < 1e-12)
            v = {0.0, v.imag()};
        if (std::abs(v.imag()) < 1e-12)
            v = {v.real(), 0.0};
        for (int i = 0; i < r.multiplicity; ++i)
            out.push_back(v);
    }
    std::sort(out.begin(), out.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  const double ma = std::abs(a);
                  const double mb = std::abs(b);
                  if (ma != mb)
                      return ma > mb;
                  return std::arg(a) < std::arg(b);
              });
    return out;
}

namespace detail {

/// Letters reachable from `seed` by repeatedly taking image letters.
inline std::vector<Letter> reachable_letters(const SubstitutionRule& rule,
                                             Letter seed) {
    const Alphabet& ab = rule.alphabet();
    std::vector<char> seen(static_cast<std::size_t>(ab.letter_count()), 0);
    std::vector<Letter> queue{seed};
    seen[static_cast<std::size_t>(letter_index(seed, ab))] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const Word img = rule.image(queue[i]);
        for (const Letter& l : img.letters()) {
            const std::size_t idx = static_cast<std::size_t>(letter_index(l, ab));
            if (!seen[idx]) {
                seen[idx] = 1;
                queue.push_back(l);
            }
        }
    }
    return queue;
}

/// Primitivity of the rule restricted to the letters reachable from seed,
/// via boolean powers of the incidence matrix up to the Wielandt bound.
inline bool is_primitive_on_component(const SubstitutionRule& rule, Letter seed) {
    const Alphabet& ab = rule.alphabet();
    const std::vector<Letter> letters = reachable_letters(rule, seed);
    const int s = static_cast<int>(letters.size());
    std::vector<int> slot(static_cast<std::size_t>(ab.letter_count()), -1);
    for (int i = 0; i < s; ++i)
        slot[static_cast<std::size_t>(letter_index(letters[static_cast<std::size_t>(i)], ab))] = i;

    std::vector<char> adj(static_cast<std::size_t>(s) * static_cast<std::size_t>(s), 0);
    for (int b = 0; b < s; ++b) {
        const Word img = rule.image(letters[static_cast<std::size_t>(b)]);
        for (const Letter& l : img.letters())
            adj[static_cast<std::size_t>(slot[static_cast<std::size_t>(letter_index(l, ab))]) *
                    static_cast<std::size_t>(s) +
                static_cast<std::size_t>(b)] = 1;
    }

    auto all_positive = [&](const std::vector<char>& m) {
        for (char v : m)
            if (!v)
                return false;
        return true;
    };
    std::vector<char> acc = adj;
    const int wielandt = (s - 1) * (s - 1) + 1;
    for (int step = 1; step <= wielandt; ++step) {
        if (all_positive(acc))
            return true;
        std::vector<char> next(acc.size(), 0);
        for (int i = 0; i < s; ++i)
            for (int k = 0; k < s; ++k) {
                if (!acc[static_cast<std::size_t>(i) * static_cast<std::size_t>(s) +
                         static_cast<std::size_t>(k)])
                    continue;
                for (int j = 0; j < s; ++j)
                    if (adj[static_cast<std::size_t>(k) * static_cast<std::size_t>(s) +
                            static_cast<std::size_t>(j)])
                        next[static_cast<std::size_t>(i) * static_cast<std::size_t>(s) +
                             static_cast<std::size_t>(j)] = 1;
            }
        acc = std::move(next);
    }
    return all_positive(acc);
}

} // namespace detail

/// The set of legal words of length `len` in the fixed-point language seeded
/// at A: the legal 2-words are grown by closure under images, then images of
/// 2-words are iterated until the length-`len` factor set survives one more
/// iteration unchanged.
inline std::set<Word> legal_words(const SubstitutionRule& rule, std::size_t len) {
    if (len < 1)
        throw std::out_of_range("legal_words: length must be >= 1");
    const Letter seed{0, 0};
    if (!detail::is_primitive_on_component(rule, seed))
        throw std::runtime_error(
            "legal_words: rule is not primitive on the component of A; "
            "scan a long fixed-point prefix with subword_set instead");

    // Legal 2-words: closure of the 2-factors of image(A) under taking
    // 2-factors of images.
    std::set<Word> pairs;
    {
        const Word img = rule.image(seed);
        for (std::size_t i = 0; i + 2 <= img.size(); ++i)
            pairs.insert(img.subword(i, 2));
        bool grew = true;
        while (grew) {
            grew = false;
            std::set<Word> next = pairs;
            for (const Word& uv : pairs) {
                const Word img2 = apply(rule, uv);
                for (std::size_t i = 0; i + 2 <= img2.size(); ++i)
                    if (next.insert(img2.subword(i, 2)).second)
                        grew = true;
            }
            pairs = std::move(next);
        }
    }

    // Factors of length `len` inside iterated images of legal 2-words.
    std::uint64_t block = static_cast<std::uint64_t>(rule.length());
    std::set<Word> previous;
    for (int iterations = 1; iterations < 64; ++iterations) {
        std::set<Word> current;
        for (const Word& uv : pairs) {
            Word expanded = uv;
            for (int i = 0; i < iterations; ++i)
                expanded = apply(rule, expanded);
            if (expanded.size() < len)
                continue;
            for (std::size_t i = 0; i + len <= expanded.size(); ++i)
                current.insert(expanded.subword(i, len));
        }
        if (block >= len && current == previous)
            return current;
        previous = std::move(current);
        block *= static_cast<std::uint64_t>(rule.length());
    }
    throw std::runtime_error("legal_words: factor set failed to stabilize");
}

} // namespace aperiodic
