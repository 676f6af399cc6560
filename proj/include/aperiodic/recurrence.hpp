// recurrence.hpp -- coefficient-level recurrences behind the signed binary
// and Fourier-matrix weight sequences. States hold exact exponent residues;
// the monomial offsets of the defining relations become array concatenation.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aperiodic/alphabet.hpp"

namespace aperiodic {

/// Sign choices sigma_0, sigma_1, ... feeding the binary recurrence.
/// Either periodic (repeats a finite pattern forever) or an explicit finite
/// list that must cover every requested step.
class SignProgram {
public:
    static SignProgram periodic(std::vector<int> pattern) {
        return SignProgram(true, std::move(pattern));
    }

    static SignProgram explicit_list(std::vector<int> signs) {
        return SignProgram(false, std::move(signs));
    }

    static SignProgram all_plus() { return periodic({+1}); }

    bool is_periodic() const { return periodic_; }

    /// Pattern length for periodic programs, list length otherwise.
    int period() const { return static_cast<int>(signs_.size()); }

    const std::vector<int>& pattern() const { return signs_; }

    int sign_at(int k) const {
        if (k < 0)
            throw std::out_of_range("sign program: negative index");
        if (periodic_)
            return signs_[static_cast<std::size_t>(k) % signs_.size()];
        if (static_cast<std::size_t>(k) >= signs_.size())
            throw std::out_of_range(
                "sign program: explicit list of length " +
                std::to_string(signs_.size()) + " has no sign for step " +
                std::to_string(k));
        return signs_[static_cast<std::size_t>(k)];
    }

    friend bool operator==(const SignProgram&, const SignProgram&) = default;

private:
    SignProgram(bool periodic, std::vector<int> signs)
        : periodic_(periodic), signs_(std::move(signs)) {
        if (signs_.empty())
            throw std::invalid_argument("sign program: sign word must be nonempty");
        for (int s : signs_)
            if (s != 1 && s != -1)
                throw std::invalid_argument("sign program: signs must be +1 or -1");
    }

    bool periodic_;
    std::vector<int> signs_;
};

enum class Family { binary, fourier };

/// Selects a construction: the binary family driven by a sign program, or
/// the Fourier family of order n >= 2, together with a recursion level k.
/// Fourier order 2 generates exactly the same coefficients as the all-plus
/// binary program.
class ConstructionSpec {
public:
    static ConstructionSpec binary(SignProgram signs, int level) {
        return ConstructionSpec(Family::binary, 2, std::move(signs), level);
    }

    static ConstructionSpec fourier(int order, int level) {
        if (order < 2)
            throw std::invalid_argument("construction: fourier order must be >= 2");
        return ConstructionSpec(Family::fourier, order, SignProgram::all_plus(),
                                level);
    }

    static ConstructionSpec rudin_shapiro(int level) {
        return binary(SignProgram::all_plus(), level);
    }

    Family family() const { return family_; }
    int order() const { return order_; }
    int level() const { return level_; }

    const SignProgram& signs() const {
        if (family_ != Family::binary)
            throw std::logic_error("construction: sign program only exists for the binary family");
        return signs_;
    }

    ConstructionSpec with_level(int level) const {
        ConstructionSpec copy = *this;
        if (level < 0)
            throw std::invalid_argument("construction: level must be >= 0");
        copy.level_ = level;
        return copy;
    }

private:
    ConstructionSpec(Family family, int order, SignProgram signs, int level)
        : family_(family), order_(order), signs_(std::move(signs)), level_(level) {
        if (level < 0)
            throw std::invalid_argument("construction: level must be >= 0");
        if (order_ > 255)
            throw std::invalid_argument("construction: order must be <= 255");
    }

    Family family_;
    int order_;
    SignProgram signs_;
    int level_;
};

/// Default cap on n^k, the number of coefficients a construction may expand
/// to. Callers with more memory can pass a larger cap explicitly.
inline constexpr std::uint64_t kDefaultTermCap = std::uint64_t{1} << 24;

/// n^k with an overflow guard.
inline std::uint64_t term_count(int order, int level) {
    std::uint64_t v = 1;
    for (int i = 0; i < level; ++i) {
        if (v > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(order))
            throw std::overflow_error("term_count: n^k overflows");
        v *= static_cast<std::uint64_t>(order);
    }
    return v;
}

/// The n coefficient arrays of one recursion level. For the binary family
/// these are the P and Q arrays; for the Fourier family the n components of
/// the polynomial vector. Entries are exponent residues mod the order.
class RecurrenceState {
public:
    RecurrenceState(Family family, int order, int level,
                    std::vector<std::vector<std::uint8_t>> components)
        : family_(family), order_(order), level_(level),
          components_(std::move(components)) {
        if (components_.empty())
            throw std::invalid_argument("recurrence state: no components");
        const std::size_t len = components_.front().size();
        for (const auto& c : components_)
            if (c.size() != len)
                throw std::invalid_argument(
                    "recurrence state: component lengths differ");
    }

    Family family() const { return family_; }
    int order() const { return order_; }
    int level() const { return level_; }
    std::size_t component_count() const { return components_.size(); }
    std::size_t length() const { return components_.front().size(); }

    std::span<const std::uint8_t> component(std::size_t j) const {
        return components_.at(j);
    }

    CoefficientSequence component_sequence(std::size_t j) const {
        return CoefficientSequence(order_, components_.at(j));
    }

private:
    Family family_;
    int order_;
    int level_;
    std::vector<std::vector<std::uint8_t>> components_;
};

/// Level-0 state: every component is the single coefficient 1 (the
/// polynomial x; the positional offset is handled at evaluation).
inline RecurrenceState initial_state(const ConstructionSpec& spec) {
    const std::size_t n =
        spec.family() == Family::binary ? 2 : static_cast<std::size_t>(spec.order());
    std::vector<std::vector<std::uint8_t>> components(
        n, std::vector<std::uint8_t>{0});
    return RecurrenceState(spec.family(), spec.order(), 0, std::move(components));
}

/// One step of the signed binary recurrence:
///   P' = P ++ (sigma * Q),  Q' = P ++ (-sigma * Q),
/// realized on residues mod 2 (multiplying by -1 adds 1 to the exponent).
inline RecurrenceState signed_step(const RecurrenceState& state, int sigma) {
    if (state.family() != Family::binary)
        throw std::invalid_argument("signed_step: state is not binary-family");
    if (sigma != 1 && sigma != -1)
        throw std::invalid_argument("signed_step: sigma must be +1 or -1");

    const auto p = state.component(0);
    const auto q = state.component(1);
    const std::uint8_t p_add = sigma == 1 ? 0 : 1;
    const std::uint8_t q_add = sigma == 1 ? 1 : 0;

    std::vector<std::uint8_t> next_p(p.begin(), p.end());
    std::vector<std::uint8_t> next_q(p.begin(), p.end());
    next_p.reserve(2 * p.size());
    next_q.reserve(2 * p.size());
    for (std::uint8_t e : q) {
        next_p.push_back(static_cast<std::uint8_t>((e + p_add) & 1));
        next_q.push_back(static_cast<std::uint8_t>((e + q_add) & 1));
    }
    std::vector<std::vector<std::uint8_t>> next;
    next.reserve(2);
    next.push_back(std::move(next_p));
    next.push_back(std::move(next_q));
    return RecurrenceState(Family::binary, 2, state.level() + 1, std::move(next));
}

/// One step of the Fourier recurrence of order n: component j of the next
/// level concatenates omega^{r*j} * component r for r = 0..n-1 (residue
/// arithmetic mod n); the x^{r n^k} factors are the concatenation offsets.
inline RecurrenceState fourier_step(const RecurrenceState& state) {
    if (state.family() != Family::fourier)
        throw std::invalid_argument("fourier_step: state is not fourier-family");
    const int n = state.order();
    const std::size_t len = state.length();

    std::vector<std::vector<std::uint8_t>> next;
    next.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<std::uint8_t> comp;
        comp.reserve(len * static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) {
            const int shift = (r * j) % n;
            for (std::uint8_t e : state.component(static_cast<std::size_t>(r)))
                comp.push_back(static_cast<std::uint8_t>((e + shift) % n));
        }
        next.push_back(std::move(comp));
    }
    return RecurrenceState(Family::fourier, n, state.level() + 1, std::move(next));
}

/// Runs the recurrence to the spec's level. Throws if the expansion would
/// exceed `term_cap` coefficients or if an explicit sign program runs short.
inline RecurrenceState run_recurrence(const ConstructionSpec& spec,
                                      std::uint64_t term_cap = kDefaultTermCap) {
    const std::uint64_t terms = term_count(spec.order(), spec.level());
    if (terms > term_cap)
        throw std::length_error(
            "recurrence: level " + std::to_string(spec.level()) + " needs " +
            std::to_string(terms) + " coefficients, above the cap of " +
            std::to_string(term_cap));
    if (spec.family() == Family::binary && !spec.signs().is_periodic() &&
        spec.signs().period() < spec.level())
        throw std::out_of_range(
            "recurrence: explicit sign program is shorter than the level");

    RecurrenceState state = initial_state(spec);
    for (int k = 0; k < spec.level(); ++k) {
        state = spec.family() == Family::binary
                    ? signed_step(state, spec.signs().sign_at(k))
                    : fourier_step(state);
    }
    return state;
}

/// The weight sequence of a construction: component 1 of the final state.
inline CoefficientSequence coefficients(const ConstructionSpec& spec,
                                        std::uint64_t term_cap = kDefaultTermCap) {
    return run_recurrence(spec, term_cap).component_sequence(0);
}

/// First m values of a sequence.
inline CoefficientSequence partial_prefix(const CoefficientSequence& seq,
                                          std::size_t m) {
    if (m < 1 || m > seq.size())
        throw std::out_of_range("partial_prefix: m out of range 1..|sequence|");
    std::vector<std::uint8_t> exponents(seq.exponents().begin(),
                                        seq.exponents().begin() +
                                            static_cast<std::ptrdiff_t>(m));
    return CoefficientSequence(seq.order(), std::move(exponents));
}

} // namespace aperiodic
