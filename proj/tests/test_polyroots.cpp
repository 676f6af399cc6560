#include "aperiodic/polyroots.hpp"

#include <doctest.h>

#include <algorithm>
#include <complex>
#include <vector>

using namespace aperiodic::polyroots;

namespace {

bool has_root(const std::vector<RootWithMultiplicity>& roots,
              std::complex<double> value, int multiplicity, double tol = 1e-10) {
    for (const auto& r : roots)
        if (std::abs(r.value - value) <= tol && r.multiplicity == multiplicity)
            return true;
    return false;
}

} // namespace

TEST_CASE("characteristic polynomial of small integer matrices") {
    // [[2,1],[1,2]] has spectrum {1,3}: p = x^2 - 4x + 3.
    const IntPolynomial p = characteristic_polynomial({2, 1, 1, 2}, 2);
    REQUIRE(p.degree() == 2);
    CHECK(static_cast<long long>(p.coeffs[0]) == 3);
    CHECK(static_cast<long long>(p.coeffs[1]) == -4);
    CHECK(static_cast<long long>(p.coeffs[2]) == 1);

    // Identity 3x3: (x-1)^3 = x^3 - 3x^2 + 3x - 1.
    const IntPolynomial id3 =
        characteristic_polynomial({1, 0, 0, 0, 1, 0, 0, 0, 1}, 3);
    CHECK(static_cast<long long>(id3.coeffs[0]) == -1);
    CHECK(static_cast<long long>(id3.coeffs[1]) == 3);
    CHECK(static_cast<long long>(id3.coeffs[2]) == -3);
    CHECK(static_cast<long long>(id3.coeffs[3]) == 1);
}

TEST_CASE("polynomial gcd finds the common factor") {
    // (x-1)(x-2) and (x-1)(x-3): gcd x-1.
    const IntPolynomial a{{2, -3, 1}};
    const IntPolynomial b{{3, -4, 1}};
    const IntPolynomial g = polynomial_gcd(a, b);
    REQUIRE(g.degree() == 1);
    CHECK(static_cast<long long>(g.coeffs[0]) == -1);
    CHECK(static_cast<long long>(g.coeffs[1]) == 1);
}

TEST_CASE("exact division validates its input") {
    const IntPolynomial product{{2, -3, 1}}; // (x-1)(x-2)
    const IntPolynomial factor{{-1, 1}};
    const IntPolynomial q = exact_divide(product, factor);
    REQUIRE(q.degree() == 1);
    CHECK(static_cast<long long>(q.coeffs[0]) == -2);
    CHECK(static_cast<long long>(q.coeffs[1]) == 1);

    CHECK_THROWS_AS(exact_divide(IntPolynomial{{1, 1}}, IntPolynomial{{-1, 1}}),
                    std::domain_error);
}

TEST_CASE("aberth refinement solves square-free polynomials") {
    // x^2 + 1.
    const auto roots = aberth_roots({1.0, 0.0, 1.0});
    REQUIRE(roots.size() == 2);
    double best_i = 1e9, best_mi = 1e9;
    for (const auto& r : roots) {
        best_i = std::min(best_i, std::abs(r - std::complex<double>(0, 1)));
        best_mi = std::min(best_mi, std::abs(r - std::complex<double>(0, -1)));
    }
    CHECK(best_i < 1e-12);
    CHECK(best_mi < 1e-12);
}

TEST_CASE("roots_with_multiplicity recovers repeated and zero roots") {
    // (x-1)^2 (x+2) = x^3 - 3x + 2.
    const auto cubic = roots_with_multiplicity(IntPolynomial{{2, -3, 0, 1}});
    CHECK(has_root(cubic, {1.0, 0.0}, 2));
    CHECK(has_root(cubic, {-2.0, 0.0}, 1));

    // x^3.
    const auto zero = roots_with_multiplicity(IntPolynomial{{0, 0, 0, 1}});
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].multiplicity == 3);
    CHECK(zero[0].value == std::complex<double>(0.0, 0.0));

    // (x-2)^3 (x^2+1) = (x^3-6x^2+12x-8)(x^2+1).
    const IntPolynomial p{{-8, 12, -14, 13, -6, 1}};
    const auto mixed = roots_with_multiplicity(p);
    CHECK(has_root(mixed, {2.0, 0.0}, 3, 1e-8));
    CHECK(has_root(mixed, {0.0, 1.0}, 1, 1e-8));
    CHECK(has_root(mixed, {0.0, -1.0}, 1, 1e-8));
}
