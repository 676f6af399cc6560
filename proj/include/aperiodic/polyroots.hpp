// polyroots.hpp -- characteristic polynomials of small integer matrices and
// their complex roots. Coefficients are kept as exact integers; roots come
// from simultaneous (Aberth) refinement on the square-free part, with
// multiplicities recovered through an exact gcd chain. This keeps repeated
// eigenvalues as accurate as simple ones.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aperiodic::polyroots {

using BigInt = __int128;

/// Dense integer polynomial, coefficients low to high, no leading zeros.
struct IntPolynomial {
    std::vector<BigInt> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0)
            coeffs.pop_back();
    }
};

namespace detail {

inline BigInt big_abs(BigInt v) { return v < 0 ? -v : v; }

inline BigInt big_gcd(BigInt a, BigInt b) {
    a = big_abs(a);
    b = big_abs(b);
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline BigInt content(const IntPolynomial& p) {
    BigInt c = 0;
    for (BigInt v : p.coeffs)
        c = big_gcd(c, v);
    return c == 0 ? 1 : c;
}

inline IntPolynomial primitive_part(IntPolynomial p) {
    const BigInt c = content(p);
    for (BigInt& v : p.coeffs)
        v /= c;
    if (!p.coeffs.empty() && p.coeffs.back() < 0)
        for (BigInt& v : p.coeffs)
            v = -v;
    return p;
}

// Remainder of lc(b)^(deg a - deg b + 1) * a under division by b.
inline IntPolynomial pseudo_remainder(IntPolynomial a, const IntPolynomial& b) {
    const int db = b.degree();
    const BigInt lb = b.coeffs.back();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        const BigInt la = a.coeffs.back();
        for (BigInt& v : a.coeffs)
            v *= lb;
        for (int i = 0; i <= db; ++i)
            a.coeffs[static_cast<std::size_t>(i + shift)] -= la * b.coeffs[static_cast<std::size_t>(i)];
        a.normalize();
    }
    return a;
}

} // namespace detail

inline IntPolynomial derivative(const IntPolynomial& p) {
    IntPolynomial d;
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
        d.coeffs.push_back(p.coeffs[i] * static_cast<BigInt>(i));
    d.normalize();
    return d;
}

/// Primitive gcd over the integers (primitive pseudo-remainder sequence).
inline IntPolynomial polynomial_gcd(IntPolynomial a, IntPolynomial b) {
    a = detail::primitive_part(std::move(a));
    b = detail::primitive_part(std::move(b));
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = detail::pseudo_remainder(a, b);
        a = std::move(b);
        b = detail::primitive_part(std::move(r));
    }
    return a;
}

/// Exact quotient; throws if b does not divide a.
inline IntPolynomial exact_divide(IntPolynomial a, const IntPolynomial& b) {
    if (b.is_zero())
        throw std::invalid_argument("polynomial division by zero");
    IntPolynomial q;
    if (a.degree() < b.degree()) {
        if (!a.is_zero())
            throw std::domain_error("polynomial division is not exact");
        return q;
    }
    q.coeffs.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    const BigInt lb = b.coeffs.back();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        const BigInt la = a.coeffs.back();
        if (la % lb != 0)
            throw std::domain_error("polynomial division is not exact");
        const BigInt f = la / lb;
        const int shift = a.degree() - b.degree();
        q.coeffs[static_cast<std::size_t>(shift)] = f;
        for (int i = 0; i <= b.degree(); ++i)
            a.coeffs[static_cast<std::size_t>(i + shift)] -= f * b.coeffs[static_cast<std::size_t>(i)];
        a.normalize();
    }
    if (!a.is_zero())
        throw std::domain_error("polynomial division is not exact");
    return q;
}

/// Monic characteristic polynomial of a size x size integer matrix
/// (row-major), by the Faddeev-LeVerrier recursion in exact arithmetic.
inline IntPolynomial characteristic_polynomial(const std::vector<long long>& matrix,
                                               int size) {
    if (size < 1)
        throw std::invalid_argument("characteristic polynomial: empty matrix");
    if (matrix.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
        throw std::invalid_argument("characteristic polynomial: bad matrix shape");

    const std::size_t n = static_cast<std::size_t>(size);
    std::vector<BigInt> a(n * n);
    for (std::size_t i = 0; i < n * n; ++i)
        a[i] = matrix[i];

    std::vector<BigInt> coeffs(n + 1, 0);
    coeffs[n] = 1;

    std::vector<BigInt> m = a;
    for (int k = 1; k <= size; ++k) {
        BigInt trace = 0;
        for (std::size_t i = 0; i < n; ++i)
            trace += m[i * n + i];
        const BigInt c = -trace / k;
        coeffs[n - static_cast<std::size_t>(k)] = c;
        if (k == size)
            break;
        for (std::size_t i = 0; i < n; ++i)
            m[i * n + i] += c;
        std::vector<BigInt> next(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                const BigInt aij = a[i * n + l];
                if (aij == 0)
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    next[i * n + j] += aij * m[l * n + j];
            }
        m = std::move(next);
    }

    IntPolynomial p;
    p.coeffs = std::move(coeffs);
    p.normalize();
    return p;
}

inline std::complex<double> evaluate(const std::vector<double>& coeffs,
                                     std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * z + coeffs[i];
    return acc;
}

/// Simultaneous Aberth-Ehrlich refinement of all roots of a square-free
/// polynomial given by real coefficients (low to high, monic or not).
/// Throws with the iteration count if the correction fails to contract.
inline std::vector<std::complex<double>> aberth_roots(std::vector<double> coeffs,
                                                      int max_iterations = 500) {
    // Trim trailing zeros (leading coefficients).
    while (!coeffs.empty() && coeffs.back() == 0.0)
        coeffs.pop_back();
    if (coeffs.size() <= 1)
        return {};
    const int degree = static_cast<int>(coeffs.size()) - 1;
    if (degree == 1)
        return {std::complex<double>(-coeffs[0] / coeffs[1], 0.0)};

    std::vector<double> deriv(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        deriv[i - 1] = coeffs[i] * static_cast<double>(i);

    // Fujiwara-style inclusion radius.
    const double lead = std::abs(coeffs.back());
    double radius = 0.0;
    for (int i = 0; i < degree; ++i) {
        const double c = std::abs(coeffs[static_cast<std::size_t>(i)]) / lead;
        if (c > 0.0)
            radius = std::max(radius,
                              2.0 * std::pow(c, 1.0 / static_cast<double>(degree - i)));
    }
    radius = std::max(radius, 0.5);
    const double centre = -coeffs[static_cast<std::size_t>(degree - 1)] /
                          (lead * static_cast<double>(degree));

    std::vector<std::complex<double>> z(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
        const double angle = 2.0 * 3.14159265358979323846 *
                                 (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(degree) +
                             0.4; // detuned so no start lies on an axis
        z[static_cast<std::size_t>(i)] =
            std::complex<double>(centre, 0.0) +
            radius * std::complex<double>(std::cos(angle), std::sin(angle));
    }

    for (int iter = 1; iter <= max_iterations; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < degree; ++i) {
            const std::complex<double> zi = z[static_cast<std::size_t>(i)];
            const std::complex<double> pv = evaluate(coeffs, zi);
            const std::complex<double> dv = evaluate(deriv, zi);
            if (pv == 0.0)
                continue;
            std::complex<double> newton =
                dv != 0.0 ? pv / dv : std::complex<double>(1e-12, 1e-12);
            std::complex<double> repulsion = 0.0;
            for (int j = 0; j < degree; ++j)
                if (j != i)
                    repulsion += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
            const std::complex<double> denom = 1.0 - newton * repulsion;
            const std::complex<double> step = denom != 0.0 ? newton / denom : newton;
            z[static_cast<std::size_t>(i)] = zi - step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(zi)));
        }
        if (worst < 1e-14) {
            // Newton polish on the square-free polynomial.
            for (auto& root : z)
                for (int it = 0; it < 3; ++it) {
                    const std::complex<double> pv = evaluate(coeffs, root);
                    const std::complex<double> dv = evaluate(deriv, root);
                    if (dv == 0.0)
                        break;
                    root -= pv / dv;
                }
            return z;
        }
    }
    throw std::runtime_error("root refinement did not converge after " +
                             std::to_string(max_iterations) + " iterations");
}

struct RootWithMultiplicity {
    std::complex<double> value;
    int multiplicity;
};

/// Distinct roots of an exact integer polynomial with multiplicities.
/// The square-free part is computed exactly, its simple roots refined
/// numerically, and multiplicities counted along the gcd chain
/// p, gcd(p, p'), gcd(gcd(p, p'), ...), which drops each root once per level.
inline std::vector<RootWithMultiplicity> roots_with_multiplicity(IntPolynomial p) {
    p.normalize();
    if (p.degree() < 1)
        return {};

    std::vector<RootWithMultiplicity> out;

    // Roots at zero are exact: strip trailing zero coefficients.
    std::size_t zero_mult = 0;
    while (zero_mult < p.coeffs.size() && p.coeffs[zero_mult] == 0)
        ++zero_mult;
    if (zero_mult > 0) {
        out.push_back({{0.0, 0.0}, static_cast<int>(zero_mult)});
        p.coeffs.erase(p.coeffs.begin(),
                       p.coeffs.begin() + static_cast<std::ptrdiff_t>(zero_mult));
    }
    if (p.degree() < 1)
        return out;

    // gcd chain: chain[0] = p, chain[j+1] = gcd(chain[j], chain[j]').
    std::vector<IntPolynomial> chain{p};
    while (chain.back().degree() >= 1) {
        IntPolynomial g = polynomial_gcd(chain.back(), derivative(chain.back()));
        if (g.degree() < 1)
            break;
        chain.push_back(std::move(g));
    }

    const IntPolynomial square_free = exact_divide(chain.front(), chain.size() > 1
                                                                      ? chain[1]
                                                                      : IntPolynomial{{1}});

    std::vector<double> sf(square_free.coeffs.size());
    for (std::size_t i = 0; i < sf.size(); ++i)
        sf[i] = static_cast<double>(square_free.coeffs[i]);
    const std::vector<std::complex<double>> distinct = aberth_roots(sf);

    int total = static_cast<int>(zero_mult);
    for (const std::complex<double>& r : distinct) {
        int mult = 1;
        for (std::size_t j = 1; j < chain.size(); ++j) {
            std::vector<double> cj(chain[j].coeffs.size());
            double scale = 0.0;
            for (std::size_t i = 0; i < cj.size(); ++i) {
                cj[i] = static_cast<double>(chain[j].coeffs[i]);
                scale = std::max(scale, std::abs(cj[i]));
            }
            const double mag = std::abs(evaluate(cj, r));
            const double tol = scale * 1e-8 *
                               std::pow(std::max(1.0, std::abs(r)),
                                        static_cast<double>(chain[j].degree()));
            if (mag <= tol)
                ++mult;
            else
                break;
        }
        out.push_back({r, mult});
        total += mult;
    }
    if (total != p.degree() + static_cast<int>(zero_mult))
        throw std::runtime_error(
            "root multiplicities do not sum to the polynomial degree");
    return out;
}

} // namespace aperiodic::polyroots
