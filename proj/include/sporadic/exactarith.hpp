#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/// Exact big-integer and big-rational arithmetic: factorials, binomial and
/// multinomial coefficients, and p-adic valuations. Every value is immutable
/// after construction and every operation is a pure function; the factorial
/// memo is thread-local, so everything here may be called concurrently.
namespace sporadic {

using Integer = mpz_class;
using Rational = mpq_class;

/// p-adic valuation: a nonnegative (or, for rationals, possibly negative)
/// integer, or the distinguished value infinity for nu_p(0).
class Valuation {
public:
    constexpr Valuation() : inf_(true), v_(0) {}
    constexpr explicit Valuation(int64_t v) : inf_(false), v_(v) {}

    static constexpr Valuation infinity() { return Valuation(); }
    static constexpr Valuation finite(int64_t v) { return Valuation(v); }

    constexpr bool is_infinite() const { return inf_; }

    int64_t value() const {
        if (inf_) throw std::domain_error("Valuation::value on infinity");
        return v_;
    }

    /// nu_p is fully additive: nu(xy) = nu(x) + nu(y), with inf absorbing.
    Valuation operator+(const Valuation& o) const {
        if (inf_ || o.inf_) return infinity();
        return Valuation(v_ + o.v_);
    }

    constexpr bool operator==(const Valuation& o) const {
        return inf_ == o.inf_ && (inf_ || v_ == o.v_);
    }
    constexpr bool operator<(const Valuation& o) const {
        if (inf_) return false;
        return o.inf_ || v_ < o.v_;
    }
    constexpr bool operator>=(const Valuation& o) const { return !(*this < o); }
    constexpr bool operator>=(int64_t e) const { return inf_ || v_ >= e; }
    constexpr bool operator==(int64_t e) const { return !inf_ && v_ == e; }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    bool inf_;
    int64_t v_;
};

/// base^exp for small integers, with overflow detection. Exponents here are
/// structural quantities (p^s moduli, index scalings), never sequence values.
inline int64_t ipow64(int64_t base, int64_t exp) {
    if (exp < 0) throw std::invalid_argument("ipow64: negative exponent");
    int64_t r = 1;
    for (int64_t i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r))
            throw std::overflow_error("ipow64: overflow");
    }
    return r;
}

inline Integer int_pow(const Integer& base, uint64_t e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

/// Factorials up to this index are memoized (per thread); larger arguments
/// are computed directly without caching.
inline constexpr int64_t kFactorialMemoCap = 4096;

namespace detail {

inline std::vector<Integer>& factorial_memo() {
    thread_local std::vector<Integer> memo{Integer(1)};
    return memo;
}

}  // namespace detail

/// n! as an exact Integer. Rejects negative n.
inline Integer factorial(int64_t n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    if (n > kFactorialMemoCap) {
        Integer r;
        mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    auto& memo = detail::factorial_memo();
    while (static_cast<int64_t>(memo.size()) <= n) {
        memo.push_back(memo.back() * static_cast<unsigned long>(memo.size()));
    }
    return memo[static_cast<size_t>(n)];
}

/// Binomial coefficient n!/(k!(n-k)!). Returns 0 outside 0 <= k <= n: the
/// floor-index images in the lemma verifiers legitimately produce vanishing
/// binomials such as C(4,5). A negative upper index is rejected.
inline Integer binomial(int64_t n, int64_t k) {
    if (n < 0) throw std::invalid_argument("binomial: negative upper index");
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

inline Integer binomial(const Integer& n, const Integer& k) {
    if (!n.fits_slong_p() || !k.fits_slong_p())
        throw std::invalid_argument("binomial: index out of supported range");
    return binomial(static_cast<int64_t>(n.get_si()), static_cast<int64_t>(k.get_si()));
}

/// Multinomial coefficient n!/(a_1! ... a_l!). The parts must be nonnegative
/// and sum to n.
inline Integer multinomial(int64_t n, std::span<const int64_t> parts) {
    if (n < 0) throw std::invalid_argument("multinomial: negative n");
    int64_t sum = 0;
    Integer denom = 1;
    for (int64_t a : parts) {
        if (a < 0) throw std::invalid_argument("multinomial: negative part");
        sum += a;
        denom *= factorial(a);
    }
    if (sum != n) throw std::invalid_argument("multinomial: parts do not sum to n");
    return factorial(n) / denom;
}

inline Integer multinomial(int64_t n, std::initializer_list<int64_t> parts) {
    return multinomial(n, std::span<const int64_t>(parts.begin(), parts.size()));
}

/// nu_p(x): largest e with p^e | x; infinity for x = 0.
inline Valuation nu_p(int64_t p, const Integer& x) {
    if (p < 2) throw std::invalid_argument("nu_p: p must be at least 2");
    if (x == 0) return Valuation::infinity();
    Integer reduced;
    Integer pz(static_cast<long>(p));
    auto e = mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    return Valuation::finite(static_cast<int64_t>(e));
}

inline Valuation nu_p(int64_t p, int64_t x) { return nu_p(p, Integer(static_cast<long>(x))); }

/// nu_p of a rational: nu_p(numerator) - nu_p(denominator); infinity for 0.
inline Valuation nu_p_rational(int64_t p, const Rational& q) {
    if (q == 0) return Valuation::infinity();
    Valuation num = nu_p(p, Integer(q.get_num()));
    Valuation den = nu_p(p, Integer(q.get_den()));
    return Valuation::finite(num.value() - den.value());
}

/// num/den in lowest terms with positive denominator. Rejects den = 0.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

inline bool is_prime(int64_t n) { return is_prime(Integer(static_cast<long>(n))); }

/// The uniform reading of "x == y (mod p^e)": nu_p(x - y) >= e over exact
/// integers. Congruence checks throughout the library reduce to this.
inline bool congruent_mod_prime_power(const Integer& x, const Integer& y, int64_t p, int64_t e) {
    return nu_p(p, Integer(x - y)) >= e;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: argument not invertible");
    return r;
}

inline Integer rational_floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Integer rational_ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

}  // namespace sporadic
