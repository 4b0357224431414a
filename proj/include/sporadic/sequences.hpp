#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sporadic/exactarith.hpp"
#include "sporadic/tuple12.hpp"

/// The sequence A_delta computed two ways: as a one-index binomial sum and as
/// a signed multinomial sum over the constraint set U(n). (The third route,
/// via constant terms of Laurent polynomial powers, lives in laurent.hpp.)
namespace sporadic {

/// A_delta(n) = sum_{k=0}^{floor(n/3)} (-1)^k 3^{n-3k} C(n,3k) C(n+k,n) (3k)!/k!^3.
/// The summation stops at floor(n/3) because C(n,3k) vanishes beyond.
inline Integer a_delta_binomial(int64_t n) {
    if (n < 0) throw std::invalid_argument("a_delta_binomial: negative index");
    Integer total = 0;
    for (int64_t k = 0; 3 * k <= n; ++k) {
        Integer term = int_pow(3, static_cast<uint64_t>(n - 3 * k));
        term *= binomial(n, 3 * k);
        term *= binomial(n + k, n);
        term *= factorial(3 * k) / (factorial(k) * factorial(k) * factorial(k));
        if (k % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

/// Visits every element of U(n) exactly once, restricted to a1 in
/// [a1_lo, a1_hi] (a slice suitable for parallel workers). Free variables
/// a1, a2, b1, b2, c1 are iterated with per-level pruning; the remaining
/// seven components are solved linearly:
///   a3 = n-a1-a2, b3 = n-b1-b2, c2 = n-a2-b3, c3 = n-c1-c2,
///   d1 = n-b1-c1, d2 = n-a1-b2, d3 = n-d1-d2.
/// The implied eighth equation a3+c3+d3 = n is re-verified for every tuple.
template <typename Fn>
void for_each_u_slice(int64_t n, int64_t a1_lo, int64_t a1_hi, Fn&& fn) {
    if (n < 0) throw std::invalid_argument("for_each_u: negative n");
    for (int64_t a1 = a1_lo; a1 <= a1_hi; ++a1) {
        for (int64_t a2 = 0; a2 <= n - a1; ++a2) {
            const int64_t a3 = n - a1 - a2;
            for (int64_t b1 = 0; b1 <= n; ++b1) {
                // b3 >= 0, d2 = n-a1-b2 >= 0 and c2 = b1+b2-a2 >= 0
                const int64_t b2_lo = std::max<int64_t>(0, a2 - b1);
                const int64_t b2_hi = std::min(n - b1, n - a1);
                for (int64_t b2 = b2_lo; b2 <= b2_hi; ++b2) {
                    const int64_t b3 = n - b1 - b2;
                    const int64_t c2 = n - a2 - b3;
                    const int64_t d2 = n - a1 - b2;
                    // c3 >= 0, d1 >= 0 and d3 = b1+c1-d2 >= 0
                    const int64_t c1_lo = std::max<int64_t>(0, d2 - b1);
                    const int64_t c1_hi = std::min(n - c2, n - b1);
                    for (int64_t c1 = c1_lo; c1 <= c1_hi; ++c1) {
                        const int64_t c3 = n - c1 - c2;
                        const int64_t d1 = n - b1 - c1;
                        const int64_t d3 = n - d1 - d2;
                        Tuple12 t{{a1, a2, a3, b1, b2, b3, c1, c2, c3, d1, d2, d3}};
                        if (a3 + c3 + d3 != n)
                            throw std::logic_error("for_each_u: implied equation violated");
                        fn(std::as_const(t));
                    }
                }
            }
        }
    }
}

template <typename Fn>
void for_each_u(int64_t n, Fn&& fn) {
    for_each_u_slice(n, 0, n, std::forward<Fn>(fn));
}

inline std::vector<Tuple12> enumerate_u(int64_t n) {
    std::vector<Tuple12> out;
    for_each_u(n, [&](const Tuple12& t) { out.push_back(t); });
    return out;
}

/// B(a,b,c,d) = (-1)^{a2+b1+d3} C(n;a) C(n;b) C(n;c) C(n;d) for t in U(n).
inline Integer b_term(int64_t n, const Tuple12& t) {
    if (!t.in_u(n)) throw std::invalid_argument("b_term: tuple not in U(n)");
    Integer r = multinomial(n, {t.a1(), t.a2(), t.a3()});
    r *= multinomial(n, {t.b1(), t.b2(), t.b3()});
    r *= multinomial(n, {t.c1(), t.c2(), t.c3()});
    r *= multinomial(n, {t.d1(), t.d2(), t.d3()});
    return (t.a2() + t.b1() + t.d3()) % 2 == 0 ? r : -r;
}

/// Full-enumeration sweeps grow quickly; callers must raise the cap
/// explicitly to go beyond this default.
inline constexpr int64_t kMultinomialSumDefaultCap = 12;

/// A_delta(n) as the signed multinomial sum over U(n).
inline Integer a_delta_multinomial(int64_t n, int64_t cap = kMultinomialSumDefaultCap) {
    if (n < 0) throw std::invalid_argument("a_delta_multinomial: negative index");
    if (n > cap)
        throw std::invalid_argument(
            "a_delta_multinomial: n exceeds enumeration cap (raise the cap to force)");
    Integer total = 0;
    for_each_u(n, [&](const Tuple12& t) { total += b_term(n, t); });
    return total;
}

}  // namespace sporadic
