#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sporadic/exactarith.hpp"

/// Sparse trivariate Laurent polynomials with exact integer coefficients,
/// and the constant-term representation of A_delta: A_delta(n) is the
/// coefficient of x^n y^n z^n in N^n, where N = (x+y-1)(x+z+1)(y-x+z)(y-z+1)
/// is the numerator of Lambda = N/(xyz). Working with N instead of Lambda
/// keeps every stored exponent nonnegative.
namespace sporadic {

namespace laurent_detail {

// Exponent triples are packed into one key, 21 bits per variable with a bias
// so that moderately negative exponents remain representable. Key order is
// lexicographic in (ex, ey, ez).
inline constexpr int64_t kExpBias = 1 << 20;
inline constexpr uint64_t kBiasKey =
    (static_cast<uint64_t>(kExpBias) << 42) | (static_cast<uint64_t>(kExpBias) << 21) |
    static_cast<uint64_t>(kExpBias);

inline uint64_t pack(int64_t ex, int64_t ey, int64_t ez) {
    constexpr int64_t lim = kExpBias;
    if (ex <= -lim || ex >= lim || ey <= -lim || ey >= lim || ez <= -lim || ez >= lim)
        throw std::out_of_range("LaurentPoly: exponent out of range");
    return (static_cast<uint64_t>(ex + kExpBias) << 42) |
           (static_cast<uint64_t>(ey + kExpBias) << 21) | static_cast<uint64_t>(ez + kExpBias);
}

inline std::array<int64_t, 3> unpack(uint64_t key) {
    return {static_cast<int64_t>(key >> 42) - kExpBias,
            static_cast<int64_t>((key >> 21) & 0x1FFFFF) - kExpBias,
            static_cast<int64_t>(key & 0x1FFFFF) - kExpBias};
}

}  // namespace laurent_detail

class LaurentPoly {
public:
    struct Term {
        int64_t ex, ey, ez;
        Integer coeff;
    };

    struct Bounds {
        std::array<int64_t, 3> lo{}, hi{};
    };

    LaurentPoly() = default;

    static LaurentPoly constant(Integer c) { return monomial(std::move(c), 0, 0, 0); }

    static LaurentPoly monomial(Integer c, int64_t ex, int64_t ey, int64_t ez) {
        LaurentPoly p;
        if (c != 0) p.terms_.emplace_back(laurent_detail::pack(ex, ey, ez), std::move(c));
        return p;
    }

    static LaurentPoly one() { return constant(1); }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    Integer coefficient(int64_t ex, int64_t ey, int64_t ez) const {
        const uint64_t key = laurent_detail::pack(ex, ey, ez);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const auto& t, uint64_t k) { return t.first < k; });
        return it != terms_.end() && it->first == key ? it->second : Integer(0);
    }

    std::vector<Term> terms() const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [key, c] : terms_) {
            auto e = laurent_detail::unpack(key);
            out.push_back({e[0], e[1], e[2], c});
        }
        return out;
    }

    Bounds bounds() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly::bounds on zero polynomial");
        Bounds b;
        b.lo = {INT64_MAX, INT64_MAX, INT64_MAX};
        b.hi = {INT64_MIN, INT64_MIN, INT64_MIN};
        for (const auto& [key, c] : terms_) {
            auto e = laurent_detail::unpack(key);
            for (int i = 0; i < 3; ++i) {
                b.lo[static_cast<size_t>(i)] = std::min(b.lo[static_cast<size_t>(i)], e[static_cast<size_t>(i)]);
                b.hi[static_cast<size_t>(i)] = std::max(b.hi[static_cast<size_t>(i)], e[static_cast<size_t>(i)]);
            }
        }
        return b;
    }

    int64_t max_total_degree() const {
        int64_t d = INT64_MIN;
        for (const auto& [key, c] : terms_) {
            auto e = laurent_detail::unpack(key);
            d = std::max(d, e[0] + e[1] + e[2]);
        }
        return d;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r;
        r.terms_.reserve(terms_.size() + o.terms_.size());
        auto i = terms_.begin();
        auto j = o.terms_.begin();
        while (i != terms_.end() || j != o.terms_.end()) {
            if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == terms_.end() || j->first < i->first) {
                r.terms_.push_back(*j++);
            } else {
                Integer c = i->second + j->second;
                if (c != 0) r.terms_.emplace_back(i->first, std::move(c));
                ++i, ++j;
            }
        }
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [key, c] : r.terms_) c = -c;
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    /// Exact evaluation at a rational point (negative exponents allowed away
    /// from zero coordinates).
    Rational evaluate(const Rational& x, const Rational& y, const Rational& z) const {
        Rational total(0);
        for (const auto& [key, c] : terms_) {
            auto e = laurent_detail::unpack(key);
            Rational term(c);
            const std::array<const Rational*, 3> vars{&x, &y, &z};
            for (size_t i = 0; i < 3; ++i) {
                int64_t exp = e[i];
                if (exp == 0) continue;
                if (*vars[i] == 0) {
                    if (exp < 0) throw std::domain_error("LaurentPoly::evaluate: pole at zero");
                    term = 0;
                    break;
                }
                Rational base = exp > 0 ? *vars[i] : Rational(1) / *vars[i];
                for (int64_t k = 0; k < std::abs(exp); ++k) term *= base;
            }
            total += term;
        }
        return total;
    }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    // Internal sorted (key, coeff) view used by the multiplication kernels.
    const std::vector<std::pair<uint64_t, Integer>>& raw() const { return terms_; }

    static LaurentPoly from_raw(std::vector<std::pair<uint64_t, Integer>> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        LaurentPoly p;
        p.terms_ = std::move(terms);
        return p;
    }

private:
    std::vector<std::pair<uint64_t, Integer>> terms_;
};

/// Multiplication backend: the sparse associative-map accumulator is the
/// default; the dense bounded-cube accumulator exists as an internal
/// alternative for benchmarking and cross-checking.
enum class MulBackend { kSparseMap, kDenseCube };

inline LaurentPoly poly_mul(const LaurentPoly& p, const LaurentPoly& q,
                            MulBackend backend = MulBackend::kSparseMap) {
    using laurent_detail::kBiasKey;
    if (p.is_zero() || q.is_zero()) return LaurentPoly();
    const auto& a = p.raw();
    const auto& b = q.raw();

    if (backend == MulBackend::kSparseMap) {
        std::unordered_map<uint64_t, Integer> acc;
        acc.reserve(a.size() + b.size());
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                Integer& slot = acc[ka + kb - kBiasKey];
                mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            }
        std::vector<std::pair<uint64_t, Integer>> terms;
        terms.reserve(acc.size());
        for (auto& [key, c] : acc)
            if (c != 0) terms.emplace_back(key, std::move(c));
        return LaurentPoly::from_raw(std::move(terms));
    }

    // Dense cube: accumulate into a flat array over the product bounding box.
    const auto pb = p.bounds();
    const auto qb = q.bounds();
    std::array<int64_t, 3> lo, dim;
    size_t volume = 1;
    for (size_t i = 0; i < 3; ++i) {
        lo[i] = pb.lo[i] + qb.lo[i];
        dim[i] = pb.hi[i] + qb.hi[i] - lo[i] + 1;
        volume *= static_cast<size_t>(dim[i]);
        if (volume > (size_t{1} << 28))
            throw std::length_error("poly_mul: dense cube too large");
    }
    std::vector<Integer> cube(volume);
    auto flat = [&](uint64_t key) {
        auto e = laurent_detail::unpack(key);
        return (static_cast<size_t>(e[0] - lo[0]) * static_cast<size_t>(dim[1]) +
                static_cast<size_t>(e[1] - lo[1])) *
                   static_cast<size_t>(dim[2]) +
               static_cast<size_t>(e[2] - lo[2]);
    };
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            Integer& slot = cube[flat(ka + kb - kBiasKey)];
            mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    std::vector<std::pair<uint64_t, Integer>> terms;
    for (int64_t ex = lo[0]; ex < lo[0] + dim[0]; ++ex)
        for (int64_t ey = lo[1]; ey < lo[1] + dim[1]; ++ey)
            for (int64_t ez = lo[2]; ez < lo[2] + dim[2]; ++ez) {
                Integer& c = cube[flat(laurent_detail::pack(ex, ey, ez))];
                if (c != 0) terms.emplace_back(laurent_detail::pack(ex, ey, ez), std::move(c));
            }
    return LaurentPoly::from_raw(std::move(terms));
}

/// P^n by binary exponentiation; P^0 = 1.
inline LaurentPoly poly_pow(const LaurentPoly& p, int64_t n,
                            MulBackend backend = MulBackend::kSparseMap) {
    if (n < 0) throw std::invalid_argument("poly_pow: negative exponent");
    LaurentPoly result = LaurentPoly::one();
    LaurentPoly base = p;
    while (n > 0) {
        if (n & 1) result = poly_mul(result, base, backend);
        n >>= 1;
        if (n > 0) base = poly_mul(base, base, backend);
    }
    return result;
}

/// The expanded numerator N = (x+y-1)(x+z+1)(y-x+z)(y-z+1) of Lambda.
inline LaurentPoly lambda_numerator() {
    auto mono = [](int64_t c, int64_t ex, int64_t ey, int64_t ez) {
        return LaurentPoly::monomial(Integer(static_cast<long>(c)), ex, ey, ez);
    };
    LaurentPoly f1 = mono(1, 1, 0, 0) + mono(1, 0, 1, 0) + mono(-1, 0, 0, 0);
    LaurentPoly f2 = mono(1, 1, 0, 0) + mono(1, 0, 0, 1) + mono(1, 0, 0, 0);
    LaurentPoly f3 = mono(1, 0, 1, 0) + mono(-1, 1, 0, 0) + mono(1, 0, 0, 1);
    LaurentPoly f4 = mono(1, 0, 1, 0) + mono(-1, 0, 0, 1) + mono(1, 0, 0, 0);
    return poly_mul(poly_mul(f1, f2), poly_mul(f3, f4));
}

/// Coefficient of x^ex y^ey z^ez in the product P*Q, computed as a
/// convolution dot product without materializing the product.
inline Integer product_coefficient(const LaurentPoly& p, const LaurentPoly& q, int64_t ex,
                                   int64_t ey, int64_t ez) {
    using laurent_detail::kBiasKey;
    const uint64_t target = laurent_detail::pack(ex, ey, ez);
    const bool p_smaller = p.term_count() <= q.term_count();
    const auto& a = p_smaller ? p.raw() : q.raw();
    const auto& b = p_smaller ? q.raw() : p.raw();
    Integer total = 0;
    for (const auto& [ka, ca] : a) {
        const uint64_t want = target + kBiasKey - ka;
        auto it = std::lower_bound(b.begin(), b.end(), want,
                                   [](const auto& t, uint64_t k) { return t.first < k; });
        if (it != b.end() && it->first == want)
            mpz_addmul(total.get_mpz_t(), ca.get_mpz_t(), it->second.get_mpz_t());
    }
    return total;
}

/// A_delta(n) as the coefficient of x^n y^n z^n in N^n. The power is split
/// into two halves so only N^ceil(n/2) is ever materialized.
inline Integer ct_lambda_power(int64_t n) {
    if (n < 0) throw std::invalid_argument("ct_lambda_power: negative index");
    if (n == 0) return 1;
    const LaurentPoly num = lambda_numerator();
    const int64_t half = n / 2;
    const LaurentPoly lo = poly_pow(num, half);
    const LaurentPoly hi = n % 2 == 0 ? lo : poly_mul(lo, num);
    return product_coefficient(lo, hi, n, n, n);
}

/// All of A_delta(0..n_max) via one multiplication ladder: N^k for
/// k <= ceil(n_max/2) computed once, each value then a single convolution.
inline std::vector<Integer> ct_lambda_power_upto(int64_t n_max) {
    if (n_max < 0) throw std::invalid_argument("ct_lambda_power_upto: negative index");
    const LaurentPoly num = lambda_numerator();
    std::vector<LaurentPoly> ladder;
    ladder.push_back(LaurentPoly::one());
    const int64_t top = (n_max + 1) / 2;
    for (int64_t k = 1; k <= top; ++k) ladder.push_back(poly_mul(ladder.back(), num));
    std::vector<Integer> out;
    out.reserve(static_cast<size_t>(n_max) + 1);
    for (int64_t n = 0; n <= n_max; ++n) {
        const auto& lo = ladder[static_cast<size_t>(n / 2)];
        const auto& hi = ladder[static_cast<size_t>(n - n / 2)];
        out.push_back(product_coefficient(lo, hi, n, n, n));
    }
    return out;
}

}  // namespace sporadic
