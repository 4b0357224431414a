#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "sporadic/exactarith.hpp"
#include "sporadic/report.hpp"
#include "sporadic/sequences.hpp"
#include "sporadic/tuple12.hpp"

/// The set machinery behind the supercongruence: the pattern classes
/// T_{s,ell} partitioning U_ab(mp^r), the block-permutation bijections, and
/// exhaustive verifiers for every sum decomposition used along the way.
///
/// Divisibility language: "p divides a block" means p divides all three of
/// its components. U_ab(n) is the set of U(n) members whose a and b blocks
/// are not divisible while the c and d blocks are; the c,d condition is
/// implied by the classification s = min(nu_p(c), nu_p(d), r) >= 1 and is
/// required for the partition into T_{s,ell} to be exact.
namespace sporadic {

/// S_{p^s} = { 1 <= x <= p^s - 1 : p does not divide x }.
inline std::vector<int64_t> s_set(int64_t p, int64_t s) {
    if (s < 1) throw std::invalid_argument("s_set: s must be >= 1");
    std::vector<int64_t> out;
    for (int64_t x = 1; x < ipow64(p, s); ++x)
        if (x % p != 0) out.push_back(x);
    return out;
}

inline bool block_divisible(const Block3& b, int64_t p) {
    return b[0] % p == 0 && b[1] % p == 0 && b[2] % p == 0;
}

/// min over the block's components of nu_p (infinite for the zero block).
inline Valuation block_valuation(const Block3& b, int64_t p) {
    Valuation v = Valuation::infinity();
    for (int64_t c : b) {
        Valuation w = nu_p(p, c);
        if (w < v) v = w;
    }
    return v;
}

inline int nondivisible_block_count(const Tuple12& t, int64_t p) {
    int count = 0;
    for (int i = 0; i < 4; ++i)
        if (!block_divisible(t.block(i), p)) ++count;
    return count;
}

inline bool in_u_ab(const Tuple12& t, int64_t n, int64_t p) {
    return t.in_u(n) && !block_divisible(t.a_block(), p) && !block_divisible(t.b_block(), p) &&
           block_divisible(t.c_block(), p) && block_divisible(t.d_block(), p);
}

inline std::vector<Tuple12> enumerate_u_ab(int64_t n, int64_t p) {
    std::vector<Tuple12> out;
    for_each_u(n, [&](const Tuple12& t) {
        if (in_u_ab(t, n, p)) out.push_back(t);
    });
    return out;
}

/// s = min(nu_p(c-block), nu_p(d-block), r) for a member of U_ab(mp^r);
/// always 1 <= s <= r.
inline int64_t classify_s(const Tuple12& t, int64_t p, int64_t r) {
    const int64_t n = t.row_sum();
    if (!in_u_ab(t, n, p)) throw std::invalid_argument("classify_s: tuple not in U_ab");
    int64_t s = r;
    for (const auto& block : {t.c_block(), t.d_block()}) {
        Valuation v = block_valuation(block, p);
        if (!v.is_infinite()) s = std::min(s, v.value());
    }
    if (s < 1) throw std::logic_error("classify_s: s < 1 on a U_ab member");
    return s;
}

/// The kernel pattern (x, -x, 0, 0, -x, x, 0, 0, 0, 0, 0, 0): adding it to
/// any tuple preserves all eight defining sums.
inline Tuple12 x_pattern(int64_t x) {
    Tuple12 t{};
    t[0] = x;
    t[1] = -x;
    t[4] = -x;
    t[5] = x;
    return t;
}

inline Tuple12 tuple_add(const Tuple12& a, const Tuple12& b) {
    Tuple12 r;
    for (size_t i = 0; i < 12; ++i) r[i] = a[i] + b[i];
    return r;
}

/// One class T_{s,ell} = { ell + x_pattern(x) : x in S_{p^s} }.
struct TClass {
    int64_t s = 0;
    std::array<int64_t, 12> ell{};
    std::vector<Tuple12> members;
};

/// Decomposes U_ab(mp^r) into the classes T_{s,ell}. Each member reduces to
/// its ell by subtracting x_pattern(a1 mod p^s); the residue x is prime to p
/// and the remainder is componentwise nonnegative and divisible by p^s.
inline std::vector<TClass> build_partition(int64_t p, int64_t m, int64_t r) {
    if (!is_prime(p) || p < 5) throw std::invalid_argument("build_partition: p must be a prime >= 5");
    if (m < 0 || r < 1) throw std::invalid_argument("build_partition: need m >= 0, r >= 1");
    const int64_t n = m * ipow64(p, r);
    std::map<std::pair<int64_t, std::array<int64_t, 12>>, std::vector<Tuple12>> buckets;
    for (const Tuple12& t : enumerate_u_ab(n, p)) {
        const int64_t s = classify_s(t, p, r);
        const int64_t ps = ipow64(p, s);
        const int64_t x = t.a1() % ps;
        if (x % p == 0) throw std::logic_error("build_partition: residue divisible by p");
        Tuple12 ell = tuple_add(t, x_pattern(-x));
        std::array<int64_t, 12> key{};
        for (size_t i = 0; i < 12; ++i) {
            if (ell[i] < 0 || ell[i] % ps != 0)
                throw std::logic_error("build_partition: reduction left an invalid ell");
            key[i] = ell[i];
        }
        buckets[{s, key}].push_back(t);
    }
    std::vector<TClass> classes;
    for (auto& [key, members] : buckets) {
        std::sort(members.begin(), members.end());
        classes.push_back({key.first, key.second, std::move(members)});
    }
    return classes;
}

// Block-permutation maps on U(n); each preserves B.
inline Tuple12 remap(const Tuple12& t, const std::array<int, 12>& perm) {
    const int64_t n = t.row_sum();
    if (!t.in_u(n)) throw std::invalid_argument("map: tuple not in U(n)");
    Tuple12 r;
    for (size_t i = 0; i < 12; ++i) r[i] = t[static_cast<size_t>(perm[i])];
    if (!r.in_u(n)) throw std::logic_error("map: image left U(n)");
    return r;
}

/// (a,b,c,d) -> (d2,d3,d1, a2,a1,a3, c2,c3,c1, b3,b2,b1).
inline Tuple12 map_b1(const Tuple12& t) {
    return remap(t, {10, 11, 9, 1, 0, 2, 7, 8, 6, 5, 4, 3});
}

/// (a,b,c,d) -> (b2,b1,b3, d3,d2,d1, c3,c1,c2, a3,a1,a2).
inline Tuple12 map_b2(const Tuple12& t) {
    return remap(t, {4, 3, 5, 11, 10, 9, 8, 6, 7, 2, 0, 1});
}

/// (a,b,c,d) -> (a3,a2,a1, c1,c3,c2, b1,b3,b2, d1,d3,d2).
inline Tuple12 map_b3(const Tuple12& t) {
    return remap(t, {2, 1, 0, 6, 8, 7, 3, 5, 4, 9, 11, 10});
}

namespace decomp_detail {

inline std::string istr(int64_t v) { return std::to_string(v); }

inline std::vector<std::pair<std::string, std::string>> pmr(int64_t p, int64_t m, int64_t r) {
    return {{"p", istr(p)}, {"m", istr(m)}, {"r", istr(r)}};
}

inline void require_params(int64_t p, int64_t m, int64_t r, const char* who) {
    if (!is_prime(p) || p < 5 || m < 0 || r < 1)
        throw std::invalid_argument(std::string(who) + ": need prime p >= 5, m >= 0, r >= 1");
}

/// One pass over U(mp^r): block-pattern strata of the B-sum.
struct UStrata {
    int64_t n = 0;
    std::array<Integer, 5> by_count{};          // indexed by nondivisible block count
    std::map<std::pair<int, int>, Integer> by_pair;  // exactly-two patterns
    Integer div_total;                          // p | t
    Integer nondiv_total;                       // p does not divide t
    Integer full_total;
    bool no_single_nondivisible = true;
    bool heavy_summands_divisible = true;       // count >= 3 => nu_p(B) >= 3r
};

inline UStrata compute_strata(int64_t p, int64_t m, int64_t r) {
    UStrata s;
    s.n = m * ipow64(p, r);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) s.by_pair[{i, j}] = 0;
    for_each_u(s.n, [&](const Tuple12& t) {
        const Integer b = b_term(s.n, t);
        s.full_total += b;
        if (t.divisible_by(p)) {
            s.div_total += b;
            return;
        }
        s.nondiv_total += b;
        const int count = nondivisible_block_count(t, p);
        if (count == 1) s.no_single_nondivisible = false;
        if (count >= 3 && !(nu_p(p, b) >= 3 * r)) s.heavy_summands_divisible = false;
        s.by_count[static_cast<size_t>(count)] += b;
        if (count == 2) {
            std::array<int, 2> nd{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (!block_divisible(t.block(i), p)) nd[static_cast<size_t>(k++)] = i;
            s.by_pair[{nd[0], nd[1]}] += b;
        }
    });
    return s;
}

}  // namespace decomp_detail

/// Proposition-style partition exactness: the T_{s,ell} are pairwise
/// disjoint, each equals { ell + x_pattern(x) : x in S_{p^s} } with
/// nu_p(ell) = s, and their union is exactly U_ab(mp^r).
inline CheckResult check_partition_exactness(int64_t p, int64_t m, int64_t r) {
    using decomp_detail::istr;
    decomp_detail::require_params(p, m, r, "check_partition_exactness");
    const int64_t n = m * ipow64(p, r);
    auto classes = build_partition(p, m, r);
    bool ok = true;
    size_t member_total = 0;
    std::vector<Tuple12> all;
    for (const auto& cls : classes) {
        member_total += cls.members.size();
        // nu_p(ell) = s exactly.
        Valuation v = Valuation::infinity();
        for (int64_t c : cls.ell) {
            Valuation w = nu_p(p, c);
            if (w < v) v = w;
        }
        ok = ok && v == cls.s;
        // The class is the full pattern orbit and sits inside U_ab^(s).
        std::vector<Tuple12> orbit;
        Tuple12 ell_t;
        for (size_t i = 0; i < 12; ++i) ell_t[i] = cls.ell[i];
        for (int64_t x : s_set(p, cls.s)) {
            Tuple12 member = tuple_add(ell_t, x_pattern(x));
            ok = ok && in_u_ab(member, n, p) && classify_s(member, p, r) == cls.s;
            orbit.push_back(member);
        }
        std::sort(orbit.begin(), orbit.end());
        ok = ok && orbit == cls.members;
        all.insert(all.end(), cls.members.begin(), cls.members.end());
    }
    std::sort(all.begin(), all.end());
    ok = ok && std::adjacent_find(all.begin(), all.end()) == all.end();
    auto uab = enumerate_u_ab(n, p);
    std::sort(uab.begin(), uab.end());
    ok = ok && all == uab;

    CheckResult res;
    res.check = "partition-exactness";
    res.params = decomp_detail::pmr(p, m, r);
    res.observed = "classes=" + istr(static_cast<int64_t>(classes.size())) +
                   ",members=" + istr(static_cast<int64_t>(member_total));
    res.required = "disjoint-union=|U_ab|=" + istr(static_cast<int64_t>(uab.size()));
    res.pass = ok;
    return res;
}

/// No tuple has exactly one nondivisible block; the all-nondivisible and
/// three-nondivisible strata sums vanish mod p^{3r}, each summand already
/// carrying valuation >= 3r.
inline CheckResult check_claim_sums(int64_t p, int64_t m, int64_t r) {
    decomp_detail::require_params(p, m, r, "check_claim_sums");
    const auto s = decomp_detail::compute_strata(p, m, r);
    const bool sum4 = congruent_mod_prime_power(s.by_count[4], 0, p, 3 * r);
    const bool sum3 = congruent_mod_prime_power(s.by_count[3], 0, p, 3 * r);
    CheckResult res;
    res.check = "claim-sums";
    res.params = decomp_detail::pmr(p, m, r);
    res.observed = std::string("stratum1=") + (s.no_single_nondivisible ? "empty" : "NONEMPTY") +
                   ",nu4=" + nu_p(p, s.by_count[4]).str() + ",nu3=" + nu_p(p, s.by_count[3]).str() +
                   ",summands=" + (s.heavy_summands_divisible ? "ok" : "BAD");
    res.required = "empty,>=" + decomp_detail::istr(3 * r);
    res.pass = s.no_single_nondivisible && sum4 && sum3 && s.heavy_summands_divisible;
    return res;
}

/// The six exactly-two-pattern sums are equal and make up the whole
/// exactly-two stratum: total = 6 * (U_ab sum).
inline CheckResult check_one2six(int64_t p, int64_t m, int64_t r) {
    decomp_detail::require_params(p, m, r, "check_one2six");
    const auto s = decomp_detail::compute_strata(p, m, r);
    const Integer& ab = s.by_pair.at({0, 1});
    bool equal = true;
    Integer pair_total = 0;
    for (const auto& [key, val] : s.by_pair) {
        equal = equal && val == ab;
        pair_total += val;
    }
    const bool covers = pair_total == s.by_count[2];
    const bool six = s.by_count[2] == 6 * ab;
    CheckResult res;
    res.check = "one2six";
    res.params = decomp_detail::pmr(p, m, r);
    res.observed = std::string(equal ? "six-equal" : "UNEQUAL") + ",ab=" + ab.get_str();
    res.required = "six-equal,total=6*ab";
    res.pass = equal && covers && six;
    return res;
}

/// The inner-sum identity for one class T_{s,ell}:
///   sum_{t in T} B(t) = (-1)^{ell2+ell4+ell12} m^2 p^{2r} C(n;c) C(n;d)
///     * sum'_x (-1)^x / (a1 b3) * C(n-1,a1-1) C(n-a1,a3) C(n-1,b3-1) C(n-b3,b1)
/// with a1 = ell1 + x, a3 = ell3, b3 = ell6 + x, b1 = ell4; both sides exact.
inline CheckResult check_reduce_identity(int64_t p, int64_t m, int64_t r, const TClass& cls) {
    using decomp_detail::istr;
    decomp_detail::require_params(p, m, r, "check_reduce_identity");
    const int64_t n = m * ipow64(p, r);
    CheckResult res;
    res.check = "reduce-identity";
    res.params = decomp_detail::pmr(p, m, r);
    res.params.emplace_back("s", istr(cls.s));
    std::string ell_str;
    for (size_t i = 0; i < 12; ++i) ell_str += (i ? "," : "") + istr(cls.ell[i]);
    res.params.emplace_back("ell", ell_str);

    if (cls.members.empty()) {
        res.observed = "empty";
        res.required = "0=0";
        res.pass = true;
        return res;
    }

    Integer lhs = 0;
    for (const auto& t : cls.members) lhs += b_term(n, t);

    const Block3 c = {cls.ell[6], cls.ell[7], cls.ell[8]};
    const Block3 d = {cls.ell[9], cls.ell[10], cls.ell[11]};
    Integer base = Integer(static_cast<long>(m)) * m *
                   int_pow(Integer(static_cast<long>(p)), static_cast<uint64_t>(2 * r));
    base *= multinomial(n, {c[0], c[1], c[2]});
    base *= multinomial(n, {d[0], d[1], d[2]});
    if ((cls.ell[1] + cls.ell[3] + cls.ell[11]) % 2 != 0) base = -base;

    Rational inner(0);
    for (int64_t x : s_set(p, cls.s)) {
        const int64_t a1 = cls.ell[0] + x;
        const int64_t a3 = cls.ell[2];
        const int64_t b3 = cls.ell[5] + x;
        const int64_t b1 = cls.ell[3];
        Integer numer = binomial(n - 1, a1 - 1) * binomial(n - a1, a3) * binomial(n - 1, b3 - 1) *
                        binomial(n - b3, b1);
        Rational term = make_rational(numer, Integer(static_cast<long>(a1)) * b3);
        if (x % 2 == 0)
            inner += term;
        else
            inner -= term;
    }
    const Rational rhs = Rational(base) * inner;
    res.observed = "lhs=" + lhs.get_str();
    res.required = "rhs-equal";
    res.pass = Rational(lhs) == rhs;
    return res;
}

/// sum over U(mp^r) of B restricted to tuples not divisible by p vanishes
/// mod p^{3r}.
inline CheckResult check_suff(int64_t p, int64_t m, int64_t r) {
    decomp_detail::require_params(p, m, r, "check_suff");
    const auto s = decomp_detail::compute_strata(p, m, r);
    CheckResult res;
    res.check = "suff";
    res.params = decomp_detail::pmr(p, m, r);
    res.observed = "nu=" + nu_p(p, s.nondiv_total).str();
    res.required = ">=" + decomp_detail::istr(3 * r);
    res.pass = congruent_mod_prime_power(s.nondiv_total, 0, p, 3 * r);
    return res;
}

/// For a p-divisible member of U(mp^r):
/// B(t) == B(t/p) (mod p^{3r}), the B on the right taken at level mp^{r-1}.
inline CheckResult check_prop_first(int64_t p, int64_t m, int64_t r, const Tuple12& t) {
    decomp_detail::require_params(p, m, r, "check_prop_first");
    const int64_t n = m * ipow64(p, r);
    if (!t.in_u(n) || !t.divisible_by(p))
        throw std::invalid_argument("check_prop_first: need a p-divisible member of U(mp^r)");
    const Integer hi = b_term(n, t);
    const Integer lo = b_term(n / p, t.divided(p));
    CheckResult res;
    res.check = "prop-first";
    res.params = decomp_detail::pmr(p, m, r);
    res.params.emplace_back("t", t.str());
    res.observed = "nu=" + nu_p(p, Integer(hi - lo)).str();
    res.required = ">=" + decomp_detail::istr(3 * r);
    res.pass = congruent_mod_prime_power(hi, lo, p, 3 * r);
    return res;
}

/// check_prop_first over every p-divisible tuple of U(mp^r).
inline CheckResult check_prop_first_all(int64_t p, int64_t m, int64_t r) {
    decomp_detail::require_params(p, m, r, "check_prop_first_all");
    const int64_t n = m * ipow64(p, r);
    int64_t count = 0;
    bool ok = true;
    for_each_u(n, [&](const Tuple12& t) {
        if (!t.divisible_by(p)) return;
        ++count;
        ok = ok && check_prop_first(p, m, r, t).pass;
    });
    CheckResult res;
    res.check = "prop-first-all";
    res.params = decomp_detail::pmr(p, m, r);
    res.observed = "tuples=" + decomp_detail::istr(count) + (ok ? ",all-pass" : ",FAIL");
    res.required = "all nu>=" + decomp_detail::istr(3 * r);
    res.pass = ok;
    return res;
}

/// The exact split of the two-term difference:
///   A(mp^r) - A(mp^{r-1}) = (divisible-part sum - A(mp^{r-1})) + nondivisible sum,
/// with the p-divisible part of U(mp^r) in exact bijection with U(mp^{r-1})
/// and both deviation terms vanishing mod p^{3r}.
inline CheckResult check_split_assembly(int64_t p, int64_t m, int64_t r) {
    decomp_detail::require_params(p, m, r, "check_split_assembly");
    const int64_t n = m * ipow64(p, r);
    const int64_t n_lo = n / p;
    const auto s = decomp_detail::compute_strata(p, m, r);

    Integer prev = 0;
    std::vector<Tuple12> lower;
    for_each_u(n_lo, [&](const Tuple12& t) {
        prev += b_term(n_lo, t);
        lower.push_back(t);
    });
    std::vector<Tuple12> scaled_down;
    for_each_u(n, [&](const Tuple12& t) {
        if (t.divisible_by(p)) scaled_down.push_back(t.divided(p));
    });
    std::sort(lower.begin(), lower.end());
    std::sort(scaled_down.begin(), scaled_down.end());
    const bool bijection = lower == scaled_down;

    const Integer diff = s.full_total - prev;
    const Integer deviation = s.div_total - prev;
    const bool exact_split = diff == deviation + s.nondiv_total;
    const bool full_is_sequence = s.full_total == a_delta_binomial(n) && prev == a_delta_binomial(n_lo);
    const bool cong = congruent_mod_prime_power(deviation, 0, p, 3 * r) &&
                      congruent_mod_prime_power(s.nondiv_total, 0, p, 3 * r) &&
                      congruent_mod_prime_power(diff, 0, p, 3 * r);

    CheckResult res;
    res.check = "split-assembly";
    res.params = decomp_detail::pmr(p, m, r);
    res.observed = std::string(bijection ? "bijection" : "NO-BIJECTION") +
                   ",nu(dev)=" + nu_p(p, deviation).str() +
                   ",nu(nondiv)=" + nu_p(p, s.nondiv_total).str();
    res.required = "exact-split,nu>=" + decomp_detail::istr(3 * r);
    res.pass = bijection && exact_split && full_is_sequence && cong;
    return res;
}

/// The whole pipeline at one parameter point, in dependency order.
inline std::vector<CheckResult> decompose_all(int64_t p, int64_t m, int64_t r) {
    std::vector<CheckResult> out;
    out.push_back(check_partition_exactness(p, m, r));
    out.push_back(check_claim_sums(p, m, r));
    out.push_back(check_one2six(p, m, r));
    for (const auto& cls : build_partition(p, m, r))
        out.push_back(check_reduce_identity(p, m, r, cls));
    out.push_back(check_suff(p, m, r));
    out.push_back(check_prop_first_all(p, m, r));
    out.push_back(check_split_assembly(p, m, r));
    return out;
}

}  // namespace sporadic
