#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sporadic/exactarith.hpp"
#include "sporadic/laurent.hpp"
#include "sporadic/parallel.hpp"
#include "sporadic/report.hpp"
#include "sporadic/sequences.hpp"

/// The user-facing supercongruence verifier: checks
/// A(mp^r) == A(mp^{r-1}) (mod p^{lambda r}) for a sequence evaluator,
/// over single parameter points or sweeps.
namespace sporadic {

/// A named total evaluator n -> A(n) over exact integers.
struct Sequence {
    std::string name;
    std::function<Integer(int64_t)> eval;
};

inline Sequence delta_binomial_sequence() {
    return {"delta", [](int64_t n) { return a_delta_binomial(n); }};
}

inline Sequence delta_multinomial_sequence(int64_t cap = kMultinomialSumDefaultCap) {
    return {"delta[multinomial]", [cap](int64_t n) { return a_delta_multinomial(n, cap); }};
}

inline Sequence delta_constant_term_sequence() {
    return {"delta[laurent]", [](int64_t n) { return ct_lambda_power(n); }};
}

inline Sequence constant_one_sequence() {
    return {"one", [](int64_t) { return Integer(1); }};
}

struct CongruenceParams {
    int64_t p = 5;
    int64_t m = 1;
    int64_t r = 1;
    int64_t lambda = 3;

    void validate() const {
        if (p < 5 || !is_prime(p))
            throw std::invalid_argument("congruence: p must be a prime >= 5");
        if (m < 1 || r < 1) throw std::invalid_argument("congruence: m, r must be >= 1");
        if (lambda != 2 && lambda != 3)
            throw std::invalid_argument("congruence: lambda must be 2 or 3");
    }
};

/// One supercongruence check: the two indices, both exact values, the
/// observed valuation of their difference and the required lambda*r.
struct CongruenceReport {
    CongruenceParams params;
    std::string sequence;
    int64_t n_hi = 0;
    int64_t n_lo = 0;
    Integer value_hi;
    Integer value_lo;
    Valuation observed;
    int64_t required = 0;
    bool pass = false;

    CheckResult to_check_result() const {
        CheckResult r;
        r.check = "supercongruence";
        r.params = {{"seq", sequence},
                    {"p", std::to_string(params.p)},
                    {"m", std::to_string(params.m)},
                    {"r", std::to_string(params.r)},
                    {"lambda", std::to_string(params.lambda)},
                    {"n_hi", std::to_string(n_hi)},
                    {"n_lo", std::to_string(n_lo)}};
        r.observed = "nu=" + observed.str();
        r.required = ">=" + std::to_string(required);
        r.pass = pass;
        return r;
    }
};

namespace congruence_detail {

inline CongruenceReport make_report(const Sequence& seq, const CongruenceParams& cp,
                                    const Integer& hi, const Integer& lo) {
    CongruenceReport rep;
    rep.params = cp;
    rep.sequence = seq.name;
    rep.n_hi = cp.m * ipow64(cp.p, cp.r);
    rep.n_lo = cp.m * ipow64(cp.p, cp.r - 1);
    rep.value_hi = hi;
    rep.value_lo = lo;
    rep.observed = nu_p(cp.p, Integer(hi - lo));
    rep.required = cp.lambda * cp.r;
    rep.pass = rep.observed >= rep.required;
    return rep;
}

}  // namespace congruence_detail

inline CongruenceReport check_supercongruence(const Sequence& seq, const CongruenceParams& cp) {
    cp.validate();
    const int64_t n_hi = cp.m * ipow64(cp.p, cp.r);
    const int64_t n_lo = cp.m * ipow64(cp.p, cp.r - 1);
    return congruence_detail::make_report(seq, cp, seq.eval(n_hi), seq.eval(n_lo));
}

/// The exact valuation nu_p(A(mp^r) - A(mp^{r-1})), letting callers observe
/// where the congruence is sharp.
inline Valuation sharpness_scan(const Sequence& seq, const CongruenceParams& cp) {
    return check_supercongruence(seq, cp).observed;
}

inline std::vector<int64_t> primes_in(int64_t lo, int64_t hi) {
    std::vector<int64_t> out;
    for (int64_t p = lo; p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

/// Reports for every admissible (p, m, r) with 5 <= p <= p_max prime,
/// 1 <= m <= m_max, 1 <= r <= r_max. Sequence values are computed once per
/// needed index (mp^{r-1} indices repeat across r) and cells never skip a
/// failing case.
inline std::vector<CongruenceReport> sweep(const Sequence& seq, int64_t p_max, int64_t m_max,
                                           int64_t r_max, int64_t lambda, int64_t jobs = 1) {
    if (m_max < 1 || r_max < 1) throw std::invalid_argument("sweep: bounds must be >= 1");
    std::vector<CongruenceParams> cells;
    std::map<int64_t, Integer> values;
    for (int64_t p : primes_in(5, p_max))
        for (int64_t m = 1; m <= m_max; ++m)
            for (int64_t r = 1; r <= r_max; ++r) {
                CongruenceParams cp{p, m, r, lambda};
                cp.validate();
                cells.push_back(cp);
                values[cp.m * ipow64(cp.p, cp.r)] = 0;
                values[cp.m * ipow64(cp.p, cp.r - 1)] = 0;
            }
    std::vector<int64_t> indices;
    indices.reserve(values.size());
    for (const auto& [n, v] : values) indices.push_back(n);
    // Keys are all pre-inserted, so workers only assign into distinct slots.
    parallel_for(static_cast<int64_t>(indices.size()), resolve_jobs(jobs), [&](int64_t i) {
        const int64_t n = indices[static_cast<size_t>(i)];
        values.at(n) = seq.eval(n);
    });
    std::vector<CongruenceReport> out;
    out.reserve(cells.size());
    for (const auto& cp : cells)
        out.push_back(congruence_detail::make_report(
            seq, cp, values.at(cp.m * ipow64(cp.p, cp.r)), values.at(cp.m * ipow64(cp.p, cp.r - 1))));
    return out;
}

}  // namespace sporadic
