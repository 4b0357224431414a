#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "sporadic/exactarith.hpp"

namespace sporadic {

using Block3 = std::array<int64_t, 3>;

/// A 12-component nonnegative vector (a1,a2,a3, b1,b2,b3, c1,c2,c3, d1,d2,d3).
/// Membership in U(n) means the four row sums and the four cross sums
///   a1+a2+a3 = b1+b2+b3 = c1+c2+c3 = d1+d2+d3 = n,
///   b1+c1+d1 = a1+b2+d2 = a2+b3+c2 = a3+c3+d3 = n
/// all hold; the last cross equation is implied by the other seven and is
/// verified rather than independently imposed.
struct Tuple12 {
    std::array<int64_t, 12> v{};

    int64_t& operator[](size_t i) { return v[i]; }
    int64_t operator[](size_t i) const { return v[i]; }

    int64_t a1() const { return v[0]; }
    int64_t a2() const { return v[1]; }
    int64_t a3() const { return v[2]; }
    int64_t b1() const { return v[3]; }
    int64_t b2() const { return v[4]; }
    int64_t b3() const { return v[5]; }
    int64_t c1() const { return v[6]; }
    int64_t c2() const { return v[7]; }
    int64_t c3() const { return v[8]; }
    int64_t d1() const { return v[9]; }
    int64_t d2() const { return v[10]; }
    int64_t d3() const { return v[11]; }

    Block3 a_block() const { return {v[0], v[1], v[2]}; }
    Block3 b_block() const { return {v[3], v[4], v[5]}; }
    Block3 c_block() const { return {v[6], v[7], v[8]}; }
    Block3 d_block() const { return {v[9], v[10], v[11]}; }
    Block3 block(int i) const { return {v[3 * i], v[3 * i + 1], v[3 * i + 2]}; }

    /// Row sum of the a-block; for a U(n) member this recovers n.
    int64_t row_sum() const { return v[0] + v[1] + v[2]; }

    bool in_u(int64_t n) const {
        for (int64_t x : v)
            if (x < 0) return false;
        return v[0] + v[1] + v[2] == n && v[3] + v[4] + v[5] == n && v[6] + v[7] + v[8] == n &&
               v[9] + v[10] + v[11] == n && v[3] + v[6] + v[9] == n && v[0] + v[4] + v[10] == n &&
               v[1] + v[5] + v[7] == n && v[2] + v[8] + v[11] == n;
    }

    bool divisible_by(int64_t f) const {
        for (int64_t x : v)
            if (x % f != 0) return false;
        return true;
    }

    Tuple12 scaled(int64_t f) const {
        Tuple12 t;
        for (size_t i = 0; i < 12; ++i) t.v[i] = v[i] * f;
        return t;
    }

    Tuple12 divided(int64_t f) const {
        Tuple12 t;
        for (size_t i = 0; i < 12; ++i) {
            if (v[i] % f != 0) throw std::invalid_argument("Tuple12::divided: not divisible");
            t.v[i] = v[i] / f;
        }
        return t;
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < 12; ++i) {
            if (i) s += i % 3 == 0 ? "; " : ",";
            s += std::to_string(v[i]);
        }
        return s + ")";
    }

    friend auto operator<=>(const Tuple12&, const Tuple12&) = default;
};

}  // namespace sporadic
