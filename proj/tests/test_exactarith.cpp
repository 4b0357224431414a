#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "sporadic/exactarith.hpp"

using namespace sporadic;

namespace {

// Independent oracle: Pascal-triangle recurrence, no factorials involved.
std::vector<std::vector<Integer>> pascal_rows(int64_t n_max) {
    std::vector<std::vector<Integer>> rows;
    rows.push_back({Integer(1)});
    for (int64_t n = 1; n <= n_max; ++n) {
        std::vector<Integer> row(static_cast<size_t>(n) + 1, Integer(1));
        for (int64_t k = 1; k < n; ++k)
            row[static_cast<size_t>(k)] =
                rows.back()[static_cast<size_t>(k - 1)] + rows.back()[static_cast<size_t>(k)];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("binomial small cases") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(25, 5) == 53130);  // frozen from the Pascal oracle below
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(10, -1) == 0);
    CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
}

TEST_CASE("binomial agrees with Pascal recurrence up to 60") {
    auto rows = pascal_rows(60);
    CHECK(rows[25][5] == 53130);
    for (int64_t n = 0; n <= 60; ++n)
        for (int64_t k = 0; k <= n; ++k)
            REQUIRE(binomial(n, k) == rows[static_cast<size_t>(n)][static_cast<size_t>(k)]);
}

TEST_CASE("Pascal identity holds exhaustively") {
    for (int64_t n = 1; n <= 60; ++n)
        for (int64_t k = 0; k <= n; ++k)
            REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("multinomial basics") {
    CHECK(multinomial(3, {1, 1, 1}) == 6);
    CHECK(multinomial(7, {7}) == 1);
    CHECK(multinomial(0, {0, 0}) == 1);
    CHECK(multinomial(6, {2, 2, 2}) == 90);  // 720 / 8
    CHECK_THROWS_AS(multinomial(5, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(multinomial(5, {6, -1}), std::invalid_argument);
}

TEST_CASE("multinomial telescopes into binomials") {
    // n!/(a!b!c!d!) = C(n,a) C(n-a,b) C(n-a-b,c).
    for (int64_t n = 0; n <= 30; ++n) {
        for (int64_t a = 0; a <= n; ++a)
            for (int64_t b = 0; a + b <= n; ++b)
                for (int64_t c = 0; a + b + c <= n; ++c) {
                    int64_t d = n - a - b - c;
                    Integer expect = binomial(n, a) * binomial(n - a, b) * binomial(n - a - b, c);
                    REQUIRE(multinomial(n, {a, b, c, d}) == expect);
                }
    }
}

TEST_CASE("nu_p examples") {
    CHECK(nu_p(5, 250) == Valuation::finite(3));
    CHECK(nu_p(7, 1) == Valuation::finite(0));
    CHECK(nu_p(5, 0).is_infinite());
    CHECK(nu_p(5, Integer(-375)) == Valuation::finite(3));
}

TEST_CASE("nu_p is fully additive") {
    std::mt19937_64 rng(20240517);
    std::uniform_int_distribution<int64_t> unit(1, 1'000'000);
    std::uniform_int_distribution<int64_t> expo(0, 5);
    for (int64_t p : {5, 7, 11}) {
        for (int i = 0; i < 1000; ++i) {
            Integer x = Integer(static_cast<long>(unit(rng))) * int_pow(Integer(static_cast<long>(p)), static_cast<uint64_t>(expo(rng)));
            Integer y = Integer(static_cast<long>(unit(rng))) * int_pow(Integer(static_cast<long>(p)), static_cast<uint64_t>(expo(rng)));
            REQUIRE(nu_p(p, Integer(x * y)) == nu_p(p, x) + nu_p(p, y));
        }
    }
}

TEST_CASE("nu_p_rational") {
    CHECK(nu_p_rational(5, make_rational(1, 25)) == Valuation::finite(-2));
    CHECK(nu_p_rational(5, make_rational(10, 3)) == Valuation::finite(1));
    CHECK(nu_p_rational(7, Rational(0)).is_infinite());
}

TEST_CASE("Integer round-trips through decimal strings") {
    for (const char* s : {"0", "-1", "123456789012345678901234567890", "-987654321098765432109876543210"}) {
        Integer x(s);
        CHECK(x.get_str() == s);
    }
}

TEST_CASE("Rational is canonical") {
    Rational q = make_rational(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("congruence predicate is valuation-based") {
    CHECK(congruent_mod_prime_power(252, 2, 5, 3));
    CHECK_FALSE(congruent_mod_prime_power(252, 2, 5, 4));
    CHECK(congruent_mod_prime_power(7, 7, 5, 100));  // zero difference
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(4, 5) == 4);
    CHECK((mod_inverse(9, 25) * 9) % 25 == 1);
    CHECK_THROWS_AS(mod_inverse(5, 25), std::domain_error);
}

TEST_CASE("rational floor and ceil") {
    CHECK(rational_floor(make_rational(7, 2)) == 3);
    CHECK(rational_ceil(make_rational(7, 2)) == 4);
    CHECK(rational_floor(make_rational(-7, 2)) == -4);
    CHECK(rational_ceil(make_rational(-7, 2)) == -3);
    CHECK(rational_floor(make_rational(6, 3)) == 2);
    CHECK(rational_ceil(make_rational(6, 3)) == 2);
}

TEST_CASE("valuation ordering") {
    CHECK(Valuation::infinity() >= 1000000);
    CHECK(Valuation::finite(3) >= 3);
    CHECK_FALSE(Valuation::finite(2) >= 3);
    CHECK(Valuation::finite(1) < Valuation::infinity());
    CHECK(Valuation::finite(2) + Valuation::finite(3) == Valuation::finite(5));
    CHECK((Valuation::finite(2) + Valuation::infinity()).is_infinite());
}
