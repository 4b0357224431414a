#include <catch2/catch_amalgamated.hpp>

#include "dsl_gen.hpp"
#include "sporadic/seqdsl.hpp"
#include "sporadic/sequences.hpp"

using namespace sporadic;
using namespace sporadic::dsl;

namespace {

const char* kDeltaText =
    "seq delta(n) = sum(k = 0 .. n) (-1)^k * 3^(n - 3*k) * binom(n, 3*k) * "
    "binom(n + k, n) * fact(3*k) / fact(k)^3";

}  // namespace

TEST_CASE("parse and evaluate the delta definition") {
    SequenceDef def = parse(kDeltaText);
    CHECK(def.name == "delta");
    CHECK(def.index == "k");
    CHECK(evaluate(def, 0) == 1);
    CHECK(evaluate(def, 1) == 3);
    CHECK(evaluate(def, 4) == -279);
    for (int64_t n = 0; n <= 30; ++n) REQUIRE(evaluate(def, n) == a_delta_binomial(n));
}

TEST_CASE("constant-one definition") {
    SequenceDef def = parse("seq one(n) = sum(k = 0 .. 0) 1");
    CHECK(evaluate(def, 17) == 1);
    CHECK(print(def) == "seq one(n) = sum(k = 0 .. 0) 1");
}

TEST_CASE("empty summation range") {
    CHECK(evaluate(parse("seq z(n) = sum(k = 3 .. 2) 1"), 7) == 0);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse("seq bad(n) = sum(k = 0 ..");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos().line == 1);
        CHECK(e.pos().col == 26);
    }
    try {
        parse("seq odd(n) =\n  sum(k = 0 .. 0) %");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos().line == 2);
        CHECK(e.pos().col == 19);
    }
    CHECK_THROWS_AS(parse("seq f(n) = sum(k = 0 .. n) j"), ParseError);        // unknown ident
    CHECK_THROWS_AS(parse("seq f(n) = sum(k = 0 .. k) 1"), ParseError);        // k not in bound scope
    CHECK_THROWS_AS(parse("seq f(n) = sum(n = 0 .. 3) 1"), ParseError);        // index shadows n
    CHECK_THROWS_AS(parse("seq sum(n) = sum(k = 0 .. 3) 1"), ParseError);      // reserved name
    CHECK_THROWS_AS(parse("seq f(n) = sum(k = 0 .. 3) 1 extra"), ParseError);  // trailing junk
    CHECK_THROWS_AS(parse("seq f(n) = sum(k = 0 . 3) 1"), ParseError);         // stray dot
}

TEST_CASE("comments are skipped") {
    SequenceDef def = parse("# header\nseq c(n) = sum(k = 0 .. 0) # mid\n 2 + 3");
    CHECK(evaluate(def, 0) == 5);
}

TEST_CASE("evaluation errors") {
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) 1/2"), 0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) 1/(n - n)"), 3), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) fact(-2)"), 0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) binom(1/2, 1)"), 0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) binom(0 - 3, 1)"), 0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) fact(1/2)"), 0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) 2^(1/2)"), 0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. 0) 0^-1"), 0), EvalError);
    CHECK_THROWS_AS(evaluate(parse("seq f(n) = sum(k = 0 .. n/2) 1"), 3), EvalError);
}

TEST_CASE("negative exponents stay exact") {
    // 4 * 2^-2 = 1: rational intermediates, integer total.
    CHECK(evaluate(parse("seq f(n) = sum(k = 0 .. 0) 4 * 2^-2"), 0) == 1);
}

TEST_CASE("roundtrip on the shipped definition") {
    SequenceDef def = parse(kDeltaText);
    SequenceDef again = parse(print(def));
    CHECK(equal(def, again));
    CHECK(print(def) == print(again));
}

TEST_CASE("print-parse roundtrip on 1000 random trees") {
    AstGen gen(0xD5EEDu);
    for (int i = 0; i < 1000; ++i) {
        SequenceDef def = gen.def();
        const std::string text = print(def);
        INFO(text);
        SequenceDef reparsed = parse(text);
        REQUIRE(equal(def, reparsed));
        REQUIRE(print(reparsed) == text);
    }
}
