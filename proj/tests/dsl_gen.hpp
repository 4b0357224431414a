#pragma once

// Random DSL expression trees, shared by the parser tests and the
// acceptance suite's roundtrip property.

#include <random>

#include "sporadic/seqdsl.hpp"

namespace sporadic::dsl {

class AstGen {
public:
    explicit AstGen(uint64_t seed) : rng_(seed) {}

    ExprPtr expr(int depth, bool with_index) {
        if (depth <= 0 || pick(4) == 0) return leaf(with_index);
        switch (pick(8)) {
            case 0: return make_node(ExprKind::kNeg, expr(depth - 1, with_index));
            case 1: return make_node(ExprKind::kAdd, expr(depth - 1, with_index), expr(depth - 1, with_index));
            case 2: return make_node(ExprKind::kSub, expr(depth - 1, with_index), expr(depth - 1, with_index));
            case 3: return make_node(ExprKind::kMul, expr(depth - 1, with_index), expr(depth - 1, with_index));
            case 4: return make_node(ExprKind::kDiv, expr(depth - 1, with_index), expr(depth - 1, with_index));
            case 5: return make_node(ExprKind::kPow, expr(depth - 1, with_index), expr(depth - 1, with_index));
            case 6: return make_node(ExprKind::kBinom, expr(depth - 1, with_index), expr(depth - 1, with_index));
            default: return make_node(ExprKind::kFact, expr(depth - 1, with_index));
        }
    }

    SequenceDef def() {
        SequenceDef d;
        d.name = "gen";
        d.index = "k";
        d.lower = expr(2, false);
        d.upper = expr(2, false);
        d.body = expr(4, true);
        return d;
    }

private:
    ExprPtr leaf(bool with_index) {
        const int64_t which = pick(with_index ? 3 : 2);
        if (which == 0) return make_int(Integer(static_cast<long>(pick(13))));
        if (which == 1) return make_var("n");
        return make_var("k");
    }

    int64_t pick(int64_t n) {
        return static_cast<int64_t>(rng_() % static_cast<uint64_t>(n));
    }

    std::mt19937_64 rng_;
};

}  // namespace sporadic::dsl
