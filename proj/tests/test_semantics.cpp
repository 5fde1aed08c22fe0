#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wangmod/semantics.hpp"

using namespace wangmod;

namespace {

Formula P(const char* s) { return parse_formula(s); }

WorldSet worlds(std::size_t n, std::initializer_list<World> ws) {
    WorldSet s(n);
    for (World w : ws) s.set(w);
    return s;
}

const char* kSample[] = {
    "p o q",       "p @> q",          "q <@ p",        "[]p",         "[](p @> q)", "(p o q) @> ~p",
    "[]p -> p",    "p o (q o p)",     "~(p o ~q) | q", "[][]q",       "T o p",      "F o q",
    "(p <-> q) o T", "[](q <@ (p o q))", "p & ~p",     "p -> [](p | q)",
};

}  // namespace

TEST(SatSet, PowersetExamples) {
    Model m(powerset_frame(1, PowersetMode::Union), {{"p", worlds(2, {1})}, {"q", worlds(2, {0})}});
    EXPECT_EQ(sat_set(m, P("p o q")), worlds(2, {1}));
    EXPECT_TRUE(holds(m, 0, P("p @> q")));
    EXPECT_EQ(sat_set(m, P("~p")), sat_set(m, P("p")).complement());
}

TEST(SatSet, MissingLetterIsEmpty) {
    Model m(Frame(2));
    EXPECT_TRUE(sat_set(m, P("r")).empty());
}

TEST(SatSet, AgreesWithDirectClauses) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const Model m = oracle::random_model(1 + i % 4, 0.25, {"p", "q"}, rng);
        for (const char* s : kSample) {
            const Formula f = P(s);
            EXPECT_EQ(oracle::to_bools(sat_set(m, f)), oracle::eval(m, f)) << s << "\n" << write_model(m);
        }
    }
}

TEST(SatSet, CompiledEvaluatorAgrees) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        const Model m = oracle::random_model(1 + i % 5, 0.2, {"p", "q"}, rng);
        const SmallFrame small(m.frame);
        for (const char* s : kSample) {
            const CompiledFormula c(P(s));
            std::vector<std::uint64_t> val, scratch;
            for (const auto& l : c.letters())
                val.push_back(l == kTopLetter ? 0 : m.value(l).low_word());
            EXPECT_EQ(c.eval(small, val, scratch), sat_set(m, P(s)).low_word()) << s;
        }
    }
}

TEST(Box, Examples) {
    Model loop(Frame(1, {{0, 0, 0}}), {{"p", worlds(1, {0})}});
    EXPECT_TRUE(holds_box(loop, 0, P("p")));
    EXPECT_TRUE(holds(loop, 0, P("[]p")));
    Model empty(Frame(1), {});
    EXPECT_TRUE(holds_box(empty, 0, P("p")));
    EXPECT_TRUE(holds(empty, 0, P("[]p")));
}

TEST(Box, SRelationAndDesugaringAgree) {
    // all frames on two worlds, all valuations of p
    for (unsigned mask = 0; mask < 256; ++mask) {
        Frame f(2);
        for (unsigned bit = 0; bit < 8; ++bit)
            if (mask >> bit & 1) f.add(bit & 1, bit >> 2 & 1, bit >> 1 & 1);
        for (unsigned v = 0; v < 4; ++v) {
            Model m(f, {{"p", WorldSet::from_mask(2, v)}});
            for (World x = 0; x < 2; ++x) EXPECT_EQ(holds_box(m, x, P("p")), holds(m, x, P("[]p")));
        }
    }
}

TEST(Normality, BottomAndAdditivity) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const Model m = oracle::random_model(1 + i % 4, 0.3, {"p", "q", "r"}, rng);
        EXPECT_TRUE(sat_set(m, P("p o F")).empty());
        EXPECT_TRUE(sat_set(m, P("F o p")).empty());
        EXPECT_EQ(sat_set(m, P("(p | q) o r")), sat_set(m, P("p o r")) | sat_set(m, P("q o r")));
        EXPECT_EQ(sat_set(m, P("r o (p | q)")), sat_set(m, P("r o p")) | sat_set(m, P("r o q")));
    }
}

TEST(Validity, AssociativityAxiomOnAssociativeFrames) {
    const Formula ax = P("(p o q) o r <-> p o (q o r)");
    for (unsigned n = 1; n <= 2; ++n)
        for (const Frame& f : collect_frames(n, true)) EXPECT_EQ(frame_validity(f, ax, ExhaustiveStrategy{}).status, Validity::Valid);
}

TEST(Validity, AssociativityAxiomRefutedOnBadFrame) {
    const Formula ax = P("(p o q) o r <-> p o (q o r)");
    const auto v = frame_validity(Frame(2, {{0, 0, 1}}), ax, ExhaustiveStrategy{});
    ASSERT_EQ(v.status, Validity::Refuted);
    ASSERT_TRUE(v.model);
    EXPECT_FALSE(holds(*v.model, v.world, ax));
}

TEST(Validity, ExcludedMiddle) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i)
        EXPECT_EQ(frame_validity(oracle::random_frame(3, 0.3, rng), P("p | ~p"), ExhaustiveStrategy{}).status, Validity::Valid);
}

TEST(Validity, ExhaustiveMatchesOracleAndJobs) {
    std::mt19937_64 rng(31);
    const Formula f = P("[]p -> p o p");
    for (int i = 0; i < 60; ++i) {
        const Frame fr = oracle::random_frame(1 + i % 3, 0.3, rng);
        bool valid = true;
        for (unsigned v = 0; v < (1u << fr.size()) && valid; ++v) {
            Model m(fr, {{"p", WorldSet::from_mask(fr.size(), v)}});
            for (bool b : oracle::eval(m, f)) valid = valid && b;
        }
        const auto one = frame_validity(fr, f, ExhaustiveStrategy{}, 1);
        const auto four = frame_validity(fr, f, ExhaustiveStrategy{}, 4);
        EXPECT_EQ(one.status == Validity::Valid, valid);
        EXPECT_EQ(one.status, four.status);
        EXPECT_EQ(one.world, four.world);
        if (one.model) EXPECT_EQ(one.model->valuation, four.model->valuation);
    }
}

TEST(Validity, RandomStrategy) {
    const Frame bad(2, {{0, 0, 1}});
    const Formula ax = P("(p o q) o r <-> p o (q o r)");
    const auto a = frame_validity(bad, ax, RandomStrategy{5, 500}, 1);
    const auto b = frame_validity(bad, ax, RandomStrategy{5, 500}, 4);
    ASSERT_EQ(a.status, Validity::Refuted);
    EXPECT_EQ(a.model->valuation, b.model->valuation);
    EXPECT_EQ(a.valuations_checked, b.valuations_checked);
    EXPECT_EQ(frame_validity(bad, P("p | ~p"), RandomStrategy{5, 100}).status, Validity::Unknown);
}

TEST(Validity, TooManyBitsThrows) {
    EXPECT_THROW(frame_validity(Frame(9), P("p & q & r"), ExhaustiveStrategy{}), std::invalid_argument);
}

TEST(Semigroups, KnownCounts) {
    const std::size_t want[] = {1, 5, 24, 188, 1915};
    for (unsigned n = 1; n <= 5; ++n) EXPECT_EQ(semigroup_frames(n).size(), want[n - 1]) << n;
}

TEST(Semigroups, AreFunctionalAndAssociative) {
    for (const Frame& f : semigroup_frames(3)) {
        EXPECT_TRUE(oracle::associative(f));
        for (World y = 0; y < 3; ++y)
            for (World z = 0; z < 3; ++z) EXPECT_EQ(f.product(y, z).count(), 1u);
    }
}

TEST(Countermodel, BottomIsRefutedAtOneWorld) {
    const auto r = countermodel_search(P("F"), {});
    ASSERT_TRUE(r.hit);
    EXPECT_EQ(r.hit->model.frame.size(), 1u);
}

TEST(Countermodel, NoneForAssociativityAxiom) {
    CountermodelOptions opt;
    opt.max_worlds = 2;
    const auto r = countermodel_search(P("(p o q) o r <-> p o (q o r)"), opt);
    EXPECT_FALSE(r.hit);
    EXPECT_FALSE(r.budget_exhausted);
}

TEST(Countermodel, HitsAreGenuineAndJobIndependent) {
    const char* fs[] = {"[]p -> p", "p o q -> q o p", "p -> p o p", "[]p -> [][]p | q", "p @> (p o p)"};
    for (const char* s : fs) {
        CountermodelOptions opt;
        opt.max_worlds = 3;
        const auto a = countermodel_search(P(s), opt);
        opt.jobs = 4;
        const auto b = countermodel_search(P(s), opt);
        EXPECT_EQ(a.steps, b.steps) << s;
        EXPECT_EQ(a.frames_tried, b.frames_tried) << s;
        ASSERT_EQ(a.hit.has_value(), b.hit.has_value()) << s;
        if (!a.hit) continue;
        EXPECT_TRUE(oracle::associative(a.hit->model.frame));
        EXPECT_FALSE(oracle::eval(a.hit->model, P(s))[a.hit->world]) << s;
        EXPECT_EQ(write_model(a.hit->model), write_model(b.hit->model));
    }
}

TEST(Countermodel, BudgetIsHonoured) {
    CountermodelOptions opt;
    opt.budget = 50;
    const Formula f = P("(p o q) o r <-> p o (q o r)");
    const auto r = countermodel_search(f, opt);
    EXPECT_FALSE(r.hit);
    EXPECT_TRUE(r.budget_exhausted);
    EXPECT_EQ(r.steps, 50u);
    opt.jobs = 3;
    const auto r3 = countermodel_search(f, opt);
    EXPECT_EQ(r3.frames_tried, r.frames_tried);
}

TEST(Countermodel, SeedsKeepBlocks) {
    const auto a = countermodel_candidates(3, 0), b = countermodel_candidates(3, 9);
    ASSERT_EQ(a.size(), b.size());
    // the first block is the one-element semigroup in both orders
    EXPECT_EQ(a[0].triples(), b[0].triples());
}
