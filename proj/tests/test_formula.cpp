#include <gtest/gtest.h>

#include <random>

#include "wangmod/formula.hpp"
#include "wangmod/reduction.hpp"

using namespace wangmod;

namespace {

Formula L(const char* p) { return Formula::letter(p); }

Formula random_formula(std::mt19937_64& rng, int depth) {
    static const char* names[] = {"p", "q", "r'", "x_e"};
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 12);
    switch (pick(rng)) {
        case 0:
        case 1: return L(names[rng() % 4]);
        case 2: return rng() % 2 ? Formula::top() : Formula::bottom();
        case 3: return Formula::neg(random_formula(rng, depth - 1));
        case 4: return Formula::box(random_formula(rng, depth - 1));
        case 5: return Formula::land(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 6: return Formula::lor(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 7: return Formula::comp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 8: return Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 9: return Formula::iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 10: return Formula::hook_right(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        default: return Formula::hook_left(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    }
}

}  // namespace

TEST(Parse, Composition) { EXPECT_EQ(parse_formula("p o q"), Formula::comp(L("p"), L("q"))); }

TEST(Parse, NegatedComposition) {
    EXPECT_EQ(parse_formula("~(x_e o y_e)"), Formula::neg(Formula::comp(L("x_e"), L("y_e"))));
}

TEST(Parse, AssociativityAxiom) {
    const Formula want = Formula::iff(Formula::comp(Formula::comp(L("p"), L("q")), L("r")),
                                      Formula::comp(L("p"), Formula::comp(L("q"), L("r"))));
    EXPECT_EQ(parse_formula("(p o q) o r <-> p o (q o r)"), want);
}

TEST(Parse, Precedence) {
    EXPECT_EQ(parse_formula("p o q & r"), Formula::land(Formula::comp(L("p"), L("q")), L("r")));
    EXPECT_EQ(parse_formula("p & q | r"), Formula::lor(Formula::land(L("p"), L("q")), L("r")));
    EXPECT_EQ(parse_formula("p -> q -> r"), Formula::implies(L("p"), Formula::implies(L("q"), L("r"))));
    EXPECT_EQ(parse_formula("~p o q"), Formula::comp(Formula::neg(L("p")), L("q")));
    EXPECT_EQ(parse_formula("[]p & q"), Formula::land(Formula::box(L("p")), L("q")));
    EXPECT_EQ(parse_formula("p @> q | r"), Formula::hook_right(L("p"), Formula::lor(L("q"), L("r"))));
    EXPECT_EQ(parse_formula("q <@ p"), Formula::hook_left(L("q"), L("p")));
    EXPECT_EQ(parse_formula("p o q o r"), Formula::comp(Formula::comp(L("p"), L("q")), L("r")));
}

TEST(Parse, Constants) {
    EXPECT_EQ(parse_formula("T"), Formula::top());
    EXPECT_EQ(parse_formula("F | p"), Formula::lor(Formula::bottom(), L("p")));
}

TEST(Parse, PrimesAndUnderscores) { EXPECT_EQ(parse_formula("x' o y_o"), Formula::comp(L("x'"), L("y_o"))); }

TEST(Parse, ErrorsCarryOffset) {
    try {
        parse_formula("p & ");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
    EXPECT_THROW(parse_formula("(p"), ParseError);
    EXPECT_THROW(parse_formula("p q"), ParseError);
    EXPECT_THROW(parse_formula("o"), ParseError);
    EXPECT_THROW(parse_formula("p $ q"), ParseError);
    EXPECT_THROW(parse_formula(""), ParseError);
}

TEST(Parse, DesugaredOutputReparses) {
    const Formula d = desugar(parse_formula("[]p"));
    EXPECT_EQ(parse_formula(render(d)), d);
}

TEST(Render, Basics) {
    EXPECT_EQ(render(Formula::comp(L("p"), L("q"))), "p o q");
    EXPECT_EQ(render(Formula::neg(L("p"))), "~p");
    EXPECT_EQ(render(Formula::hook_right(L("p"), L("q"))), "p @> q");
    EXPECT_EQ(render(Formula::comp(L("p"), Formula::comp(L("q"), L("r")))), "p o (q o r)");
}

TEST(RoundTrip, RandomFormulas) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Formula f = random_formula(rng, 5);
        EXPECT_EQ(parse_formula(render(f)), f) << render(f);
    }
}

TEST(Desugar, HookRight) {
    EXPECT_EQ(desugar(Formula::hook_right(L("p"), L("q"))), Formula::neg(Formula::comp(L("p"), Formula::neg(L("q")))));
}

TEST(Desugar, HookLeft) {
    EXPECT_EQ(desugar(Formula::hook_left(L("q"), L("p"))), Formula::neg(Formula::comp(Formula::neg(L("q")), L("p"))));
}

TEST(Desugar, LetterIsFixed) { EXPECT_EQ(desugar(L("p")), L("p")); }

TEST(Desugar, BoxExpandsToCore) {
    const Formula d = desugar(Formula::box(L("p")));
    EXPECT_TRUE(d.is_core());
    EXPECT_EQ(letters(d), (std::set<std::string>{"_top", "p"}));
    // (T @> p) & (p <@ T) & ((T @> p) <@ T) with T spelled out
    const Formula top = Formula::lor(L("_top"), Formula::neg(L("_top")));
    const Formula r = Formula::hook_right(top, L("p"));
    const Formula want = desugar(Formula::land(Formula::land(r, Formula::hook_left(L("p"), top)), Formula::hook_left(r, top)));
    EXPECT_EQ(d, want);
}

TEST(Desugar, CoreAndIdempotent) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Formula f = random_formula(rng, 5);
        const Formula d = desugar(f);
        EXPECT_TRUE(d.is_core()) << render(f);
        EXPECT_EQ(desugar(d), d) << render(f);
    }
}

TEST(Letters, Examples) {
    EXPECT_EQ(letters(parse_formula("p o q")), (std::set<std::string>{"p", "q"}));
    EXPECT_EQ(letters(parse_formula("~p | p")), (std::set<std::string>{"p"}));
    EXPECT_EQ(letters(parse_formula("[]p"), false), (std::set<std::string>{"p"}));
}

TEST(Letters, SingleTileFormula) {
    const TileSet w = parse_tiles("t1 0 0 0 0\n");
    EXPECT_EQ(letters(desugar(phi(w))),
              (std::set<std::string>{"_top", "t1", "x'", "x_e", "x_o", "y'", "y_e", "y_o"}));
}

TEST(Letters, DesugarAgreesOnReservedLetter) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Formula f = random_formula(rng, 4);
        EXPECT_EQ(letters(f), letters(desugar(f))) << render(f);
    }
}

TEST(Identifiers, Rules) {
    EXPECT_TRUE(is_identifier("x_e"));
    EXPECT_TRUE(is_identifier("y'"));
    EXPECT_FALSE(is_identifier(""));
    EXPECT_FALSE(is_identifier("a-b"));
    EXPECT_TRUE(is_reserved_word("o"));
}

TEST(Helpers, ConjunctionConventions) {
    EXPECT_EQ(conjunction({L("p")}), L("p"));
    EXPECT_EQ(conjunction({}), Formula::top());
    EXPECT_EQ(disjunction({}), Formula::bottom());
    EXPECT_EQ(flatten_and(parse_formula("p & q & (r & p')")).size(), 4u);
}
