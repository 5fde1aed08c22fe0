#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wangmod/team_logic.hpp"

using namespace wangmod;

namespace {

TeamFormula T(const char* s) { return parse_team_formula(s); }

/// Rows are indexed by bit i = value of inventory[i].
Team team(std::vector<std::string> inv, std::initializer_list<unsigned> rows) {
    Team t{std::move(inv), 0};
    for (unsigned r : rows) t.members |= std::uint64_t{1} << r;
    return t;
}

}  // namespace

TEST(Parse, GrammarAndRender) {
    EXPECT_EQ(T("p | q"), TeamFormula::split_or(TeamFormula::letter("p"), TeamFormula::letter("q")));
    EXPECT_EQ(T("p \\|/ q | r"), TeamFormula::global_or(TeamFormula::letter("p"),
                                                        TeamFormula::split_or(TeamFormula::letter("q"), TeamFormula::letter("r"))));
    EXPECT_EQ(T("~~p & q"), TeamFormula::land(TeamFormula::bool_neg(TeamFormula::letter("p")), TeamFormula::letter("q")));
    for (const auto& f : oracle::team_formulas_up_to(5, {"p", "q"})) EXPECT_EQ(T(render(f).c_str()), f) << render(f);
}

TEST(Parse, Errors) {
    EXPECT_ANY_THROW(T("p |"));
    EXPECT_ANY_THROW(T("(p"));
    EXPECT_ANY_THROW(T("~p"));
    EXPECT_ANY_THROW(T(""));
}

TEST(TeamSat, Examples) {
    EXPECT_TRUE(team_sat(team({"p"}, {}), T("p")));
    const Team mixed = team({"p"}, {1, 0});
    EXPECT_FALSE(team_sat(mixed, T("p")));
    EXPECT_TRUE(team_sat(mixed, T("p | ~~p")));
    for (const auto& f : oracle::team_formulas_up_to(4, {"p"}))
        for (std::uint64_t m = 0; m < 4; ++m) {
            const Team t{{"p"}, m};
            EXPECT_EQ(team_sat(t, TeamFormula::bool_neg(f)), !team_sat(t, f));
        }
}

TEST(Decide, Examples) {
    EXPECT_TRUE(ptl_decide(T("p \\|/ ~~p")).valid);
    const auto v = ptl_decide(T("p"));
    ASSERT_FALSE(v.valid);
    EXPECT_EQ(v.counterteam->members, 1u);  // the single row with p false
}

TEST(Decide, SplitExcludedMiddleFailsOnTheEmptyTeam) {
    // Every subteam of the empty team satisfies p, so ~~p holds on none of them.
    const auto v = ptl_decide(T("p | ~~p"));
    ASSERT_FALSE(v.valid);
    EXPECT_EQ(v.counterteam->members, 0u);
    for (std::uint64_t m = 1; m < 4; ++m) EXPECT_EQ(team_sat(Team{{"p"}, m}, T("p | ~~p")), (m & 1) != 0);  // needs a row with p false
}

TEST(Decide, AgreesWithDirectEvaluation) {
    const std::vector<std::string> inv{"p", "q"};
    for (const auto& f : oracle::team_formulas_up_to(5, inv)) {
        const auto sat = ptl_sat_teams(inv, f);
        bool all = true;
        for (std::uint64_t t = 0; t < 16; ++t) {
            const bool direct = detail::team_sat_mask(inv, t, f);
            EXPECT_EQ(sat[t], direct) << render(f) << " team " << t;
            all = all && direct;
        }
        const auto v = ptl_decide(f);
        EXPECT_EQ(v.valid, all) << render(f);
        if (!v.valid) EXPECT_FALSE(team_sat(*v.counterteam, f));
    }
}

TEST(Decide, LetterLimit) { EXPECT_THROW(ptl_decide(T("a & b & c & d & e")), std::invalid_argument); }

TEST(Translate, Examples) {
    EXPECT_EQ(translate(T("p | q")), parse_formula("p o q"));
    EXPECT_EQ(translate(T("p \\|/ ~~q")), parse_formula("p | ~q"));
    EXPECT_FALSE(translate_back(parse_formula("[]p")));
    for (const auto& f : oracle::team_formulas_up_to(5, {"p", "q"})) EXPECT_EQ(*translate_back(translate(f)), f);
}

TEST(Kripke, OneLetterShape) {
    const auto k = to_kripke(T("p"));
    EXPECT_EQ(k.model.frame.size(), 4u);
    EXPECT_EQ(k.model.value("p").count(), 2u);
    // principal ideal: downward closed with a top
    std::uint64_t top = 0;
    k.model.value("p").for_each([&](World w) { top |= w; });
    for (World w = 0; w < 4; ++w) EXPECT_EQ(k.model.value("p").test(w), (w & ~top) == 0);
}

TEST(Kripke, EquivalenceBothDirections) {
    for (const auto& f : oracle::team_formulas_up_to(5, {"p", "q"})) {
        const auto k = to_kripke(f);
        const WorldSet sat = sat_set(k.model, k.formula);
        for (World t = 0; t < k.model.frame.size(); ++t)
            EXPECT_EQ(sat.test(t), team_sat(Team{k.inventory, t}, f)) << render(f) << " at " << t;
    }
}

TEST(FromKripke, TwoPointExample) {
    Model m(powerset_frame(2, PowersetMode::Union));
    WorldSet v(4);
    v.set(0);
    v.set(1);  // P({0})
    m.valuation.emplace("p", v);
    const auto out = from_kripke(m, 2, oracle::team_formulas_up_to(5, {"p"}));
    EXPECT_EQ(out.row_of, (std::vector<std::uint64_t>{1, 0}));
    EXPECT_TRUE(out.report.ok()) << (out.report.failures.empty() ? "" : out.report.failures[0]);
}

TEST(FromKripke, IdentityValuation) {
    Model m(powerset_frame(2, PowersetMode::Union));
    m.valuation.emplace("p", WorldSet::full(4));
    const auto out = from_kripke(m, 2);
    EXPECT_EQ(out.row_of, (std::vector<std::uint64_t>{1, 1}));
    EXPECT_TRUE(out.report.ok());
}

TEST(FromKripke, RejectsNonPrincipal) {
    Model m(powerset_frame(2, PowersetMode::Union));
    WorldSet v(4);
    v.set(1);
    v.set(2);  // {{0},{1}} misses the empty set and {0,1}
    m.valuation.emplace("p", v);
    EXPECT_THROW(from_kripke(m, 2), NonPrincipalValuation);
}

TEST(FromKripke, ForthFailsOnAForeignFrame) {
    Model m(Frame(4, {{3, 1, 1}}));
    m.valuation.emplace("p", WorldSet::full(4));
    WorldSet q(4);
    q.set(0);
    q.set(1);
    m.valuation.emplace("q", q);
    const auto out = from_kripke(m, 2);
    EXPECT_FALSE(out.report.forth);
    EXPECT_FALSE(out.report.back);
}

TEST(PrincipalValidity, MatchesTeamValidity) {
    for (const auto& f : oracle::team_formulas_up_to(5, {"p"})) EXPECT_EQ(principal_validity(f, 2), ptl_decide(f).valid) << render(f);
}
