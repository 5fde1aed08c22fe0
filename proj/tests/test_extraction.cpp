#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wangmod/extraction.hpp"

using namespace wangmod;

namespace {

// A four-element semigroup model refuting the formula of the single tile at world 0.
const char* kCountermodel = R"(worlds 4
0 0 0
0 0 1
0 2 0
0 2 1
1 1 0
1 1 1
1 3 0
1 3 1
2 0 2
2 0 3
2 2 2
2 2 3
3 1 2
3 1 3
3 3 2
3 3 3
val t: 0 1 2 3
val x': 0 1 2 3
val x_e: 0 2
val x_o: 1 3
val y': 0 1 2 3
val y_e: 0 1
val y_o: 2 3
)";

TileSet single() { return parse_tiles("t 0 0 0 0\n"); }

/// Least b by brute force, or none.
std::optional<World> least(const Frame& f, std::function<bool(World)> pred) {
    for (World b = 0; b < f.size(); ++b)
        if (pred(b)) return b;
    return std::nullopt;
}

}  // namespace

TEST(Witness, OneWorldLoop) {
    const Frame f(1, {{0, 0, 0}});
    EXPECT_EQ(assoc_forward(f, 0, 0, 0, 0, 0), 0u);
    EXPECT_EQ(assoc_backward(f, 0, 0, 0, 0, 0), 0u);
}

TEST(Witness, PowersetUnion) {
    // a = {0,1}, d = {0}, y = {1}, x = {0}, c = {}: b = c u y = {1}
    const Frame f = powerset_frame(2, PowersetMode::Union);
    EXPECT_EQ(assoc_forward(f, 3, 1, 2, 1, 0), 2u);
    // backward from a = {0,1}, x = {0}, b = {1}, c = {}, y = {1}: d = x u c = {0}
    EXPECT_EQ(assoc_backward(f, 3, 1, 2, 0, 2), 1u);
}

TEST(Witness, PremisesChecked) {
    const Frame f = powerset_frame(1, PowersetMode::Union);
    EXPECT_THROW(assoc_forward(f, 0, 1, 1, 1, 1), std::invalid_argument);
    EXPECT_THROW(assoc_backward(f, 0, 1, 1, 1, 1), std::invalid_argument);
}

TEST(Witness, LeastAndAlwaysFoundOnAssociativeFrames) {
    std::vector<Frame> frames = semigroup_frames(3);
    for (const Frame& f : collect_frames(2, true)) frames.push_back(f);
    frames.push_back(powerset_frame(2, PowersetMode::DisjointUnion));
    for (const Frame& f : frames) {
        const World n = static_cast<World>(f.size());
        for (World a = 0; a < n; ++a)
            for (World d = 0; d < n; ++d)
                for (World y = 0; y < n; ++y)
                    for (World x = 0; x < n; ++x)
                        for (World c = 0; c < n; ++c) {
                            if (f.contains(a, d, y) && f.contains(d, x, c)) {
                                auto want = least(f, [&](World b) { return f.contains(a, x, b) && f.contains(b, c, y); });
                                ASSERT_TRUE(want);
                                EXPECT_EQ(assoc_forward(f, a, d, y, x, c), *want);
                            }
                            // same five names reused as (a, x, b, c, y)
                            const World b = d;
                            if (f.contains(a, y, b) && f.contains(b, x, c)) {
                                auto want = least(f, [&](World e) { return f.contains(a, e, c) && f.contains(e, y, x); });
                                ASSERT_TRUE(want);
                                EXPECT_EQ(assoc_backward(f, a, y, b, x, c), *want);
                            }
                        }
    }
}

TEST(Witness, NoWitnessOnNonAssociativeFrame) {
    const Frame f(2, {{0, 0, 1}});
    bool seen = false;
    for (World a = 0; a < 2; ++a)
        for (World d = 0; d < 2; ++d)
            for (World y = 0; y < 2; ++y)
                for (World x = 0; x < 2; ++x)
                    for (World c = 0; c < 2; ++c) {
                        if (!f.contains(a, d, y) || !f.contains(d, x, c)) continue;
                        try {
                            assoc_forward(f, a, d, y, x, c);
                        } catch (const ExtractionError& e) {
                            EXPECT_EQ(e.kind(), ExtractionFailure::NoWitness);
                            seen = true;
                        }
                    }
    EXPECT_TRUE(seen);
}

TEST(Extractor, RejectsNonAssociative) {
    const Model m(Frame(2, {{0, 0, 1}}));
    try {
        Extractor ex(m, 0);
        FAIL();
    } catch (const ExtractionError& e) {
        EXPECT_EQ(e.kind(), ExtractionFailure::NotAssociative);
    }
}

TEST(Extractor, MissingSeedIsItemOne) {
    const Model m(Frame(1, {{0, 0, 0}}));
    Extractor ex(m, 0);
    try {
        ex.extract_axes(1);
        FAIL();
    } catch (const ExtractionError& e) {
        EXPECT_EQ(e.kind(), ExtractionFailure::PremiseFailure);
        EXPECT_EQ(e.item(), 1);
    }
}

TEST(Extractor, CountermodelRefutesTheFormula) {
    const Model m = parse_model(kCountermodel);
    EXPECT_TRUE(oracle::associative(m.frame));
    EXPECT_FALSE(holds(m, 0, phi(single())));
}

TEST(Extractor, ZeroStepsGivesBasePoints) {
    const Model m = parse_model(kCountermodel);
    Extractor ex(m, 0);
    const Axes ax = ex.extract_axes(0);
    EXPECT_EQ(ax.k(), 0u);
    EXPECT_TRUE(m.frame.contains(0, ax.x[0], ax.y[0]));
}

TEST(Extractor, StaircaseAndFill) {
    const Model m = parse_model(kCountermodel);
    const BinRel s = s_relation(m.frame);
    for (std::size_t k = 1; k <= 4; ++k) {
        Extractor ex(m, 0);
        const Axes ax = ex.extract_axes(k);
        const GridPoints g = ex.extract_grid(ax, k);
        for (std::size_t j = 1; j <= k; ++j) EXPECT_TRUE(m.frame.contains(g.at(j, j), ax.x[j], ax.y[j]));
        for (std::size_t j = 1; j < k; ++j) EXPECT_TRUE(m.frame.contains(g.at(j + 1, j), ax.x[j + 1], ax.y[j]));
        EXPECT_TRUE(s.contains(0, g.at(1, 1)));
        EXPECT_TRUE(holds(m, g.at(1, 1), parse_formula("x_o o y_o")));
        if (k >= 2)
            EXPECT_EQ(g.at(1, 2), assoc_backward(m.frame, g.at(1, 1), ax.xp[2], g.at(2, 1), g.at(2, 2), ax.yp[2]));
        for (const auto& o : ex.log()) EXPECT_TRUE(o.ok) << o.claim;
    }
}

TEST(Extractor, TilingVerifies) {
    const Model m = parse_model(kCountermodel);
    for (std::size_t k = 1; k <= 4; ++k) {
        const Extraction e = extract_tiling(m, 0, single(), k);
        EXPECT_EQ(e.tiling.width(), k);
        EXPECT_TRUE(verify_grid(single(), e.tiling).ok());
        EXPECT_FALSE(e.log.empty());
        bool parity_checked = false;
        for (const auto& o : e.log) {
            EXPECT_TRUE(o.ok) << o.claim;
            parity_checked = parity_checked || o.claim.rfind("parity", 0) == 0;
        }
        EXPECT_TRUE(parity_checked);
    }
}

TEST(Extractor, MissingTileIsReported) {
    Model m = parse_model(kCountermodel);
    m.valuation.erase("t");
    try {
        extract_tiling(m, 0, single(), 1);
        FAIL();
    } catch (const ExtractionError& e) {
        EXPECT_EQ(e.kind(), ExtractionFailure::NoTile);
        EXPECT_EQ(e.m(), 1);
        EXPECT_EQ(e.n(), 1);
    }
}

TEST(Extractor, ContradictoryLettersGiveNoTile) {
    Model m = parse_model(kCountermodel);
    m.valuation.emplace("u", WorldSet::full(4));
    m.valuation["t"] = WorldSet::full(4);
    // with two tiles the literals are t & ~u and u & ~t, so both letters everywhere means no tile
    const TileSet w = parse_tiles("t 0 0 0 0\nu 0 0 0 0\n");
    try {
        extract_tiling(m, 0, w, 1);
        FAIL();
    } catch (const ExtractionError& e) {
        EXPECT_EQ(e.kind(), ExtractionFailure::NoTile);
    }
}
