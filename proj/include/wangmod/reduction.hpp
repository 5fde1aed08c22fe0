#pragma once

// The tile set to formula construction.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"
#include "tiling.hpp"

namespace wangmod {

inline const std::array<std::string, 6> kStructuralLetters = {"x_e", "x_o", "y_e", "y_o", "x'", "y'"};

struct LetterInventory {
    std::vector<std::string> tiles;
    std::array<std::string, 6> structural = kStructuralLetters;

    explicit LetterInventory(const TileSet& w) {
        for (const auto& t : w.tiles()) {
            for (const auto& s : structural)
                if (t.name == s) throw std::invalid_argument("tile name '" + t.name + "' clashes with a structural letter");
            tiles.push_back(t.name);
        }
    }
};

/// The tile letter conjoined with the negations of every other tile letter, in list order.
inline Formula tile_literal(const TileSet& w, std::size_t t) {
    std::vector<Formula> parts{Formula::letter(w[t].name)};
    for (std::size_t i = 0; i < w.size(); ++i)
        if (i != t) parts.push_back(Formula::neg(Formula::letter(w[i].name)));
    return conjunction(parts);
}

struct MatchFormulas {
    Formula right;
    Formula up;
};

/// Disjunctions of the literals of horizontally and vertically matching tiles; empty gives F.
inline MatchFormulas match_formulas(const TileSet& w, std::size_t t) {
    const MatchSets m = matches(w, t);
    std::vector<Formula> r, u;
    for (auto i : m.right) r.push_back(tile_literal(w, i));
    for (auto i : m.up) u.push_back(tile_literal(w, i));
    return {disjunction(r), disjunction(u)};
}

namespace detail {

inline Formula parity_pair(char a, char b) {
    return Formula::comp(Formula::letter(std::string("x_") + a), Formula::letter(std::string("y_") + b));
}

}  // namespace detail

/// Conjuncts of the body of phi(w): seed, four alphas, two betas, then the
/// horizontal and vertical gammas for the parity cases ee, eo, oe, oo.
inline std::vector<Formula> phi_conjuncts(const TileSet& w) {
    LetterInventory inventory(w);
    const Formula xp = Formula::letter("x'"), yp = Formula::letter("y'");
    auto L = [](const char* s) { return Formula::letter(s); };
    const std::array<std::array<char, 2>, 4> pairs = {{{'e', 'e'}, {'e', 'o'}, {'o', 'e'}, {'o', 'o'}}};
    auto flip = [](char c) { return c == 'e' ? 'o' : 'e'; };

    std::vector<Formula> literals, rights, ups;
    for (std::size_t t = 0; t < w.size(); ++t) {
        literals.push_back(tile_literal(w, t));
        auto m = match_formulas(w, t);
        rights.push_back(m.right);
        ups.push_back(m.up);
    }

    std::vector<Formula> out;
    out.push_back(detail::parity_pair('e', 'e'));
    out.push_back(Formula::box(Formula::implies(L("x_e"), Formula::comp(xp, L("x_o")))));
    out.push_back(Formula::box(Formula::implies(L("x_o"), Formula::comp(xp, L("x_e")))));
    out.push_back(Formula::box(Formula::implies(L("y_e"), Formula::comp(L("y_o"), yp))));
    out.push_back(Formula::box(Formula::implies(L("y_o"), Formula::comp(L("y_e"), yp))));

    std::vector<Formula> any_pair;
    for (auto [a, b] : pairs) any_pair.push_back(detail::parity_pair(a, b));
    out.push_back(Formula::box(Formula::implies(disjunction(any_pair), disjunction(literals))));

    std::vector<Formula> exclusive;
    for (auto [a, b] : pairs) {
        std::vector<Formula> others;
        for (auto [c, d] : pairs)
            if (c != a || d != b) others.push_back(Formula::neg(detail::parity_pair(c, d)));
        exclusive.push_back(Formula::implies(detail::parity_pair(a, b), conjunction(others)));
    }
    out.push_back(Formula::box(conjunction(exclusive)));

    for (auto [a, b] : pairs) {
        const Formula here = detail::parity_pair(a, b);
        std::vector<Formula> horiz, vert;
        for (std::size_t t = 0; t < w.size(); ++t) {
            const Formula pre = Formula::land(here, literals[t]);
            const Formula next_col = Formula::lor(here, Formula::land(detail::parity_pair(flip(a), b), rights[t]));
            const Formula next_row = Formula::lor(here, Formula::land(detail::parity_pair(a, flip(b)), ups[t]));
            horiz.push_back(Formula::implies(pre, Formula::hook_right(xp, next_col)));
            vert.push_back(Formula::implies(pre, Formula::hook_left(next_row, yp)));
        }
        out.push_back(Formula::box(conjunction(horiz)));
        out.push_back(Formula::box(conjunction(vert)));
    }
    return out;
}

inline constexpr std::size_t kPhiConjuncts = 15;

inline Formula phi_body(const TileSet& w) { return conjunction(phi_conjuncts(w)); }

inline Formula phi(const TileSet& w) { return Formula::neg(phi_body(w)); }

inline const std::array<const char*, kPhiConjuncts> kPhiConjunctNames = {
    "seed", "alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2", "gamma1h",
    "gamma1v", "gamma2h", "gamma2v", "gamma3h", "gamma3v", "gamma4h", "gamma4v"};

}  // namespace wangmod
