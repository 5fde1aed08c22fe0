#pragma once

// Independent reference implementations used only by the tests.  They are
// deliberately naive: plain loops over the relation, no bitsets.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wangmod/wangmod.hpp"

namespace oracle {

using wangmod::Connective;
using wangmod::Formula;
using wangmod::Frame;
using wangmod::Model;
using wangmod::World;

/// (ab)c = a(bc) as a statement about all x: Rx(ab)c iff Rxa(bc).
inline bool associative(const Frame& f) {
    const World n = static_cast<World>(f.size());
    for (World x = 0; x < n; ++x)
        for (World a = 0; a < n; ++a)
            for (World b = 0; b < n; ++b)
                for (World c = 0; c < n; ++c) {
                    bool left = false, right = false;
                    for (World y = 0; y < n; ++y) {
                        left = left || (f.contains(y, a, b) && f.contains(x, y, c));
                        right = right || (f.contains(y, b, c) && f.contains(x, a, y));
                    }
                    if (left != right) return false;
                }
    return true;
}

/// S[x][y] straight from the three defining clauses.
inline std::vector<std::vector<bool>> s_relation(const Frame& f) {
    const World n = static_cast<World>(f.size());
    std::vector<std::vector<bool>> s(n, std::vector<bool>(n, false));
    for (World x = 0; x < n; ++x)
        for (World y = 0; y < n; ++y)
            for (World a = 0; a < n && !s[x][y]; ++a) {
                if (f.contains(x, a, y) || f.contains(x, y, a)) s[x][y] = true;
                for (World b = 0; b < n && !s[x][y]; ++b)
                    for (World z = 0; z < n && !s[x][y]; ++z)
                        if (f.contains(x, z, b) && f.contains(z, a, y)) s[x][y] = true;
            }
    return s;
}

inline bool transitive(const std::vector<std::vector<bool>>& s) {
    const std::size_t n = s.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (s[x][y] && s[y][z] && !s[x][z]) return false;
    return true;
}

/// Truth at every world by the universal clauses for the hooks and S for the
/// box, without desugaring.
inline std::vector<bool> eval(const Model& m, const Formula& f) {
    const World n = static_cast<World>(m.frame.size());
    std::vector<bool> out(n, false);
    switch (f.op()) {
        case Connective::Letter: {
            auto v = m.value(f.name());
            for (World x = 0; x < n; ++x) out[x] = v.test(x);
            return out;
        }
        case Connective::Top: return std::vector<bool>(n, true);
        case Connective::Bottom: return out;
        case Connective::Neg: {
            auto a = oracle::eval(m, f.lhs());
            for (World x = 0; x < n; ++x) out[x] = !a[x];
            return out;
        }
        case Connective::Box: {
            auto a = oracle::eval(m, f.lhs());
            auto s = oracle::s_relation(m.frame);
            for (World x = 0; x < n; ++x) {
                out[x] = true;
                for (World y = 0; y < n; ++y)
                    if (s[x][y] && !a[y]) out[x] = false;
            }
            return out;
        }
        default: break;
    }
    auto a = oracle::eval(m, f.lhs()), b = oracle::eval(m, f.rhs());
    for (World x = 0; x < n; ++x) {
        switch (f.op()) {
            case Connective::And: out[x] = a[x] && b[x]; break;
            case Connective::Or: out[x] = a[x] || b[x]; break;
            case Connective::Implies: out[x] = !a[x] || b[x]; break;
            case Connective::Iff: out[x] = a[x] == b[x]; break;
            case Connective::Comp:
                for (World y = 0; y < n; ++y)
                    for (World z = 0; z < n; ++z)
                        if (m.frame.contains(x, y, z) && a[y] && b[z]) out[x] = true;
                break;
            case Connective::HookR:
                out[x] = true;
                for (World y = 0; y < n; ++y)
                    for (World z = 0; z < n; ++z)
                        if (m.frame.contains(x, y, z) && a[y] && !b[z]) out[x] = false;
                break;
            case Connective::HookL:
                // lhs is the consequent on the left component, rhs the antecedent on the right
                out[x] = true;
                for (World y = 0; y < n; ++y)
                    for (World z = 0; z < n; ++z)
                        if (m.frame.contains(x, y, z) && b[z] && !a[y]) out[x] = false;
                break;
            default: break;
        }
    }
    return out;
}

inline std::vector<bool> to_bools(const wangmod::WorldSet& s) {
    std::vector<bool> out(s.size());
    for (World x = 0; x < s.size(); ++x) out[x] = s.test(x);
    return out;
}

/// Plain row-major DFS with full neighbour checks, no forward checking.
inline bool rect_tileable(const wangmod::TileSet& w, std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) return true;
    std::vector<std::size_t> cells(width * height);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == cells.size()) return true;
        const std::size_t col = i % width, row = i / width;
        for (std::size_t t = 0; t < w.size(); ++t) {
            if (col > 0 && w[cells[i - 1]].right != w[t].left) continue;
            if (row > 0 && w[cells[i - width]].up != w[t].down) continue;
            cells[i] = t;
            if (go(i + 1)) return true;
        }
        return false;
    };
    return go(0);
}

inline Frame random_frame(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    Frame f(n);
    for (World x = 0; x < n; ++x)
        for (World y = 0; y < n; ++y)
            for (World z = 0; z < n; ++z)
                if (coin(rng)) f.add(x, y, z);
    return f;
}

inline Model random_model(std::size_t n, double density, const std::vector<std::string>& letters, std::mt19937_64& rng) {
    Model m(random_frame(n, density, rng));
    std::bernoulli_distribution coin(0.5);
    for (const auto& p : letters) {
        wangmod::WorldSet v(n);
        for (World x = 0; x < n; ++x)
            if (coin(rng)) v.set(x);
        m.valuation.emplace(p, v);
    }
    return m;
}

/// Every team formula with exactly `size` nodes over the given letters.
inline std::vector<wangmod::TeamFormula> team_formulas_of_size(std::size_t size, const std::vector<std::string>& letters) {
    using wangmod::TeamFormula;
    static std::map<std::pair<std::size_t, std::vector<std::string>>, std::vector<TeamFormula>> memo;
    auto key = std::make_pair(size, letters);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<TeamFormula> out;
    if (size == 1) {
        for (const auto& p : letters) out.push_back(TeamFormula::letter(p));
    } else if (size >= 2) {
        for (const auto& f : team_formulas_of_size(size - 1, letters)) out.push_back(TeamFormula::bool_neg(f));
        for (std::size_t l = 1; l + 1 < size; ++l)
            for (const auto& a : team_formulas_of_size(l, letters))
                for (const auto& b : team_formulas_of_size(size - 1 - l, letters)) {
                    out.push_back(TeamFormula::land(a, b));
                    out.push_back(TeamFormula::split_or(a, b));
                    out.push_back(TeamFormula::global_or(a, b));
                }
    }
    memo.emplace(key, out);
    return out;
}

inline std::vector<wangmod::TeamFormula> team_formulas_up_to(std::size_t size, const std::vector<std::string>& letters) {
    std::vector<wangmod::TeamFormula> out;
    for (std::size_t n = 1; n <= size; ++n)
        for (auto& f : team_formulas_of_size(n, letters)) out.push_back(f);
    return out;
}

}  // namespace oracle
