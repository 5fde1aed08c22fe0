#pragma once

// Reading a tiling off an associative model that refutes phi(w).
//
// Every step of the construction is checked as it is taken and recorded in an
// obligation log; a failed check raises ExtractionError.

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formula.hpp"
#include "frames.hpp"
#include "reduction.hpp"
#include "semantics.hpp"
#include "tiling.hpp"

namespace wangmod {

enum class ExtractionFailure { NotAssociative, PremiseFailure, NoWitness, ObligationFailed, NoTile, MultipleTiles };

inline const char* to_string(ExtractionFailure f) {
    switch (f) {
        case ExtractionFailure::NotAssociative: return "not-associative";
        case ExtractionFailure::PremiseFailure: return "premise-failure";
        case ExtractionFailure::NoWitness: return "no-witness";
        case ExtractionFailure::ObligationFailed: return "obligation-failed";
        case ExtractionFailure::NoTile: return "no-tile";
        case ExtractionFailure::MultipleTiles: return "multiple-tiles";
    }
    return "?";
}

class ExtractionError : public std::runtime_error {
public:
    /// For PremiseFailure, `a` is the axis item (1..7) and `b` the index; for
    /// NoTile and MultipleTiles they are the grid coordinates m, n.
    ExtractionError(ExtractionFailure kind, int a, int b, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind), a_(a), b_(b) {}

    ExtractionFailure kind() const noexcept { return kind_; }
    int item() const noexcept { return a_; }
    int index() const noexcept { return b_; }
    int m() const noexcept { return a_; }
    int n() const noexcept { return b_; }

private:
    ExtractionFailure kind_;
    int a_, b_;
};

struct Obligation {
    std::string claim;
    bool ok;
};

using ObligationLog = std::vector<Obligation>;

enum class WitnessKind { Forward, Backward };

/// Forward: from Rady and Rdxc, the least b with Raxb and Rbcy.
inline World assoc_forward(const Frame& f, World a, World d, World y, World x, World c) {
    if (!f.contains(a, d, y) || !f.contains(d, x, c))
        throw std::invalid_argument("assoc_forward: premises R a d y and R d x c do not hold");
    for (World b = 0; b < f.size(); ++b)
        if (f.contains(a, x, b) && f.contains(b, c, y)) return b;
    throw ExtractionError(ExtractionFailure::NoWitness, 0, 0, "no b with R a x b and R b c y");
}

/// Backward: from Raxb and Rbcy, the least d with Rady and Rdxc.
inline World assoc_backward(const Frame& f, World a, World x, World b, World c, World y) {
    if (!f.contains(a, x, b) || !f.contains(b, c, y))
        throw std::invalid_argument("assoc_backward: premises R a x b and R b c y do not hold");
    for (World d = 0; d < f.size(); ++d)
        if (f.contains(a, d, y) && f.contains(d, x, c)) return d;
    throw ExtractionError(ExtractionFailure::NoWitness, 0, 0, "no d with R a d y and R d x c");
}

struct Axes {
    World z = 0;
    std::vector<World> x, y;    // x[0..k], y[0..k]
    std::vector<World> xp, yp;  // xp[i], yp[i] for 1 <= i <= k; index 0 unused
    std::size_t k() const noexcept { return x.empty() ? 0 : x.size() - 1; }
};

/// p(m, n) for 1 <= m, n <= k.
struct GridPoints {
    std::size_t k = 0;
    std::map<std::pair<std::size_t, std::size_t>, World> p;
    World at(std::size_t m, std::size_t n) const { return p.at({m, n}); }
};

class Extractor {
public:
    Extractor(const Model& m, World z) : m_(m), z_(z), s_(s_relation(m.frame)) {
        if (z >= m.frame.size()) throw std::invalid_argument("Extractor: root world out of range");
        auto verdict = check_associative(m.frame);
        if (!verdict.associative()) throw ExtractionError(ExtractionFailure::NotAssociative, 0, 0, "frame is not associative");
        for (const char* l : {"x_e", "x_o", "y_e", "y_o", "x'", "y'"}) letter_[l] = m.value(l);
        for (char a : {'e', 'o'})
            for (char b : {'e', 'o'}) pair_[{a, b}] = sat_set(m, detail::parity_pair(a, b));
    }

    const ObligationLog& log() const noexcept { return log_; }
    const BinRel& s() const noexcept { return s_; }

    Axes extract_axes(std::size_t k) {
        const Frame& f = m_.frame;
        Axes ax;
        ax.z = z_;
        ax.xp.push_back(0);
        ax.yp.push_back(0);
        auto par = [](std::size_t i) { return i % 2 == 0 ? 'e' : 'o'; };

        auto base = least_pair([&](World a, World b) {
            return f.contains(z_, a, b) && letter_["x_e"].test(a) && letter_["y_e"].test(b);
        });
        if (!base) throw ExtractionError(ExtractionFailure::PremiseFailure, 1, 0, "root does not satisfy x_e o y_e");
        ax.x.push_back(base->first);
        ax.y.push_back(base->second);
        check(f.contains(z_, ax.x[0], ax.y[0]), "item 1: z R x0 y0");
        check_axis_point(ax, 0);

        for (std::size_t i = 0; i < k; ++i) {
            const std::string nx = std::string("x_") + par(i + 1), ny = std::string("y_") + par(i + 1);
            auto xs = least_pair([&](World a, World b) {
                return f.contains(ax.x[i], a, b) && letter_["x'"].test(a) && letter_[nx].test(b);
            });
            if (!xs)
                throw ExtractionError(ExtractionFailure::PremiseFailure, 2, static_cast<int>(i),
                                      "no x'" + std::to_string(i + 1) + ", x" + std::to_string(i + 1));
            auto ys = least_pair([&](World a, World b) {
                return f.contains(ax.y[i], a, b) && letter_[ny].test(a) && letter_["y'"].test(b);
            });
            if (!ys)
                throw ExtractionError(ExtractionFailure::PremiseFailure, 3, static_cast<int>(i),
                                      "no y" + std::to_string(i + 1) + ", y'" + std::to_string(i + 1));
            ax.xp.push_back(xs->first);
            ax.x.push_back(xs->second);
            ax.y.push_back(ys->first);
            ax.yp.push_back(ys->second);
            const std::string si = std::to_string(i), sn = std::to_string(i + 1);
            check(f.contains(ax.x[i], ax.xp[i + 1], ax.x[i + 1]), "item 2: x" + si + " R x'" + sn + " x" + sn);
            check(f.contains(ax.y[i], ax.y[i + 1], ax.yp[i + 1]), "item 3: y" + si + " R y" + sn + " y'" + sn);
            check(letter_["x'"].test(ax.xp[i + 1]) && letter_["y'"].test(ax.yp[i + 1]),
                  "item 4: x'" + sn + " |= x' and y'" + sn + " |= y'");
            premise(s_.contains(z_, ax.xp[i + 1]) && s_.contains(z_, ax.yp[i + 1]), 5, i + 1,
                    "item 5: z S x'" + sn + " and z S y'" + sn);
            check_axis_point(ax, i + 1);
        }
        return ax;
    }

    /// Staircase p11, p21, p22, p32, ... then the points above and below it.
    GridPoints extract_grid(const Axes& ax, std::size_t k) {
        if (ax.k() < k) throw std::invalid_argument("extract_grid: axes shorter than the grid");
        const Frame& f = m_.frame;
        GridPoints g;
        g.k = k;
        if (k == 0) return g;
        auto& p = g.p;

        const World u = assoc_backward(f, z_, ax.x[0], ax.y[0], ax.y[1], ax.yp[1]);
        check(f.contains(z_, u, ax.yp[1]) && f.contains(u, ax.x[0], ax.y[1]), "base: z R u y'1 and u R x0 y1");
        p[{1, 1}] = assoc_forward(f, u, ax.x[0], ax.y[1], ax.xp[1], ax.x[1]);
        check(f.contains(u, ax.xp[1], p[{1, 1}]), "base: u R x'1 p11");
        check(f.contains(p[{1, 1}], ax.x[1], ax.y[1]), "staircase: p11 R x1 y1");
        check(s_.contains(z_, p[{1, 1}]), "staircase: z S p11");

        for (std::size_t j = 1; j < k; ++j) {
            const World pjj = p[{j, j}];
            const World below = assoc_forward(f, pjj, ax.x[j], ax.y[j], ax.xp[j + 1], ax.x[j + 1]);
            p[{j + 1, j}] = below;
            const std::string a = std::to_string(j), b = std::to_string(j + 1);
            check(f.contains(pjj, ax.xp[j + 1], below), "staircase: p" + a + a + " R x'" + b + " p" + b + a);
            check(f.contains(below, ax.x[j + 1], ax.y[j]), "staircase: p" + b + a + " R x" + b + " y" + a);
            check(s_.contains(z_, below), "staircase: z S p" + b + a);
            const World diag = assoc_backward(f, below, ax.x[j + 1], ax.y[j], ax.y[j + 1], ax.yp[j + 1]);
            p[{j + 1, j + 1}] = diag;
            check(f.contains(below, diag, ax.yp[j + 1]), "staircase: p" + b + a + " R p" + b + b + " y'" + b);
            check(f.contains(diag, ax.x[j + 1], ax.y[j + 1]), "staircase: p" + b + b + " R x" + b + " y" + b);
            check(s_.contains(z_, diag), "staircase: z S p" + b + b);
        }

        for (std::size_t d = 1; d < k; ++d)
            for (std::size_t m = 1; m + d <= k; ++m) {
                const std::size_t n = m + d;
                p[{m, n}] = assoc_backward(f, p[{m, n - 1}], ax.xp[m + 1], p[{m + 1, n - 1}], p[{m + 1, n}], ax.yp[n]);
            }
        for (std::size_t d = 2; d < k; ++d)
            for (std::size_t n = 1; n + d <= k; ++n) {
                const std::size_t m = n + d;
                p[{m, n}] = assoc_forward(f, p[{m - 1, n}], p[{m - 1, n + 1}], ax.yp[n + 1], ax.xp[m], p[{m, n + 1}]);
            }

        for (std::size_t m = 1; m <= k; ++m)
            for (std::size_t n = 1; n <= k; ++n) {
                const std::string at = "p(" + std::to_string(m) + "," + std::to_string(n) + ")";
                check(s_.contains(z_, p[{m, n}]), "grid: z S " + at);
                if (m < k)
                    check(f.contains(p[{m, n}], ax.xp[m + 1], p[{m + 1, n}]),
                          "grid: " + at + " R x'" + std::to_string(m + 1) + " p(" + std::to_string(m + 1) + "," +
                              std::to_string(n) + ")");
                if (n < k)
                    check(f.contains(p[{m, n}], p[{m, n + 1}], ax.yp[n + 1]),
                          "grid: " + at + " R p(" + std::to_string(m) + "," + std::to_string(n + 1) + ") y'" +
                              std::to_string(n + 1));
            }
        return g;
    }

    /// Tile at p(m, n) goes to column m-1, row n-1.
    Grid read_tiling(const GridPoints& g, const TileSet& w) {
        std::vector<WorldSet> lit;
        for (std::size_t t = 0; t < w.size(); ++t) lit.push_back(sat_set(m_, tile_literal(w, t)));
        Grid out(g.k, g.k);
        for (std::size_t m = 1; m <= g.k; ++m)
            for (std::size_t n = 1; n <= g.k; ++n) {
                const World pt = g.at(m, n);
                const char a = m % 2 == 0 ? 'e' : 'o', b = n % 2 == 0 ? 'e' : 'o';
                bool parity = pair_[{a, b}].test(pt);
                for (const auto& [key, set] : pair_)
                    if (key != std::make_pair(a, b) && set.test(pt)) parity = false;
                const std::string at = "p(" + std::to_string(m) + "," + std::to_string(n) + ")";
                check(parity, "parity: " + at + " |= x_" + a + " o y_" + b + " and no other pair");
                std::optional<std::size_t> found;
                for (std::size_t t = 0; t < w.size(); ++t) {
                    if (!lit[t].test(pt)) continue;
                    if (found)
                        throw ExtractionError(ExtractionFailure::MultipleTiles, static_cast<int>(m), static_cast<int>(n),
                                              at + " satisfies more than one tile");
                    found = t;
                }
                if (!found)
                    throw ExtractionError(ExtractionFailure::NoTile, static_cast<int>(m), static_cast<int>(n),
                                          at + " satisfies no tile");
                out.set(m - 1, n - 1, static_cast<int>(*found));
            }
        auto verdict = verify_grid(w, out);
        check(verdict.ok(), "tiling: extracted grid passes verify_grid");
        return out;
    }

private:
    template <typename P>
    std::optional<std::pair<World, World>> least_pair(P pred) const {
        const World n = static_cast<World>(m_.frame.size());
        for (World a = 0; a < n; ++a)
            for (World b = 0; b < n; ++b)
                if (pred(a, b)) return std::make_pair(a, b);
        return std::nullopt;
    }

    void check_axis_point(const Axes& ax, std::size_t i) {
        const std::string si = std::to_string(i);
        premise(s_.contains(z_, ax.x[i]) && s_.contains(z_, ax.y[i]), 5, i, "item 5: z S x" + si + " and z S y" + si);
        const bool even = i % 2 == 0;
        const bool ok = even ? letter_["x_e"].test(ax.x[i]) && letter_["y_e"].test(ax.y[i])
                             : letter_["x_o"].test(ax.x[i]) && letter_["y_o"].test(ax.y[i]);
        premise(ok, even ? 6 : 7, i, std::string(even ? "item 6" : "item 7") + ": parity letters at x" + si + ", y" + si);
    }

    void check(bool ok, const std::string& claim) {
        log_.push_back({claim, ok});
        if (!ok) throw ExtractionError(ExtractionFailure::ObligationFailed, 0, 0, claim);
    }

    void premise(bool ok, int item, std::size_t index, const std::string& claim) {
        log_.push_back({claim, ok});
        if (!ok) throw ExtractionError(ExtractionFailure::PremiseFailure, item, static_cast<int>(index), claim);
    }

    const Model& m_;
    World z_;
    BinRel s_;
    std::map<std::string, WorldSet> letter_;
    std::map<std::pair<char, char>, WorldSet> pair_;
    ObligationLog log_;
};

struct Extraction {
    Axes axes;
    GridPoints points;
    Grid tiling{0, 0};
    ObligationLog log;
};

/// Axes, grid points and the k x k tiling read from (m, z).
inline Extraction extract_tiling(const Model& m, World z, const TileSet& w, std::size_t k) {
    Extractor ex(m, z);
    Extraction out;
    out.axes = ex.extract_axes(k);
    out.points = ex.extract_grid(out.axes, k);
    out.tiling = ex.read_tiling(out.points, w);
    out.log = ex.log();
    return out;
}

}  // namespace wangmod
