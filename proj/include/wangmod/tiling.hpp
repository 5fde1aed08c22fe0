#pragma once

// Wang tiles, rectangle solving and periodic tilings.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formula.hpp"

namespace wangmod {

using Colour = std::uint64_t;

struct Tile {
    std::string name;
    Colour up = 0, down = 0, left = 0, right = 0;

    friend bool operator==(const Tile&, const Tile&) = default;
};

class TileSetError : public std::runtime_error {
public:
    TileSetError(std::size_t line, const std::string& msg)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class TileSet {
public:
    explicit TileSet(std::vector<Tile> tiles) : tiles_(std::move(tiles)) {
        if (tiles_.empty()) throw TileSetError(0, "empty tile set");
        std::set<std::string> seen;
        for (const auto& t : tiles_) {
            if (!is_identifier(t.name) || is_reserved_word(t.name) || t.name == kTopLetter)
                throw TileSetError(0, "invalid tile name '" + t.name + "'");
            if (!seen.insert(t.name).second) throw TileSetError(0, "duplicate tile name '" + t.name + "'");
        }
    }

    std::size_t size() const noexcept { return tiles_.size(); }
    const Tile& operator[](std::size_t i) const { return tiles_.at(i); }
    const std::vector<Tile>& tiles() const noexcept { return tiles_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < tiles_.size(); ++i)
            if (tiles_[i].name == name) return i;
        return std::nullopt;
    }

    friend bool operator==(const TileSet&, const TileSet&) = default;

private:
    std::vector<Tile> tiles_;
};

/// Format: one tile per line `name u d l r`; `#` starts a comment.
inline TileSet parse_tiles(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::vector<Tile> tiles;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> words;
        for (std::string w; ls >> w;) words.push_back(w);
        if (words.empty()) continue;
        if (words.size() != 5) throw TileSetError(lineno, "expected `name u d l r`");
        Tile t;
        t.name = words[0];
        Colour* slots[4] = {&t.up, &t.down, &t.left, &t.right};
        for (int i = 0; i < 4; ++i) {
            const std::string& w = words[i + 1];
            if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }))
                throw TileSetError(lineno, "colour '" + w + "' is not a natural number");
            try {
                *slots[i] = std::stoull(w);
            } catch (const std::out_of_range&) {
                throw TileSetError(lineno, "colour '" + w + "' out of range");
            }
        }
        tiles.push_back(std::move(t));
    }
    try {
        return TileSet(std::move(tiles));
    } catch (const TileSetError& e) {
        throw TileSetError(0, e.what());
    }
}

inline std::string write_tiles(const TileSet& w) {
    std::ostringstream out;
    for (const auto& t : w.tiles()) out << t.name << ' ' << t.up << ' ' << t.down << ' ' << t.left << ' ' << t.right << '\n';
    return out.str();
}

struct MatchSets {
    std::vector<std::size_t> right;  // t' with t.right == t'.left
    std::vector<std::size_t> up;     // t' with t.up == t'.down
};

inline MatchSets matches(const TileSet& w, std::size_t t) {
    const Tile& a = w[t];
    MatchSets m;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (a.right == w[i].left) m.right.push_back(i);
        if (a.up == w[i].down) m.up.push_back(i);
    }
    return m;
}

/// Rectangle of tile indices, column `col` from the left and row `row` from the bottom.
class Grid {
public:
    static constexpr int kEmpty = -1;

    Grid(std::size_t width, std::size_t height) : width_(width), height_(height), cells_(width * height, kEmpty) {}

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }

    int at(std::size_t col, std::size_t row) const { return cells_.at(row * width_ + col); }
    void set(std::size_t col, std::size_t row, int tile) { cells_.at(row * width_ + col) = tile; }

    bool complete() const noexcept {
        return std::none_of(cells_.begin(), cells_.end(), [](int c) { return c == kEmpty; });
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t width_, height_;
    std::vector<int> cells_;
};

enum class Edge { Horizontal, Vertical };

inline const char* to_string(Edge e) { return e == Edge::Horizontal ? "horizontal" : "vertical"; }

/// A mismatch at (col,row): Horizontal compares with (col+1,row), Vertical with (col,row+1).
struct Mismatch {
    std::size_t col, row;
    Edge edge;
    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct GridVerdict {
    std::optional<Mismatch> mismatch;
    bool ok() const noexcept { return !mismatch; }
};

/// First mismatch in row-major order from the bottom-left corner.
inline GridVerdict verify_grid(const TileSet& w, const Grid& g) {
    if (!g.complete()) throw std::invalid_argument("verify_grid: incomplete grid");
    for (std::size_t row = 0; row < g.height(); ++row)
        for (std::size_t col = 0; col < g.width(); ++col) {
            const std::size_t t = static_cast<std::size_t>(g.at(col, row));
            if (t >= w.size()) throw std::invalid_argument("verify_grid: tile index out of range");
            if (col + 1 < g.width() && w[t].right != w[g.at(col + 1, row)].left) return {Mismatch{col, row, Edge::Horizontal}};
            if (row + 1 < g.height() && w[t].up != w[g.at(col, row + 1)].down) return {Mismatch{col, row, Edge::Vertical}};
        }
    return {};
}

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultTilingBudget = 10'000'000;

namespace detail {

/// Backtracking fill; column-major, bottom-up, tile indices in list order.
/// With `wrap`, the last column/row must also match the first.
inline bool fill_grid(const TileSet& w, Grid& g, bool wrap, std::uint64_t& budget) {
    const std::size_t W = g.width(), H = g.height(), cells = W * H;
    const std::size_t n = w.size();
    // candidates[cell] are viable given already-filled left/below neighbours.
    std::vector<std::vector<std::size_t>> domain(cells);
    std::vector<std::size_t> choice(cells, 0);

    auto viable = [&](std::size_t col, std::size_t row, std::size_t t) {
        const Tile& a = w[t];
        if (col > 0 && w[g.at(col - 1, row)].right != a.left) return false;
        if (row > 0 && w[g.at(col, row - 1)].up != a.down) return false;
        if (wrap) {
            const Tile& first_in_row = col == 0 ? a : w[g.at(0, row)];
            const Tile& first_in_col = row == 0 ? a : w[g.at(col, 0)];
            if (col == W - 1 && first_in_row.left != a.right) return false;
            if (row == H - 1 && first_in_col.down != a.up) return false;
        }
        return true;
    };
    // Forward check: the next cell still has a candidate.
    auto has_successor = [&](std::size_t idx) {
        if (idx + 1 >= cells) return true;
        const std::size_t ncol = (idx + 1) / H, nrow = (idx + 1) % H;
        for (std::size_t t = 0; t < n; ++t)
            if (viable(ncol, nrow, t)) return true;
        return false;
    };

    std::size_t idx = 0;
    bool descending = true;
    while (true) {
        const std::size_t col = idx / H, row = idx % H;
        if (descending) {
            domain[idx].clear();
            for (std::size_t t = 0; t < n; ++t)
                if (viable(col, row, t)) domain[idx].push_back(t);
            choice[idx] = 0;
        }
        bool placed = false;
        while (choice[idx] < domain[idx].size()) {
            if (budget == 0) throw BudgetExceeded("tiling search exceeded its step budget");
            --budget;
            g.set(col, row, static_cast<int>(domain[idx][choice[idx]++]));
            if (has_successor(idx)) {
                placed = true;
                break;
            }
        }
        if (placed) {
            if (idx + 1 == cells) return true;
            ++idx;
            descending = true;
        } else {
            g.set(col, row, Grid::kEmpty);
            if (idx == 0) return false;
            --idx;
            descending = false;
        }
    }
}

}  // namespace detail

/// A w-tiling of the width x height rectangle, or nullopt when none exists.
/// Throws BudgetExceeded when the search runs out of steps.
inline std::optional<Grid> solve_rect(const TileSet& w, std::size_t width, std::size_t height,
                                      std::uint64_t budget = kDefaultTilingBudget) {
    if (width == 0 || height == 0) return Grid(width, height);
    Grid g(width, height);
    if (detail::fill_grid(w, g, false, budget)) return g;
    return std::nullopt;
}

struct PeriodicTiling {
    std::size_t p = 1, q = 1;  // horizontal and vertical periods
    Grid cells{1, 1};

    int at(std::size_t col, std::size_t row) const { return cells.at(col % p, row % q); }
};

/// Adjacency check including the wraparound column and row.
inline bool verify_torus(const TileSet& w, const PeriodicTiling& t) {
    for (std::size_t row = 0; row < t.q; ++row)
        for (std::size_t col = 0; col < t.p; ++col) {
            const Tile& a = w[t.at(col, row)];
            if (a.right != w[t.at(col + 1, row)].left) return false;
            if (a.up != w[t.at(col, row + 1)].down) return false;
        }
    return true;
}

inline Grid unroll(const PeriodicTiling& t, std::size_t width, std::size_t height) {
    Grid g(width, height);
    for (std::size_t row = 0; row < height; ++row)
        for (std::size_t col = 0; col < width; ++col) g.set(col, row, t.at(col, row));
    return g;
}

inline std::optional<PeriodicTiling> find_torus_with_period(const TileSet& w, std::size_t p, std::size_t q,
                                                            std::uint64_t& budget) {
    Grid g(p, q);
    if (!detail::fill_grid(w, g, true, budget)) return std::nullopt;
    return PeriodicTiling{p, q, std::move(g)};
}

inline constexpr std::size_t kMaxTorusPeriod = 4;

/// Smallest torus by area, then by horizontal period, with both periods at most max_period.
inline std::optional<PeriodicTiling> find_torus(const TileSet& w, std::size_t max_period,
                                                std::uint64_t budget = kDefaultTilingBudget) {
    if (max_period > kMaxTorusPeriod)
        throw std::invalid_argument("find_torus: max_period must be at most " + std::to_string(kMaxTorusPeriod));
    std::vector<std::pair<std::size_t, std::size_t>> periods;
    for (std::size_t p = 1; p <= max_period; ++p)
        for (std::size_t q = 1; q <= max_period; ++q) periods.emplace_back(p, q);
    std::stable_sort(periods.begin(), periods.end(),
                     [](auto a, auto b) { return a.first * a.second < b.first * b.second; });
    for (auto [p, q] : periods)
        if (auto t = find_torus_with_period(w, p, q, budget)) return t;
    return std::nullopt;
}

/// One character per cell (the tile name's initial), top row first.
inline std::string render_ascii(const TileSet& w, const Grid& g) {
    std::string out;
    for (std::size_t r = g.height(); r-- > 0;) {
        for (std::size_t c = 0; c < g.width(); ++c) {
            const int t = g.at(c, r);
            out += t == Grid::kEmpty ? '.' : w[t].name[0];
        }
        out += '\n';
    }
    return out;
}

/// Unit squares split into four edge triangles coloured by edge colour.
inline std::string render_svg(const TileSet& w, const Grid& g, int cell = 40) {
    auto hue = [](Colour c) { return static_cast<int>((c * 137) % 360); };
    std::ostringstream out;
    const std::size_t W = g.width(), H = g.height();
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W * cell << "\" height=\"" << H * cell
        << "\" viewBox=\"0 0 " << W * cell << ' ' << H * cell << "\">\n";
    for (std::size_t r = 0; r < H; ++r)
        for (std::size_t c = 0; c < W; ++c) {
            const int t = g.at(c, r);
            if (t == Grid::kEmpty) continue;
            const Tile& tile = w[t];
            const long x0 = static_cast<long>(c) * cell, y0 = static_cast<long>(H - 1 - r) * cell;
            const long x1 = x0 + cell, y1 = y0 + cell, mx = x0 + cell / 2, my = y0 + cell / 2;
            auto tri = [&](long ax, long ay, long bx, long by, Colour col) {
                out << "  <polygon points=\"" << ax << ',' << ay << ' ' << bx << ',' << by << ' ' << mx << ',' << my
                    << "\" fill=\"hsl(" << hue(col) << ",70%,60%)\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
            };
            tri(x0, y0, x1, y0, tile.up);
            tri(x0, y1, x1, y1, tile.down);
            tri(x0, y0, x0, y1, tile.left);
            tri(x1, y0, x1, y1, tile.right);
        }
    out << "</svg>\n";
    return out.str();
}

}  // namespace wangmod
