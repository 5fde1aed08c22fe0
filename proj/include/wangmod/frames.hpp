#pragma once

// Finite frames with a ternary accessibility relation.  Worlds are dense
// indices; the relation is stored operationally as y.z = {x | Rxyz}.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "formula.hpp"
#include "world_set.hpp"

namespace wangmod {

struct Triple {
    World x, y, z;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

class Frame {
public:
    explicit Frame(std::size_t size) : size_(size) {
        if (size == 0) throw std::invalid_argument("frame must have at least one world");
        products_.assign(size * size, WorldSet(size));
    }

    Frame(std::size_t size, const std::vector<Triple>& triples) : Frame(size) {
        for (const auto& t : triples) add(t.x, t.y, t.z);
    }

    std::size_t size() const noexcept { return size_; }

    void add(World x, World y, World z) {
        if (x >= size_ || y >= size_ || z >= size_) throw std::out_of_range("triple index out of range");
        products_[y * size_ + z].set(x);
    }

    bool contains(World x, World y, World z) const noexcept { return products_[y * size_ + z].test(x); }

    /// y.z, the worlds x with Rxyz.
    const WorldSet& product(World y, World z) const noexcept { return products_[y * size_ + z]; }

    /// Complex operation Y.Z.
    WorldSet image(const WorldSet& ys, const WorldSet& zs) const {
        WorldSet out(size_);
        if (ys.empty() || zs.empty()) return out;
        auto zm = zs.members();
        ys.for_each([&](World y) {
            for (World z : zm) out |= products_[y * size_ + z];
        });
        return out;
    }

    std::vector<Triple> triples() const {
        std::vector<Triple> out;
        for (World y = 0; y < size_; ++y)
            for (World z = 0; z < size_; ++z) product(y, z).for_each([&](World x) { out.push_back({x, y, z}); });
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t triple_count() const {
        std::size_t c = 0;
        for (const auto& p : products_) c += p.count();
        return c;
    }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    std::size_t size_;
    std::vector<WorldSet> products_;
};

/// Frame plus valuation.  Letters missing from the valuation denote the empty set.
struct Model {
    Frame frame;
    std::map<std::string, WorldSet> valuation;

    explicit Model(Frame f) : frame(std::move(f)) {}
    Model(Frame f, std::map<std::string, WorldSet> v) : frame(std::move(f)), valuation(std::move(v)) {}

    WorldSet value(const std::string& letter) const {
        if (auto it = valuation.find(letter); it != valuation.end()) return it->second;
        return WorldSet(frame.size());
    }
};

class BinRel {
public:
    explicit BinRel(std::size_t size) : size_(size), succ_(size, WorldSet(size)) {}

    std::size_t size() const noexcept { return size_; }
    void add(World x, World y) { succ_.at(x).set(y); }
    bool contains(World x, World y) const noexcept { return succ_[x].test(y); }
    const WorldSet& successors(World x) const noexcept { return succ_[x]; }

    std::vector<std::pair<World, World>> pairs() const {
        std::vector<std::pair<World, World>> out;
        for (World x = 0; x < size_; ++x) succ_[x].for_each([&](World y) { out.emplace_back(x, y); });
        return out;
    }

    bool is_transitive() const {
        for (World x = 0; x < size_; ++x) {
            bool ok = true;
            succ_[x].for_each([&](World y) {
                if (!succ_[y].subset_of(succ_[x])) ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }

    friend bool operator==(const BinRel&, const BinRel&) = default;

private:
    std::size_t size_;
    std::vector<WorldSet> succ_;
};

// ---------------------------------------------------------------------------
// Associativity.

enum class AssocDirection {
    LeftToRight,  // Rx(ab)c holds but Rxa(bc) fails
    RightToLeft,  // Rxa(bc) holds but Rx(ab)c fails
};

struct AssocCounterexample {
    World x, a, b, c;
    AssocDirection direction;
    friend bool operator==(const AssocCounterexample&, const AssocCounterexample&) = default;
};

struct AssocVerdict {
    std::optional<AssocCounterexample> counterexample;
    bool associative() const noexcept { return !counterexample.has_value(); }
};

/// Compares (a.b).c with a.(b.c) for all a, b, c.  The reported
/// counterexample is lexicographically least in (x, a, b, c).
inline AssocVerdict check_associative(const Frame& f) {
    const std::size_t n = f.size();
    std::optional<AssocCounterexample> best;
    for (World a = 0; a < n; ++a)
        for (World b = 0; b < n; ++b)
            for (World c = 0; c < n; ++c) {
                WorldSet single_c(n), single_a(n);
                single_c.set(c);
                single_a.set(a);
                WorldSet lhs = f.image(f.product(a, b), single_c);
                WorldSet rhs = f.image(single_a, f.product(b, c));
                if (lhs == rhs) continue;
                WorldSet only_l = lhs - rhs, only_r = rhs - lhs;
                World xl = only_l.first(), xr = only_r.first();
                World x = std::min(xl, xr);
                AssocCounterexample ce{x, a, b, c, xl <= xr ? AssocDirection::LeftToRight : AssocDirection::RightToLeft};
                auto key = [](const AssocCounterexample& e) { return std::array<World, 4>{e.x, e.a, e.b, e.c}; };
                if (!best || key(ce) < key(*best)) best = ce;
            }
    return {best};
}

/// xSy iff Rxay, or Rxya, or Rx(ay)b for some a, b.
inline BinRel s_relation(const Frame& f) {
    const std::size_t n = f.size();
    BinRel s(n);
    // third_of[z] = {y | exists a: Rzay}
    std::vector<WorldSet> third_of(n, WorldSet(n));
    for (World a = 0; a < n; ++a)
        for (World y = 0; y < n; ++y)
            f.product(a, y).for_each([&](World x) {
                third_of[x].set(y);
                s.add(x, y);
            });
    for (World y = 0; y < n; ++y)
        for (World a = 0; a < n; ++a) f.product(y, a).for_each([&](World x) { s.add(x, y); });
    for (World z = 0; z < n; ++z) {
        if (third_of[z].empty()) continue;
        for (World b = 0; b < n; ++b)
            f.product(z, b).for_each([&](World x) {
                third_of[z].for_each([&](World y) { s.add(x, y); });
            });
    }
    return s;
}

// ---------------------------------------------------------------------------
// Powerset and semilattice frames.

enum class PowersetMode { Union, DisjointUnion, UnionNonempty };

inline const char* to_string(PowersetMode m) {
    switch (m) {
        case PowersetMode::Union: return "union";
        case PowersetMode::DisjointUnion: return "disjoint";
        case PowersetMode::UnionNonempty: return "nonempty";
    }
    return "?";
}

inline PowersetMode parse_powerset_mode(const std::string& s) {
    if (s == "union") return PowersetMode::Union;
    if (s == "disjoint" || s == "disjoint_union") return PowersetMode::DisjointUnion;
    if (s == "nonempty" || s == "union_nonempty") return PowersetMode::UnionNonempty;
    throw std::invalid_argument("unknown powerset mode '" + s + "'");
}

/// Subset of {0..k-1} denoted by a world of a powerset frame.
inline std::uint32_t powerset_mask(PowersetMode mode, World w) {
    return mode == PowersetMode::UnionNonempty ? w + 1 : w;
}

inline World powerset_world(PowersetMode mode, std::uint32_t mask) {
    return mode == PowersetMode::UnionNonempty ? mask - 1 : mask;
}

namespace detail {

inline Frame build_powerset_frame(unsigned k, PowersetMode mode) {
    const std::uint32_t masks = 1u << k;
    const std::uint32_t lo = mode == PowersetMode::UnionNonempty ? 1 : 0;
    Frame f(masks - lo);
    for (std::uint32_t y = lo; y < masks; ++y)
        for (std::uint32_t z = lo; z < masks; ++z) {
            if (mode == PowersetMode::DisjointUnion && (y & z)) continue;
            f.add(powerset_world(mode, y | z), powerset_world(mode, y), powerset_world(mode, z));
        }
    return f;
}

}  // namespace detail

inline constexpr unsigned kMaxPowersetGround = 5;

/// Subsets of {0..k-1} under union (optionally disjoint, or without the empty set).
inline Frame powerset_frame(unsigned k, PowersetMode mode) {
    if (k > kMaxPowersetGround)
        throw std::invalid_argument("powerset_frame: ground set size " + std::to_string(k) + " exceeds " +
                                    std::to_string(kMaxPowersetGround));
    if (k == 0 && mode == PowersetMode::UnionNonempty)
        throw std::invalid_argument("powerset_frame: nonempty mode needs k >= 1");
    return detail::build_powerset_frame(k, mode);
}

enum class SemilatticeLaw { Commutativity, Associativity, Idempotence };

class LawViolation : public std::runtime_error {
public:
    LawViolation(SemilatticeLaw law, std::vector<World> where, const std::string& msg)
        : std::runtime_error(msg), law_(law), where_(std::move(where)) {}
    SemilatticeLaw law() const noexcept { return law_; }
    const std::vector<World>& where() const noexcept { return where_; }

private:
    SemilatticeLaw law_;
    std::vector<World> where_;
};

using JoinTable = std::vector<std::vector<World>>;

inline Frame semilattice_frame(const JoinTable& table) {
    const std::size_t k = table.size();
    if (k == 0) throw std::invalid_argument("semilattice table is empty");
    for (const auto& row : table) {
        if (row.size() != k) throw std::invalid_argument("semilattice table is not square");
        for (World v : row)
            if (v >= k) throw std::invalid_argument("semilattice table entry out of range");
    }
    auto at = [&](World i, World j) { return table[i][j]; };
    for (World i = 0; i < k; ++i)
        for (World j = i + 1; j < k; ++j)
            if (at(i, j) != at(j, i))
                throw LawViolation(SemilatticeLaw::Commutativity, {i, j},
                                   "not commutative: " + std::to_string(i) + "." + std::to_string(j) + "=" +
                                       std::to_string(at(i, j)) + " but " + std::to_string(j) + "." +
                                       std::to_string(i) + "=" + std::to_string(at(j, i)));
    for (World i = 0; i < k; ++i)
        for (World j = 0; j < k; ++j)
            for (World l = 0; l < k; ++l)
                if (at(at(i, j), l) != at(i, at(j, l)))
                    throw LawViolation(SemilatticeLaw::Associativity, {i, j, l},
                                       "not associative at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                           std::to_string(l) + ")");
    for (World i = 0; i < k; ++i)
        if (at(i, i) != i)
            throw LawViolation(SemilatticeLaw::Idempotence, {i}, "not idempotent at " + std::to_string(i));
    Frame f(k);
    for (World y = 0; y < k; ++y)
        for (World z = 0; z < k; ++z) f.add(at(y, z), y, z);
    return f;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration up to isomorphism.
//
// A frame on n <= 4 worlds is a mask of n^3 bits; bit ((y*n+z)*n+x) is Rxyz.
// A mask is emitted iff it is the least mask in its orbit under world
// permutations.

namespace detail {

class MaskCodec {
public:
    explicit MaskCodec(unsigned n) : n_(n), bits_(n * n * n) {
        std::vector<World> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            if (std::is_sorted(perm.begin(), perm.end())) continue;  // identity
            std::vector<std::array<std::uint64_t, 256>> table((bits_ + 7) / 8);
            for (unsigned chunk = 0; chunk < table.size(); ++chunk)
                for (unsigned byte = 0; byte < 256; ++byte) {
                    std::uint64_t img = 0;
                    for (unsigned b = 0; b < 8; ++b) {
                        unsigned bit = chunk * 8 + b;
                        if (bit >= bits_ || !((byte >> b) & 1)) continue;
                        unsigned x = bit % n, yz = bit / n, z = yz % n, y = yz / n;
                        unsigned nb = (perm[y] * n + perm[z]) * n + perm[x];
                        img |= std::uint64_t{1} << nb;
                    }
                    table[chunk][byte] = img;
                }
            tables_.push_back(std::move(table));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    unsigned bits() const noexcept { return bits_; }

    bool is_canonical(std::uint64_t mask) const noexcept {
        for (const auto& table : tables_) {
            std::uint64_t img = 0;
            for (unsigned chunk = 0; chunk < table.size(); ++chunk) img |= table[chunk][(mask >> (chunk * 8)) & 0xff];
            if (img < mask) return false;
        }
        return true;
    }

    bool is_associative(std::uint64_t mask) const noexcept {
        const unsigned n = n_;
        const std::uint64_t low = (std::uint64_t{1} << n) - 1;
        std::uint32_t p[16];
        for (unsigned i = 0; i < n * n; ++i) p[i] = static_cast<std::uint32_t>((mask >> (i * n)) & low);
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) {
                const std::uint32_t ab = p[a * n + b];
                for (unsigned c = 0; c < n; ++c) {
                    std::uint32_t lhs = 0, rhs = 0;
                    for (std::uint32_t m = ab; m; m &= m - 1) lhs |= p[std::countr_zero(m) * n + c];
                    for (std::uint32_t m = p[b * n + c]; m; m &= m - 1) rhs |= p[a * n + std::countr_zero(m)];
                    if (lhs != rhs) return false;
                }
            }
        return true;
    }

    Frame decode(std::uint64_t mask) const {
        Frame f(n_);
        for (std::uint64_t m = mask; m; m &= m - 1) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(m));
            unsigned x = bit % n_, yz = bit / n_;
            f.add(x, yz / n_, yz % n_);
        }
        return f;
    }

private:
    unsigned n_;
    unsigned bits_;
    std::vector<std::vector<std::array<std::uint64_t, 256>>> tables_;
};

}  // namespace detail

inline constexpr unsigned kMaxEnumerationWorlds = 4;

/// Lazy stream of frames on n worlds, one per isomorphism class, in
/// increasing mask order.  n = 4 has 2^64 masks and is only usable as a
/// prefix stream.
class FrameStream {
public:
    FrameStream(unsigned n, bool require_associative)
        : FrameStream(n, require_associative, 0, n == 0 ? 0 : last_mask(n)) {}

    /// Restricts the stream to masks in [first, last].
    FrameStream(unsigned n, bool require_associative, std::uint64_t first, std::uint64_t last)
        : codec_(check(n)), require_assoc_(require_associative), next_(first), last_(last), done_(first > last) {}

    std::optional<Frame> next() {
        while (!done_) {
            std::uint64_t m = next_;
            if (m == last_)
                done_ = true;
            else
                ++next_;
            if (require_assoc_ && !codec_.is_associative(m)) continue;
            if (!codec_.is_canonical(m)) continue;
            last_emitted_ = m;
            return codec_.decode(m);
        }
        return std::nullopt;
    }

    std::uint64_t last_emitted_mask() const noexcept { return last_emitted_; }

    static std::uint64_t last_mask(unsigned n) {
        unsigned bits = n * n * n;
        return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    }

private:
    static unsigned check(unsigned n) {
        if (n == 0 || n > kMaxEnumerationWorlds)
            throw std::invalid_argument("enumerate_frames: world count must be in 1.." +
                                        std::to_string(kMaxEnumerationWorlds));
        return n;
    }

    detail::MaskCodec codec_;
    bool require_assoc_;
    std::uint64_t next_;
    std::uint64_t last_;
    bool done_;
    std::uint64_t last_emitted_ = 0;
};

inline FrameStream enumerate_frames(unsigned n, bool require_associative) { return FrameStream(n, require_associative); }

/// Drains the stream with `jobs` workers over disjoint mask ranges; the
/// result order is independent of `jobs`.
inline std::vector<Frame> collect_frames(unsigned n, bool require_associative, unsigned jobs = 1) {
    const std::uint64_t last = FrameStream::last_mask(n);
    if (n * n * n >= 40) throw std::invalid_argument("collect_frames: too many worlds for exhaustive collection");
    jobs = std::max(1u, jobs);
    const std::uint64_t total = last + 1;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    std::vector<std::vector<Frame>> parts(jobs);
    std::vector<std::thread> pool;
    auto work = [&](unsigned j) {
        std::uint64_t first = j * chunk;
        if (first > last) return;
        std::uint64_t end = std::min(last, first + chunk - 1);
        FrameStream s(n, require_associative, first, end);
        while (auto f = s.next()) parts[j].push_back(std::move(*f));
    };
    if (jobs == 1) {
        work(0);
    } else {
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
    }
    std::vector<Frame> out;
    for (auto& p : parts)
        for (auto& f : p) out.push_back(std::move(f));
    return out;
}

// ---------------------------------------------------------------------------
// Text format:
//   worlds N
//   x y z              one triple per line
//   val p: w1 w2 ...   valuation
//   # comment

class FrameFormatError : public std::runtime_error {
public:
    FrameFormatError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline Model parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::optional<Frame> frame;
    std::map<std::string, WorldSet> val;
    auto world_of = [&](const std::string& tok) -> World {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (const std::exception&) {
            throw FrameFormatError(lineno, "expected a world index, got '" + tok + "'");
        }
        if (used != tok.size() || tok[0] == '-') throw FrameFormatError(lineno, "expected a world index, got '" + tok + "'");
        if (v >= frame->size()) throw FrameFormatError(lineno, "world " + tok + " out of range");
        return static_cast<World>(v);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "worlds") {
            if (frame) throw FrameFormatError(lineno, "duplicate 'worlds' line");
            long long n = 0;
            if (!(ls >> n) || n <= 0) throw FrameFormatError(lineno, "'worlds' needs a positive count");
            frame.emplace(static_cast<std::size_t>(n));
            continue;
        }
        if (!frame) throw FrameFormatError(lineno, "'worlds N' must come first");
        if (first == "val") {
            std::string rest;
            std::getline(ls, rest);
            auto colon = rest.find(':');
            if (colon == std::string::npos) throw FrameFormatError(lineno, "valuation line needs ':'");
            std::istringstream name_in(rest.substr(0, colon));
            std::string name, extra;
            if (!(name_in >> name) || (name_in >> extra) || !is_identifier(name) || is_reserved_word(name))
                throw FrameFormatError(lineno, "bad letter name in valuation line");
            WorldSet ws(frame->size());
            std::istringstream ws_in(rest.substr(colon + 1));
            std::string tok;
            while (ws_in >> tok) ws.set(world_of(tok));
            if (!val.emplace(name, ws).second) throw FrameFormatError(lineno, "duplicate valuation for '" + name + "'");
            continue;
        }
        std::string ys, zs, extra;
        if (!(ls >> ys >> zs) || (ls >> extra)) throw FrameFormatError(lineno, "triple line needs exactly three indices");
        frame->add(world_of(first), world_of(ys), world_of(zs));
    }
    if (!frame) throw FrameFormatError(lineno, "missing 'worlds N' line");
    return Model(std::move(*frame), std::move(val));
}

inline std::string write_model(const Model& m) {
    std::ostringstream os;
    os << "worlds " << m.frame.size() << '\n';
    for (const auto& t : m.frame.triples()) os << t.x << ' ' << t.y << ' ' << t.z << '\n';
    for (const auto& [name, ws] : m.valuation) {
        os << "val " << name << ':';
        ws.for_each([&](World w) { os << ' ' << w; });
        os << '\n';
    }
    return os.str();
}

}  // namespace wangmod
