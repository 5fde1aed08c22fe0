#pragma once

// Bounded symbolic checking over (P(N), union) and its disjoint-union and
// nonempty variants.
//
// A state is a subset of N given side by side: the even part and the odd part
// are each either a finite set or a cofinite set (all numbers of that parity
// minus a finite removal).  Letters are interpreted by the valuation driven by
// a periodic tiling, and the conjuncts of the body of phi(w) are checked at N
// with boxes ranging over a bounded universe of states.

#include <algorithm>
#include <compare>
#include <functional>
#include <iterator>
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
#include "frames.hpp"
#include "reduction.hpp"
#include "tiling.hpp"

namespace wangmod {

using Nat = std::uint64_t;

/// One parity side: Fin(elems) or Cofin(elems removed).
struct Side {
    bool cofinite = false;
    std::vector<Nat> elems;  // sorted, unique

    static Side fin(std::vector<Nat> e) { return make(false, std::move(e)); }
    static Side cofin(std::vector<Nat> removed) { return make(true, std::move(removed)); }

    bool contains(Nat n) const { return std::binary_search(elems.begin(), elems.end(), n) != cofinite; }
    bool empty() const noexcept { return !cofinite && elems.empty(); }

    auto operator<=>(const Side&) const = default;

private:
    static Side make(bool c, std::vector<Nat> e) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        Side s;
        s.cofinite = c;
        s.elems = std::move(e);
        return s;
    }
};

namespace detail {

inline std::vector<Nat> set_union(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}
inline std::vector<Nat> set_inter(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}
inline std::vector<Nat> set_minus(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}
inline bool includes(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

inline Side side_union(const Side& a, const Side& b) {
    if (a.cofinite && b.cofinite) return Side::cofin(set_inter(a.elems, b.elems));
    if (a.cofinite) return Side::cofin(set_minus(a.elems, b.elems));
    if (b.cofinite) return Side::cofin(set_minus(b.elems, a.elems));
    return Side::fin(set_union(a.elems, b.elems));
}

inline bool side_overlap(const Side& a, const Side& b) {
    if (a.cofinite && b.cofinite) return true;
    if (a.cofinite) return !includes(a.elems, b.elems);
    if (b.cofinite) return !includes(b.elems, a.elems);
    return !set_inter(a.elems, b.elems).empty();
}

inline bool side_subset(const Side& a, const Side& b) {
    if (!a.cofinite && !b.cofinite) return includes(b.elems, a.elems);
    if (!a.cofinite) return set_inter(a.elems, b.elems).empty();  // b cofinite
    if (!b.cofinite) return false;
    return includes(a.elems, b.elems);
}

inline Side side_remove(const Side& s, Nat n) {
    return s.cofinite ? Side::cofin(set_union(s.elems, {n})) : Side::fin(set_minus(s.elems, {n}));
}

inline Side side_remove_all(const Side& s, const std::vector<Nat>& d) {
    return s.cofinite ? Side::cofin(set_union(s.elems, d)) : Side::fin(set_minus(s.elems, d));
}

inline void render_side(std::ostringstream& out, const Side& s, const char* all) {
    auto list = [&](const std::vector<Nat>& v) {
        out << '{';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
        out << '}';
    };
    if (s.cofinite) {
        out << all;
        if (!s.elems.empty()) {
            out << '-';
            list(s.elems);
        }
    } else {
        list(s.elems);
    }
}

}  // namespace detail

struct SymState {
    Side even, odd;

    static SymState make(Side even, Side odd) {
        for (Nat n : even.elems)
            if (n % 2) throw std::invalid_argument("SymState: odd number on the even side");
        for (Nat n : odd.elems)
            if (n % 2 == 0) throw std::invalid_argument("SymState: even number on the odd side");
        return SymState{std::move(even), std::move(odd)};
    }
    static SymState naturals() { return {Side::cofin({}), Side::cofin({})}; }
    static SymState evens() { return {Side::cofin({}), Side::fin({})}; }
    static SymState odds() { return {Side::fin({}), Side::cofin({})}; }
    static SymState empty_set() { return {Side::fin({}), Side::fin({})}; }
    static SymState singleton(Nat n) {
        return n % 2 ? SymState{Side::fin({}), Side::fin({n})} : SymState{Side::fin({n}), Side::fin({})};
    }

    const Side& side_of(Nat n) const { return n % 2 ? odd : even; }
    bool contains(Nat n) const { return side_of(n).contains(n); }
    bool empty() const noexcept { return even.empty() && odd.empty(); }
    std::size_t depth() const noexcept { return even.elems.size() + odd.elems.size(); }

    bool subset_of(const SymState& o) const {
        return detail::side_subset(even, o.even) && detail::side_subset(odd, o.odd);
    }

    SymState without(Nat n) const {
        return n % 2 ? SymState{even, detail::side_remove(odd, n)} : SymState{detail::side_remove(even, n), odd};
    }

    auto operator<=>(const SymState&) const = default;
};

inline std::string render(const SymState& s) {
    std::ostringstream out;
    out << "E=";
    detail::render_side(out, s.even, "2N");
    out << " O=";
    detail::render_side(out, s.odd, "2N+1");
    return out.str();
}

/// a union b; in disjoint mode nothing when the parts overlap.
inline std::optional<SymState> sym_union(const SymState& a, const SymState& b, PowersetMode mode) {
    if (mode == PowersetMode::DisjointUnion &&
        (detail::side_overlap(a.even, b.even) || detail::side_overlap(a.odd, b.odd)))
        return std::nullopt;
    return SymState{detail::side_union(a.even, b.even), detail::side_union(a.odd, b.odd)};
}

/// Tile lookup through a torus; the first coordinate counts removed evens,
/// the second removed odds.
class TauOracle {
public:
    struct Unchecked {};

    TauOracle(TileSet w, PeriodicTiling t) : w_(std::move(w)), t_(std::move(t)) {
        if (!verify_torus(w_, t_)) throw std::invalid_argument("TauOracle: torus adjacency fails");
    }
    TauOracle(TileSet w, PeriodicTiling t, Unchecked) : w_(std::move(w)), t_(std::move(t)) {}

    const TileSet& tiles() const noexcept { return w_; }
    const PeriodicTiling& torus() const noexcept { return t_; }
    std::size_t at(std::size_t i, std::size_t j) const { return static_cast<std::size_t>(t_.at(i, j)); }

private:
    TileSet w_;
    PeriodicTiling t_;
};

/// Truth of a letter at s under the tiling valuation; unknown letters are false.
inline bool eval_atom(const SymState& s, const std::string& letter, const TauOracle& tau) {
    const bool even_pure = s.even.cofinite && s.odd.empty();
    const bool odd_pure = s.odd.cofinite && s.even.empty();
    if (letter == "x_e") return even_pure && s.even.elems.size() % 2 == 0;
    if (letter == "x_o") return even_pure && s.even.elems.size() % 2 == 1;
    if (letter == "y_e") return odd_pure && s.odd.elems.size() % 2 == 0;
    if (letter == "y_o") return odd_pure && s.odd.elems.size() % 2 == 1;
    if (letter == "x'") return !s.even.cofinite && s.even.elems.size() == 1 && s.odd.empty();
    if (letter == "y'") return !s.odd.cofinite && s.odd.elems.size() == 1 && s.even.empty();
    if (auto idx = tau.tiles().index_of(letter)) {
        if (!s.even.cofinite || !s.odd.cofinite) return false;
        return tau.at(s.even.elems.size(), s.odd.elems.size()) == *idx;
    }
    return false;
}

inline constexpr std::size_t kMaxSymbolicDepth = 4;

namespace detail {

/// Peel candidates on one side: the members of a finite side, or for a
/// cofinite side the non-removed numbers up to two past the largest removal
/// (which includes one number beyond every removal).
inline std::vector<Nat> peel_candidates(const Side& s, Nat parity, std::size_t depth) {
    if (!s.cofinite) return s.elems;
    const Nat top = std::max<Nat>((s.elems.empty() ? parity : s.elems.back()) + 2, parity + 2 * static_cast<Nat>(depth));
    std::vector<Nat> out;
    for (Nat n = parity; n <= top; n += 2)
        if (!std::binary_search(s.elems.begin(), s.elems.end(), n)) out.push_back(n);
    return out;
}

inline void subsets_up_to(const std::vector<Nat>& pool, std::size_t max, std::vector<std::vector<Nat>>& out) {
    std::vector<Nat> cur;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (!cur.empty()) out.push_back(cur);
        if (cur.size() == max) return;
        for (std::size_t j = i; j < pool.size(); ++j) {
            cur.push_back(pool[j]);
            go(j + 1);
            cur.pop_back();
        }
    };
    go(0);
}

}  // namespace detail

/// Decomposition pairs (a, b) with a op b = s: (i) the even/odd split, (ii)
/// singleton peels, (iii) finite same-side removals of size at most `depth`.
/// Pairs are deduplicated and filtered by the mode.
inline std::vector<std::pair<SymState, SymState>> decompositions(const SymState& s, std::size_t depth, PowersetMode mode) {
    if (depth > kMaxSymbolicDepth)
        throw std::invalid_argument("decompositions: depth exceeds " + std::to_string(kMaxSymbolicDepth));
    std::vector<std::pair<SymState, SymState>> out;
    std::set<std::pair<SymState, SymState>> seen;
    const bool disjoint = mode == PowersetMode::DisjointUnion;
    auto emit = [&](SymState a, SymState b) {
        if (mode == PowersetMode::UnionNonempty && (a.empty() || b.empty())) return;
        auto joined = sym_union(a, b, mode);
        if (!joined || *joined != s) return;
        if (seen.emplace(a, b).second) out.emplace_back(std::move(a), std::move(b));
    };

    emit(SymState{s.even, Side::fin({})}, SymState{Side::fin({}), s.odd});

    for (Nat parity : {Nat{0}, Nat{1}}) {
        const Side& side = parity ? s.odd : s.even;
        for (Nat n : detail::peel_candidates(side, parity, depth)) {
            const SymState one = SymState::singleton(n), rest = s.without(n);
            emit(one, rest);
            emit(rest, one);
            if (!disjoint) {
                emit(one, s);
                emit(s, one);
            }
        }
    }

    for (Nat parity : {Nat{0}, Nat{1}}) {
        const Side& side = parity ? s.odd : s.even;
        std::vector<std::vector<Nat>> ds;
        detail::subsets_up_to(detail::peel_candidates(side, parity, depth), depth, ds);
        for (const auto& d : ds) {
            SymState rest = s;
            (parity ? rest.odd : rest.even) = detail::side_remove_all(side, d);
            if (disjoint) {
                SymState part = parity ? SymState{Side::fin({}), Side::fin(d)} : SymState{Side::fin(d), Side::fin({})};
                emit(part, rest);
                emit(rest, part);
            } else {
                emit(rest, s);
                emit(s, rest);
            }
        }
    }
    return out;
}

/// States with elements among the first `depth` numbers of each parity and
/// representation depth at most `depth`; the empty state is left out in
/// nonempty mode.
inline std::vector<SymState> symbolic_universe(std::size_t depth, PowersetMode mode) {
    std::vector<Nat> evens, odds;
    for (std::size_t i = 0; i < depth; ++i) {
        evens.push_back(2 * i);
        odds.push_back(2 * i + 1);
    }
    auto sides = [&](const std::vector<Nat>& pool) {
        std::vector<Side> out;
        for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
            std::vector<Nat> e;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (mask >> i & 1) e.push_back(pool[i]);
            out.push_back(Side::fin(e));
            out.push_back(Side::cofin(e));
        }
        return out;
    };
    std::vector<SymState> out;
    for (const auto& e : sides(evens))
        for (const auto& o : sides(odds)) {
            SymState s{e, o};
            if (s.depth() > depth) continue;
            if (mode == PowersetMode::UnionNonempty && s.empty()) continue;
            out.push_back(std::move(s));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Evaluates formulas at symbolic states.  Diamonds and hooks quantify over
/// decompositions(s, depth, mode); boxes over universe states below s.
class SymbolicEvaluator {
public:
    SymbolicEvaluator(const TauOracle& tau, std::size_t depth, PowersetMode mode)
        : tau_(tau), depth_(depth), mode_(mode), universe_(symbolic_universe(depth, mode)) {}

    const std::vector<SymState>& universe() const noexcept { return universe_; }

    bool eval(const SymState& s, const Formula& f) {
        auto key = std::make_pair(s, f.id());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool v = false;
        switch (f.op()) {
            case Connective::Letter: v = eval_atom(s, f.name(), tau_); break;
            case Connective::Top: v = true; break;
            case Connective::Bottom: v = false; break;
            case Connective::Neg: v = !eval(s, f.lhs()); break;
            case Connective::Or: v = eval(s, f.lhs()) || eval(s, f.rhs()); break;
            case Connective::And: v = eval(s, f.lhs()) && eval(s, f.rhs()); break;
            case Connective::Implies: v = !eval(s, f.lhs()) || eval(s, f.rhs()); break;
            case Connective::Iff: v = eval(s, f.lhs()) == eval(s, f.rhs()); break;
            case Connective::Comp:
                for (const auto& [a, b] : decomps(s))
                    if (eval(a, f.lhs()) && eval(b, f.rhs())) {
                        v = true;
                        break;
                    }
                break;
            case Connective::HookR:
                v = true;
                for (const auto& [a, b] : decomps(s))
                    if (eval(a, f.lhs()) && !eval(b, f.rhs())) {
                        v = false;
                        break;
                    }
                break;
            case Connective::HookL:
                v = true;
                for (const auto& [a, b] : decomps(s))
                    if (!eval(a, f.lhs()) && eval(b, f.rhs())) {
                        v = false;
                        break;
                    }
                break;
            case Connective::Box: v = !box_failure(s, f.lhs()).has_value(); break;
        }
        memo_.emplace(std::move(key), v);
        return v;
    }

    /// Least universe state below s where body fails.
    std::optional<SymState> box_failure(const SymState& s, const Formula& body) {
        for (const auto& u : universe_)
            if (u.subset_of(s) && !eval(u, body)) return u;
        return std::nullopt;
    }

private:
    const std::vector<std::pair<SymState, SymState>>& decomps(const SymState& s) {
        if (auto it = decomp_cache_.find(s); it != decomp_cache_.end()) return it->second;
        return decomp_cache_.emplace(s, decompositions(s, depth_, mode_)).first->second;
    }

    const TauOracle& tau_;
    std::size_t depth_;
    PowersetMode mode_;
    std::vector<SymState> universe_;
    std::map<std::pair<SymState, const FormulaNode*>, bool> memo_;
    std::map<SymState, std::vector<std::pair<SymState, SymState>>> decomp_cache_;
};

struct ConjunctResult {
    std::string name;
    bool pass = false;
    SymState state;  // N when passing; the failing state otherwise
    std::string justification;
};

struct RefutationReport {
    PowersetMode mode = PowersetMode::Union;
    std::size_t depth = 0;
    std::size_t universe_size = 0;
    std::vector<ConjunctResult> conjuncts;

    bool all_pass() const {
        return std::all_of(conjuncts.begin(), conjuncts.end(), [](const ConjunctResult& c) { return c.pass; });
    }

    static constexpr const char* kScope =
        "bounded check: boxes range over the depth-limited universe and diamonds over the listed "
        "decompositions; this is not a proof of refutation over all of P(N)";
};

namespace detail {

inline const char* conjunct_justification(std::size_t i) {
    if (i == 0) return "seed at N via the even/odd split";
    if (i <= 4) return "box over the universe; the antecedent holds only at one-sided cofinite states";
    if (i <= 6) return "box over the universe; x_a o y_b holds only where both sides are cofinite";
    return "box over the universe; the antecedent x_a o y_b & t holds only where both sides are cofinite";
}

}  // namespace detail

/// Checks every conjunct of the body of phi(w) at N.
inline RefutationReport check_refutation(const TauOracle& tau, std::size_t depth, PowersetMode mode) {
    if (depth > kMaxSymbolicDepth)
        throw std::invalid_argument("check_refutation: depth exceeds " + std::to_string(kMaxSymbolicDepth));
    SymbolicEvaluator ev(tau, depth, mode);
    RefutationReport rep;
    rep.mode = mode;
    rep.depth = depth;
    rep.universe_size = ev.universe().size();
    const SymState top = SymState::naturals();
    const auto parts = phi_conjuncts(tau.tiles());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        ConjunctResult r;
        r.name = kPhiConjunctNames[i];
        r.justification = detail::conjunct_justification(i);
        r.state = top;
        if (parts[i].op() == Connective::Box) {
            if (auto bad = ev.box_failure(top, parts[i].lhs()))
                r.state = *bad;
            else
                r.pass = true;
        } else {
            r.pass = ev.eval(top, parts[i]);
        }
        rep.conjuncts.push_back(std::move(r));
    }
    return rep;
}

}  // namespace wangmod
