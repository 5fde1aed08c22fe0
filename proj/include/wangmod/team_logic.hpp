#pragma once

// Propositional team logic: syntax, team semantics, a decision procedure and
// the correspondence with powerset frames under principal valuations.
//
// A team over letters p0..p(k-1) is a bitmask over the 2^k rows; row r gives
// letter i the value of bit i of r.

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "formula.hpp"
#include "frames.hpp"
#include "semantics.hpp"

namespace wangmod {

enum class TeamOp { Letter, And, SplitOr, GlobalOr, BoolNeg };

struct TeamNode;

class TeamFormula {
public:
    TeamFormula() = default;

    static TeamFormula letter(std::string name) {
        if (!is_identifier(name) || is_reserved_word(name)) throw std::invalid_argument("invalid letter '" + name + "'");
        return make(TeamOp::Letter, std::move(name), {}, {});
    }
    static TeamFormula land(TeamFormula a, TeamFormula b) { return make(TeamOp::And, {}, std::move(a), std::move(b)); }
    static TeamFormula split_or(TeamFormula a, TeamFormula b) {
        return make(TeamOp::SplitOr, {}, std::move(a), std::move(b));
    }
    static TeamFormula global_or(TeamFormula a, TeamFormula b) {
        return make(TeamOp::GlobalOr, {}, std::move(a), std::move(b));
    }
    static TeamFormula bool_neg(TeamFormula a) { return make(TeamOp::BoolNeg, {}, std::move(a), {}); }

    TeamOp op() const noexcept;
    const std::string& name() const noexcept;
    const TeamFormula& lhs() const noexcept;
    const TeamFormula& rhs() const noexcept;
    bool valid() const noexcept { return node_ != nullptr; }

    friend bool operator==(const TeamFormula& a, const TeamFormula& b);

private:
    static TeamFormula make(TeamOp op, std::string name, TeamFormula l, TeamFormula r);
    std::shared_ptr<const TeamNode> node_;
};

struct TeamNode {
    TeamOp op;
    std::string name;
    TeamFormula lhs, rhs;
};

inline TeamFormula TeamFormula::make(TeamOp op, std::string name, TeamFormula l, TeamFormula r) {
    TeamFormula f;
    f.node_ = std::make_shared<const TeamNode>(TeamNode{op, std::move(name), std::move(l), std::move(r)});
    return f;
}

inline TeamOp TeamFormula::op() const noexcept { return node_->op; }
inline const std::string& TeamFormula::name() const noexcept { return node_->name; }
inline const TeamFormula& TeamFormula::lhs() const noexcept { return node_->lhs; }
inline const TeamFormula& TeamFormula::rhs() const noexcept { return node_->rhs; }

inline bool operator==(const TeamFormula& a, const TeamFormula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_ || a.op() != b.op() || a.name() != b.name()) return false;
    if (a.op() == TeamOp::Letter) return true;
    if (!(a.lhs() == b.lhs())) return false;
    return a.op() == TeamOp::BoolNeg || a.rhs() == b.rhs();
}

inline std::set<std::string> letters(const TeamFormula& f) {
    std::set<std::string> out;
    if (f.op() == TeamOp::Letter) {
        out.insert(f.name());
        return out;
    }
    out = letters(f.lhs());
    if (f.op() != TeamOp::BoolNeg) out.merge(letters(f.rhs()));
    return out;
}

inline std::size_t node_count(const TeamFormula& f) {
    if (f.op() == TeamOp::Letter) return 1;
    if (f.op() == TeamOp::BoolNeg) return 1 + node_count(f.lhs());
    return 1 + node_count(f.lhs()) + node_count(f.rhs());
}

// ---------------------------------------------------------------------------
// Concrete syntax: `\|/` global or (loosest), `|` split or, `&`, prefix `~~`.
// The binary connectives associate to the left.

namespace detail {

class TeamParser {
public:
    explicit TeamParser(std::string_view s) : s_(s) {}

    TeamFormula parse() {
        TeamFormula f = global();
        skip();
        if (pos_ != s_.size()) fail({"\\|/", "|", "&", ")", "end of input"});
        return f;
    }

private:
    void skip() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
    }
    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(std::set<std::string> expected) {
        skip();
        std::string found = pos_ < s_.size() ? std::string(1, s_[pos_]) : "end of input";
        throw ParseError(pos_, std::move(expected), found);
    }

    TeamFormula global() {
        TeamFormula f = split();
        while (eat("\\|/")) f = TeamFormula::global_or(f, split());
        return f;
    }
    TeamFormula split() {
        TeamFormula f = conj();
        while (true) {
            skip();
            if (s_.substr(pos_, 1) != "|") break;
            ++pos_;
            f = TeamFormula::split_or(f, conj());
        }
        return f;
    }
    TeamFormula conj() {
        TeamFormula f = unary();
        while (eat("&")) f = TeamFormula::land(f, unary());
        return f;
    }
    TeamFormula unary() {
        if (eat("~~")) return TeamFormula::bool_neg(unary());
        skip();
        if (eat("(")) {
            TeamFormula f = global();
            if (!eat(")")) fail({")", "\\|/", "|", "&"});
            return f;
        }
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
            ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name.empty() || !is_identifier(name) || is_reserved_word(name)) {
            pos_ = start;
            fail({"letter", "(", "~~"});
        }
        return TeamFormula::letter(name);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

inline int team_precedence(TeamOp op) {
    switch (op) {
        case TeamOp::GlobalOr: return 1;
        case TeamOp::SplitOr: return 2;
        case TeamOp::And: return 3;
        case TeamOp::BoolNeg: return 4;
        case TeamOp::Letter: return 5;
    }
    return 0;
}

inline void render_team_into(std::string& out, const TeamFormula& f) {
    auto sub = [&](const TeamFormula& g, int min_prec) {
        bool paren = team_precedence(g.op()) < min_prec;
        if (paren) out += '(';
        render_team_into(out, g);
        if (paren) out += ')';
    };
    switch (f.op()) {
        case TeamOp::Letter: out += f.name(); return;
        case TeamOp::BoolNeg:
            out += "~~";
            sub(f.lhs(), team_precedence(TeamOp::BoolNeg));
            return;
        default: {
            const int p = team_precedence(f.op());
            sub(f.lhs(), p);
            out += f.op() == TeamOp::And ? " & " : f.op() == TeamOp::SplitOr ? " | " : " \\|/ ";
            sub(f.rhs(), p + 1);
        }
    }
}

}  // namespace detail

inline TeamFormula parse_team_formula(std::string_view text) { return detail::TeamParser(text).parse(); }

inline std::string render(const TeamFormula& f) {
    std::string out;
    detail::render_team_into(out, f);
    return out;
}

// ---------------------------------------------------------------------------
// Teams.

inline constexpr std::size_t kMaxTeamLetters = 6;  // 64 rows fit one mask

struct Team {
    std::vector<std::string> inventory;
    std::uint64_t members = 0;

    std::size_t rows() const noexcept { return std::size_t{1} << inventory.size(); }
    int letter_index(const std::string& p) const {
        auto it = std::find(inventory.begin(), inventory.end(), p);
        return it == inventory.end() ? -1 : static_cast<int>(it - inventory.begin());
    }
};

namespace detail {

inline std::uint64_t rows_with(std::size_t k, int letter) {
    std::uint64_t m = 0;
    for (std::size_t r = 0; r < (std::size_t{1} << k); ++r)
        if (r >> letter & 1) m |= std::uint64_t{1} << r;
    return m;
}

inline bool team_sat_mask(const std::vector<std::string>& inv, std::uint64_t t, const TeamFormula& f) {
    switch (f.op()) {
        case TeamOp::Letter: {
            auto it = std::find(inv.begin(), inv.end(), f.name());
            if (it == inv.end()) throw std::invalid_argument("team_sat: letter '" + f.name() + "' not in the inventory");
            return (t & ~rows_with(inv.size(), static_cast<int>(it - inv.begin()))) == 0;
        }
        case TeamOp::BoolNeg: return !team_sat_mask(inv, t, f.lhs());
        case TeamOp::And: return team_sat_mask(inv, t, f.lhs()) && team_sat_mask(inv, t, f.rhs());
        case TeamOp::GlobalOr: return team_sat_mask(inv, t, f.lhs()) || team_sat_mask(inv, t, f.rhs());
        case TeamOp::SplitOr: {
            // Each member goes left only, right only, or both.
            std::vector<int> where;
            std::vector<unsigned> bits;
            for (std::uint64_t m = t; m; m &= m - 1) bits.push_back(static_cast<unsigned>(std::countr_zero(m)));
            where.assign(bits.size(), 0);
            while (true) {
                std::uint64_t l = 0, r = 0;
                for (std::size_t i = 0; i < bits.size(); ++i) {
                    if (where[i] != 1) l |= std::uint64_t{1} << bits[i];
                    if (where[i] != 0) r |= std::uint64_t{1} << bits[i];
                }
                if (team_sat_mask(inv, l, f.lhs()) && team_sat_mask(inv, r, f.rhs())) return true;
                std::size_t i = 0;
                while (i < where.size() && where[i] == 2) where[i++] = 0;
                if (i == where.size()) return false;
                ++where[i];
            }
        }
    }
    return false;
}

}  // namespace detail

/// Direct recursive evaluation; split disjunction tries all 3^|t| covers.
inline bool team_sat(const Team& t, const TeamFormula& f) { return detail::team_sat_mask(t.inventory, t.members, f); }

/// Teams in canonical order: by cardinality, then by mask.
inline std::vector<std::uint64_t> canonical_teams(std::size_t rows) {
    std::vector<std::uint64_t> out;
    const std::uint64_t count = std::uint64_t{1} << rows;
    for (std::uint64_t t = 0; t < count; ++t) out.push_back(t);
    std::stable_sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    return out;
}

inline constexpr std::size_t kMaxDecideLetters = 4;

struct PtlVerdict {
    bool valid = false;
    std::optional<Team> counterteam;  // first failing team in canonical order
};

/// Satisfying teams of f as a bit vector indexed by team mask, over the given
/// inventory (at most 4 letters).  Split disjunction is the union product of
/// the two operand sets, computed with subset-sum transforms.
inline std::vector<bool> ptl_sat_teams(const std::vector<std::string>& inv, const TeamFormula& f) {
    if (inv.size() > kMaxDecideLetters)
        throw std::invalid_argument("ptl: at most " + std::to_string(kMaxDecideLetters) + " letters");
    const std::size_t rows = std::size_t{1} << inv.size();
    const std::size_t teams = std::size_t{1} << rows;
    std::function<std::vector<bool>(const TeamFormula&)> go = [&](const TeamFormula& g) {
        std::vector<bool> out(teams);
        switch (g.op()) {
            case TeamOp::Letter: {
                auto it = std::find(inv.begin(), inv.end(), g.name());
                if (it == inv.end()) throw std::invalid_argument("ptl: letter '" + g.name() + "' not in the inventory");
                const std::uint64_t bad = ~detail::rows_with(inv.size(), static_cast<int>(it - inv.begin()));
                for (std::size_t t = 0; t < teams; ++t) out[t] = (t & bad) == 0;
                break;
            }
            case TeamOp::BoolNeg: {
                auto a = go(g.lhs());
                for (std::size_t t = 0; t < teams; ++t) out[t] = !a[t];
                break;
            }
            case TeamOp::And:
            case TeamOp::GlobalOr: {
                auto a = go(g.lhs()), b = go(g.rhs());
                for (std::size_t t = 0; t < teams; ++t) out[t] = g.op() == TeamOp::And ? a[t] && b[t] : a[t] || b[t];
                break;
            }
            case TeamOp::SplitOr: {
                auto a = go(g.lhs()), b = go(g.rhs());
                std::vector<std::int64_t> fa(teams), fb(teams);
                for (std::size_t t = 0; t < teams; ++t) {
                    fa[t] = a[t];
                    fb[t] = b[t];
                }
                for (std::size_t bit = 0; bit < rows; ++bit)
                    for (std::size_t t = 0; t < teams; ++t)
                        if (t >> bit & 1) {
                            fa[t] += fa[t ^ (std::size_t{1} << bit)];
                            fb[t] += fb[t ^ (std::size_t{1} << bit)];
                        }
                for (std::size_t t = 0; t < teams; ++t) fa[t] *= fb[t];
                for (std::size_t bit = 0; bit < rows; ++bit)
                    for (std::size_t t = 0; t < teams; ++t)
                        if (t >> bit & 1) fa[t] -= fa[t ^ (std::size_t{1} << bit)];
                for (std::size_t t = 0; t < teams; ++t) out[t] = fa[t] > 0;
                break;
            }
        }
        return out;
    };
    return go(f);
}

/// Validity over all teams on the letters of f.
inline PtlVerdict ptl_decide(const TeamFormula& f) {
    const auto ls = letters(f);
    std::vector<std::string> inv(ls.begin(), ls.end());
    const auto sat = ptl_sat_teams(inv, f);
    for (std::uint64_t t : canonical_teams(std::size_t{1} << inv.size()))
        if (!sat[t]) return {false, Team{inv, t}};
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Kripke side.

/// Split or becomes the diamond, global or becomes or, Boolean negation becomes negation.
inline Formula translate(const TeamFormula& f) {
    switch (f.op()) {
        case TeamOp::Letter: return Formula::letter(f.name());
        case TeamOp::And: return Formula::land(translate(f.lhs()), translate(f.rhs()));
        case TeamOp::SplitOr: return Formula::comp(translate(f.lhs()), translate(f.rhs()));
        case TeamOp::GlobalOr: return Formula::lor(translate(f.lhs()), translate(f.rhs()));
        case TeamOp::BoolNeg: return Formula::neg(translate(f.lhs()));
    }
    throw std::logic_error("translate: bad node");
}

inline std::optional<TeamFormula> translate_back(const Formula& g) {
    switch (g.op()) {
        case Connective::Letter: return TeamFormula::letter(g.name());
        case Connective::Neg: {
            auto a = translate_back(g.lhs());
            if (!a) return std::nullopt;
            return TeamFormula::bool_neg(*a);
        }
        case Connective::And:
        case Connective::Or:
        case Connective::Comp: {
            auto a = translate_back(g.lhs()), b = translate_back(g.rhs());
            if (!a || !b) return std::nullopt;
            if (g.op() == Connective::And) return TeamFormula::land(*a, *b);
            if (g.op() == Connective::Or) return TeamFormula::global_or(*a, *b);
            return TeamFormula::split_or(*a, *b);
        }
        default: return std::nullopt;
    }
}

inline constexpr std::size_t kMaxKripkeLetters = 3;

/// World w of the model is the team with mask w over the inventory's rows.
struct KripkeImage {
    std::vector<std::string> inventory;
    Model model;
    Formula formula;
};

/// (P(X), union) over all valuations X of the letters of f, with V(p) = P({v : v(p) = 1}).
inline KripkeImage to_kripke(const TeamFormula& f) {
    const auto ls = letters(f);
    std::vector<std::string> inv(ls.begin(), ls.end());
    if (inv.size() > kMaxKripkeLetters)
        throw std::invalid_argument("to_kripke: at most " + std::to_string(kMaxKripkeLetters) + " letters");
    const unsigned rows = 1u << inv.size();
    Model m(detail::build_powerset_frame(rows, PowersetMode::Union));
    for (std::size_t i = 0; i < inv.size(); ++i) {
        const std::uint64_t ok = detail::rows_with(inv.size(), static_cast<int>(i));
        WorldSet v(m.frame.size());
        for (World t = 0; t < m.frame.size(); ++t)
            if ((t & ~ok) == 0) v.set(t);
        m.valuation.emplace(inv[i], std::move(v));
    }
    return {inv, std::move(m), translate(f)};
}

class NonPrincipalValuation : public std::runtime_error {
public:
    explicit NonPrincipalValuation(const std::string& letter)
        : std::runtime_error("valuation of '" + letter + "' is not of the form P(Y)"), letter_(letter) {}
    const std::string& letter() const noexcept { return letter_; }

private:
    std::string letter_;
};

struct PMorphismReport {
    bool atoms = true;        // t in V(p) iff image(t) satisfies p
    bool forth = true;        // t = a u b implies image(t) = image(a) u image(b)
    bool back = true;         // image(t) = u u w lifts to some t = a u b
    bool equivalence = true;  // satisfaction agrees on the supplied formulas
    std::vector<std::string> failures;

    bool ok() const noexcept { return atoms && forth && back && equivalence; }

    static constexpr const char* kConditions =
        "atoms: t in V(p) iff image(t) |= p; forth: R t a b implies image(t) = image(a) u image(b); "
        "back: image(t) = u u w implies t = a u b with image(a) = u and image(b) = w";
};

struct TeamsFromKripke {
    std::vector<std::string> inventory;
    std::vector<std::uint64_t> row_of;  // x -> row index of v_x
    PMorphismReport report;

    /// Team {v_x | x in t} as a mask over rows.
    std::uint64_t image(std::uint64_t t) const {
        std::uint64_t out = 0;
        for (std::uint64_t m = t; m; m &= m - 1) out |= std::uint64_t{1} << row_of[std::countr_zero(m)];
        return out;
    }
};

/// v_x(p) = 1 iff {x} in V(p), for a model on powerset_frame(k, union).
inline TeamsFromKripke from_kripke(const Model& m, unsigned k, const std::vector<TeamFormula>& formulas = {}) {
    if (m.frame.size() != (std::size_t{1} << k)) throw std::invalid_argument("from_kripke: model is not on P(X) with |X| = k");
    std::vector<std::string> inv;
    for (const auto& [p, _] : m.valuation)
        if (p != kTopLetter) inv.push_back(p);
    for (const auto& g : formulas)
        for (const auto& p : letters(g))
            if (std::find(inv.begin(), inv.end(), p) == inv.end()) inv.push_back(p);
    std::sort(inv.begin(), inv.end());
    if (inv.size() > kMaxTeamLetters) throw std::invalid_argument("from_kripke: too many letters");
    const World worlds = static_cast<World>(m.frame.size());

    for (const auto& p : inv) {
        const WorldSet v = m.value(p);
        std::uint64_t top = 0;
        v.for_each([&](World w) { top |= w; });
        for (World t = 0; t < worlds; ++t)
            if (v.test(t) != ((t & ~top) == 0)) throw NonPrincipalValuation(p);
    }

    TeamsFromKripke out;
    out.inventory = inv;
    for (unsigned x = 0; x < k; ++x) {
        std::uint64_t row = 0;
        for (std::size_t i = 0; i < inv.size(); ++i)
            if (m.value(inv[i]).test(World{1} << x)) row |= std::uint64_t{1} << i;
        out.row_of.push_back(row);
    }
    auto& rep = out.report;
    auto fail = [&](bool& flag, const std::string& what) {
        if (flag) rep.failures.push_back(what);
        flag = false;
    };

    for (std::size_t i = 0; i < inv.size(); ++i) {
        const WorldSet v = m.value(inv[i]);
        const std::uint64_t ok = detail::rows_with(inv.size(), static_cast<int>(i));
        for (World t = 0; t < worlds; ++t)
            if (v.test(t) != ((out.image(t) & ~ok) == 0)) fail(rep.atoms, "atoms: " + inv[i] + " at world " + std::to_string(t));
    }
    for (const auto& tr : m.frame.triples())
        if (out.image(tr.x) != (out.image(tr.y) | out.image(tr.z)))
            fail(rep.forth, "forth: triple " + std::to_string(tr.x) + " " + std::to_string(tr.y) + " " + std::to_string(tr.z));
    for (World t = 0; t < worlds; ++t) {
        const std::uint64_t img = out.image(t);
        for (std::uint64_t u = img;; u = (u - 1) & img) {
            for (std::uint64_t w = img;; w = (w - 1) & img) {
                if ((u | w) == img) {
                    bool lifted = false;
                    for (World a = 0; a < worlds && !lifted; ++a) {
                        if (out.image(a) != u) continue;
                        for (World b = 0; b < worlds && !lifted; ++b)
                            lifted = out.image(b) == w && m.frame.contains(t, a, b);
                    }
                    if (!lifted) fail(rep.back, "back: world " + std::to_string(t));
                }
                if (w == 0) break;
            }
            if (u == 0) break;
        }
    }
    for (const auto& g : formulas) {
        const WorldSet kripke = sat_set(m, translate(g));
        for (World t = 0; t < worlds; ++t)
            if (kripke.test(t) != detail::team_sat_mask(inv, out.image(t), g))
                fail(rep.equivalence, "equivalence: " + render(g) + " at world " + std::to_string(t));
    }
    return out;
}

/// Validity of translate(f) on (P(X), union) with |X| = ground under every
/// principal valuation V(p) = P(Y_p).
inline bool principal_validity(const TeamFormula& f, unsigned ground) {
    const auto ls = letters(f);
    std::vector<std::string> inv(ls.begin(), ls.end());
    if (ground > 4 || inv.size() * ground > 16) throw std::invalid_argument("principal_validity: search too large");
    Model m(detail::build_powerset_frame(ground, PowersetMode::Union));
    const Formula g = translate(f);
    const std::uint64_t choices = std::uint64_t{1} << (ground * inv.size());
    const World worlds = static_cast<World>(m.frame.size());
    for (std::uint64_t c = 0; c < choices; ++c) {
        for (std::size_t i = 0; i < inv.size(); ++i) {
            const std::uint64_t y = (c >> (i * ground)) & ((std::uint64_t{1} << ground) - 1);
            WorldSet v(worlds);
            for (World t = 0; t < worlds; ++t)
                if ((t & ~y) == 0) v.set(t);
            m.valuation[inv[i]] = std::move(v);
        }
        if (sat_set(m, g).count() != worlds) return false;
    }
    return true;
}

}  // namespace wangmod
