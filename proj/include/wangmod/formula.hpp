#pragma once

// Modal language with one binary diamond `o`, its residual hooks and the
// derived box.  Core constructors are Letter, Neg, Or and Comp; the rest
// are abbreviations removed by desugar().

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace wangmod {

enum class Connective { Letter, Neg, Or, Comp, And, Implies, Iff, Top, Bottom, HookR, HookL, Box };

/// Letter that encodes T after desugaring; never a user letter.
inline constexpr std::string_view kTopLetter = "_top";

struct FormulaNode;

/// Immutable formula tree with shared subterms.
class Formula {
public:
    Formula() = default;

    static Formula letter(std::string name);
    static Formula neg(Formula f);
    static Formula lor(Formula a, Formula b);
    static Formula land(Formula a, Formula b);
    static Formula comp(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);
    static Formula top();
    static Formula bottom();
    /// a @> b, true at x when every x = y.z with y |= a has z |= b.
    static Formula hook_right(Formula a, Formula b);
    /// b <@ a, true at x when every x = y.z with z |= a has y |= b.
    static Formula hook_left(Formula b, Formula a);
    static Formula box(Formula f);

    bool valid() const noexcept { return node_ != nullptr; }
    Connective op() const noexcept;
    const std::string& name() const noexcept;
    const Formula& lhs() const noexcept;
    const Formula& rhs() const noexcept;
    const FormulaNode* id() const noexcept { return node_.get(); }

    bool is_core() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
    static Formula make(Connective op, std::string name, Formula l, Formula r);

    std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
    Connective op;
    std::string name;
    Formula lhs;
    Formula rhs;
};

inline Formula Formula::make(Connective op, std::string name, Formula l, Formula r) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{op, std::move(name), std::move(l), std::move(r)}));
}

inline Connective Formula::op() const noexcept { return node_->op; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline const Formula& Formula::lhs() const noexcept { return node_->lhs; }
inline const Formula& Formula::rhs() const noexcept { return node_->rhs; }

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9') || c == '\''; };
    if (!head(s[0])) return false;
    for (char c : s.substr(1))
        if (!tail(c)) return false;
    return true;
}

/// Identifier spellings the lexer claims for operators and constants.
inline bool is_reserved_word(std::string_view s) { return s == "o" || s == "T" || s == "F"; }

inline Formula Formula::letter(std::string name) {
    if (!is_identifier(name) || is_reserved_word(name))
        throw std::invalid_argument("invalid letter name '" + name + "'");
    return make(Connective::Letter, std::move(name), {}, {});
}
inline Formula Formula::neg(Formula f) { return make(Connective::Neg, {}, std::move(f), {}); }
inline Formula Formula::lor(Formula a, Formula b) { return make(Connective::Or, {}, std::move(a), std::move(b)); }
inline Formula Formula::land(Formula a, Formula b) { return make(Connective::And, {}, std::move(a), std::move(b)); }
inline Formula Formula::comp(Formula a, Formula b) { return make(Connective::Comp, {}, std::move(a), std::move(b)); }
inline Formula Formula::implies(Formula a, Formula b) {
    return make(Connective::Implies, {}, std::move(a), std::move(b));
}
inline Formula Formula::iff(Formula a, Formula b) { return make(Connective::Iff, {}, std::move(a), std::move(b)); }
inline Formula Formula::top() { return make(Connective::Top, {}, {}, {}); }
inline Formula Formula::bottom() { return make(Connective::Bottom, {}, {}, {}); }
inline Formula Formula::hook_right(Formula a, Formula b) {
    return make(Connective::HookR, {}, std::move(a), std::move(b));
}
inline Formula Formula::hook_left(Formula b, Formula a) {
    return make(Connective::HookL, {}, std::move(b), std::move(a));
}
inline Formula Formula::box(Formula f) { return make(Connective::Box, {}, std::move(f), {}); }

inline bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.op() != b.op() || a.name() != b.name()) return false;
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

inline int arity(Connective op) {
    switch (op) {
        case Connective::Letter:
        case Connective::Top:
        case Connective::Bottom: return 0;
        case Connective::Neg:
        case Connective::Box: return 1;
        default: return 2;
    }
}

inline bool Formula::is_core() const {
    std::unordered_set<const FormulaNode*> seen;
    std::function<bool(const Formula&)> go = [&](const Formula& f) {
        if (!seen.insert(f.id()).second) return true;
        switch (f.op()) {
            case Connective::Letter: return true;
            case Connective::Neg: return go(f.lhs());
            case Connective::Or:
            case Connective::Comp: return go(f.lhs()) && go(f.rhs());
            default: return false;
        }
    };
    return go(*this);
}

// ---------------------------------------------------------------------------
// Folding helpers.

/// Left-nested conjunction; a single element is returned as is, none gives T.
inline Formula conjunction(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::top();
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::land(acc, fs[i]);
    return acc;
}

/// Left-nested disjunction; none gives F.
inline Formula disjunction(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::bottom();
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::lor(acc, fs[i]);
    return acc;
}

/// Operands of a maximal top-level And chain.
inline std::vector<Formula> flatten_and(const Formula& f) {
    std::vector<Formula> out;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (g.op() == Connective::And) {
            go(g.lhs());
            go(g.rhs());
        } else {
            out.push_back(g);
        }
    };
    go(f);
    return out;
}

/// Size of the formula as a tree (shared subterms counted at each use).
inline std::size_t node_count(const Formula& f) {
    std::unordered_map<const FormulaNode*, std::size_t> memo;
    std::function<std::size_t(const Formula&)> go = [&](const Formula& g) -> std::size_t {
        if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
        std::size_t n = 1;
        int a = arity(g.op());
        if (a >= 1) n += go(g.lhs());
        if (a == 2) n += go(g.rhs());
        memo.emplace(g.id(), n);
        return n;
    };
    return go(f);
}

// ---------------------------------------------------------------------------
// Desugaring.

inline Formula desugar(const Formula& f) {
    const Formula top = Formula::lor(Formula::letter(std::string(kTopLetter)),
                                     Formula::neg(Formula::letter(std::string(kTopLetter))));
    std::unordered_map<const FormulaNode*, Formula> memo;

    std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
        if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
        Formula out;
        switch (g.op()) {
            case Connective::Letter: out = g; break;
            case Connective::Neg: {
                Formula s = go(g.lhs());
                out = s.id() == g.lhs().id() ? g : Formula::neg(s);
                break;
            }
            case Connective::Or:
            case Connective::Comp: {
                Formula l = go(g.lhs()), r = go(g.rhs());
                if (l.id() == g.lhs().id() && r.id() == g.rhs().id())
                    out = g;
                else
                    out = g.op() == Connective::Or ? Formula::lor(l, r) : Formula::comp(l, r);
                break;
            }
            case Connective::Top: out = top; break;
            case Connective::Bottom: out = Formula::neg(top); break;
            case Connective::And:
                out = Formula::neg(Formula::lor(Formula::neg(go(g.lhs())), Formula::neg(go(g.rhs()))));
                break;
            case Connective::Implies: out = Formula::lor(Formula::neg(go(g.lhs())), go(g.rhs())); break;
            case Connective::Iff: {
                Formula a = go(g.lhs()), b = go(g.rhs());
                Formula ab = Formula::lor(Formula::neg(a), b);
                Formula ba = Formula::lor(Formula::neg(b), a);
                out = Formula::neg(Formula::lor(Formula::neg(ab), Formula::neg(ba)));
                break;
            }
            case Connective::HookR:
                out = Formula::neg(Formula::comp(go(g.lhs()), Formula::neg(go(g.rhs()))));
                break;
            case Connective::HookL:
                out = Formula::neg(Formula::comp(Formula::neg(go(g.lhs())), go(g.rhs())));
                break;
            case Connective::Box: {
                // (T @> a) & (a <@ T) & ((T @> a) <@ T)
                Formula a = go(g.lhs());
                Formula right = Formula::neg(Formula::comp(top, Formula::neg(a)));
                Formula left = Formula::neg(Formula::comp(Formula::neg(a), top));
                Formula nested = Formula::neg(Formula::comp(Formula::neg(right), top));
                auto conj = [](const Formula& x, const Formula& y) {
                    return Formula::neg(Formula::lor(Formula::neg(x), Formula::neg(y)));
                };
                out = conj(conj(right, left), nested);
                break;
            }
        }
        memo.emplace(g.id(), out);
        return out;
    };
    return go(f);
}

/// Letter names occurring in f.  T, F and the box contribute the reserved
/// top letter when include_reserved is set, matching what desugar() emits.
inline std::set<std::string> letters(const Formula& f, bool include_reserved = true) {
    std::set<std::string> out;
    std::unordered_set<const FormulaNode*> seen;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (!seen.insert(g.id()).second) return;
        switch (g.op()) {
            case Connective::Letter: out.insert(g.name()); return;
            case Connective::Top:
            case Connective::Bottom: out.insert(std::string(kTopLetter)); return;
            case Connective::Box: out.insert(std::string(kTopLetter)); break;
            default: break;
        }
        int a = arity(g.op());
        if (a >= 1) go(g.lhs());
        if (a == 2) go(g.rhs());
    };
    go(f);
    if (!include_reserved) out.erase(std::string(kTopLetter));
    return out;
}

// ---------------------------------------------------------------------------
// Concrete syntax.
//
// Precedence, loosest first: <->, ->, @> / <@, |, &, o, prefix ~ and [].
// `o` and `&` and `|` associate to the left, `->` to the right; `<->` and the
// hooks do not associate.

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found)
        : std::runtime_error(describe(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::set<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string describe(std::size_t offset, const std::set<std::string>& expected, const std::string& found) {
        std::ostringstream os;
        os << "syntax error at byte " << offset << ": found " << found << ", expected one of:";
        for (const auto& e : expected) os << ' ' << e;
        return os.str();
    }

    std::size_t offset_;
    std::set<std::string> expected_;
};

namespace detail {

enum class Tok { Ident, Comp, Top, Bottom, Not, Box, And, Or, Implies, Iff, HookR, HookL, LParen, RParen, End };

inline const char* tok_spelling(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Comp: return "'o'";
        case Tok::Top: return "'T'";
        case Tok::Bottom: return "'F'";
        case Tok::Not: return "'~'";
        case Tok::Box: return "'[]'";
        case Tok::And: return "'&'";
        case Tok::Or: return "'|'";
        case Tok::Implies: return "'->'";
        case Tok::Iff: return "'<->'";
        case Tok::HookR: return "'@>'";
        case Tok::HookL: return "'<@'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
};

inline std::vector<Token> lex_formula(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto ident_tail = [&](char c) { return ident_head(c) || (c >= '0' && c <= '9') || c == '\''; };
    const std::set<std::string> any_token = {"identifier", "'o'", "'T'", "'F'", "'~'", "'[]'", "'&'", "'|'",
                                             "'->'", "'<->'", "'@>'", "'<@'", "'('", "')'"};
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        auto fixed = [&](Tok k, std::size_t len) {
            out.push_back({k, start, std::string(s.substr(start, len))});
            i += len;
        };
        if (ident_head(c)) {
            while (i < s.size() && ident_tail(s[i])) ++i;
            std::string word(s.substr(start, i - start));
            Tok k = word == "o" ? Tok::Comp : word == "T" ? Tok::Top : word == "F" ? Tok::Bottom : Tok::Ident;
            out.push_back({k, start, word});
            continue;
        }
        if (c == '~') { fixed(Tok::Not, 1); continue; }
        if (c == '&') { fixed(Tok::And, 1); continue; }
        if (c == '|') { fixed(Tok::Or, 1); continue; }
        if (c == '(') { fixed(Tok::LParen, 1); continue; }
        if (c == ')') { fixed(Tok::RParen, 1); continue; }
        if (s.substr(i, 2) == "[]") { fixed(Tok::Box, 2); continue; }
        if (s.substr(i, 2) == "->") { fixed(Tok::Implies, 2); continue; }
        if (s.substr(i, 3) == "<->") { fixed(Tok::Iff, 3); continue; }
        if (s.substr(i, 2) == "<@") { fixed(Tok::HookL, 2); continue; }
        if (s.substr(i, 2) == "@>") { fixed(Tok::HookR, 2); continue; }
        std::string found = (static_cast<unsigned char>(c) < 0x80) ? std::string("'") + c + "'" : "non-ASCII byte";
        throw ParseError(start, any_token, found);
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : toks_(lex_formula(text)) {}

    Formula parse() {
        Formula f = parse_iff();
        expect(Tok::End);
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    bool accept(Tok k) {
        if (peek().kind == k) {
            ++pos_;
            expected_.clear();
            return true;
        }
        expected_.insert(tok_spelling(k));
        return false;
    }

    void expect(Tok k) {
        if (!accept(k)) fail();
    }

    [[noreturn]] void fail() {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.offset, expected_, found);
    }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        if (accept(Tok::Iff)) return Formula::iff(lhs, parse_implies());
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_hook();
        if (accept(Tok::Implies)) return Formula::implies(lhs, parse_implies());
        return lhs;
    }

    Formula parse_hook() {
        Formula lhs = parse_or();
        if (accept(Tok::HookR)) return Formula::hook_right(lhs, parse_or());
        if (accept(Tok::HookL)) return Formula::hook_left(lhs, parse_or());
        return lhs;
    }

    Formula parse_or() {
        Formula acc = parse_and();
        while (accept(Tok::Or)) acc = Formula::lor(acc, parse_and());
        return acc;
    }

    Formula parse_and() {
        Formula acc = parse_comp();
        while (accept(Tok::And)) acc = Formula::land(acc, parse_comp());
        return acc;
    }

    Formula parse_comp() {
        Formula acc = parse_unary();
        while (accept(Tok::Comp)) acc = Formula::comp(acc, parse_unary());
        return acc;
    }

    Formula parse_unary() {
        if (accept(Tok::Not)) return Formula::neg(parse_unary());
        if (accept(Tok::Box)) return Formula::box(parse_unary());
        return parse_primary();
    }

    Formula parse_primary() {
        if (peek().kind == Tok::Ident) {
            std::string name = peek().text;
            accept(Tok::Ident);
            return Formula::letter(std::move(name));
        }
        if (accept(Tok::Top)) return Formula::top();
        if (accept(Tok::Bottom)) return Formula::bottom();
        if (accept(Tok::LParen)) {
            Formula f = parse_iff();
            expect(Tok::RParen);
            return f;
        }
        expected_.insert(tok_spelling(Tok::Ident));
        fail();
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::set<std::string> expected_;
};

enum class Assoc { Left, Right, None };

inline int precedence(Connective op) {
    switch (op) {
        case Connective::Iff: return 1;
        case Connective::Implies: return 2;
        case Connective::HookR:
        case Connective::HookL: return 3;
        case Connective::Or: return 4;
        case Connective::And: return 5;
        case Connective::Comp: return 6;
        case Connective::Neg:
        case Connective::Box: return 7;
        default: return 8;
    }
}

inline Assoc associativity(Connective op) {
    switch (op) {
        case Connective::Implies: return Assoc::Right;
        case Connective::Or:
        case Connective::And:
        case Connective::Comp: return Assoc::Left;
        default: return Assoc::None;
    }
}

inline const char* infix_spelling(Connective op) {
    switch (op) {
        case Connective::Iff: return " <-> ";
        case Connective::Implies: return " -> ";
        case Connective::HookR: return " @> ";
        case Connective::HookL: return " <@ ";
        case Connective::Or: return " | ";
        case Connective::And: return " & ";
        case Connective::Comp: return " o ";
        default: return "?";
    }
}

inline void render_into(std::string& out, const Formula& f) {
    auto child = [&](const Formula& c, bool parens) {
        if (parens) out += '(';
        render_into(out, c);
        if (parens) out += ')';
    };
    switch (f.op()) {
        case Connective::Letter: out += f.name(); return;
        case Connective::Top: out += 'T'; return;
        case Connective::Bottom: out += 'F'; return;
        case Connective::Neg:
        case Connective::Box:
            out += f.op() == Connective::Neg ? "~" : "[]";
            child(f.lhs(), precedence(f.lhs().op()) < 7);
            return;
        default: break;
    }
    int p = precedence(f.op());
    Assoc a = associativity(f.op());
    int lp = precedence(f.lhs().op()), rp = precedence(f.rhs().op());
    child(f.lhs(), lp < p || (lp == p && a != Assoc::Left));
    out += infix_spelling(f.op());
    child(f.rhs(), rp < p || (rp == p && a != Assoc::Right));
}

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

inline std::string render(const Formula& f) {
    std::string out;
    detail::render_into(out, f);
    return out;
}

}  // namespace wangmod
