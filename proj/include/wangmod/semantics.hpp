#pragma once

// Model checking over finite frames, frame validity and countermodel search.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "formula.hpp"
#include "frames.hpp"
#include "world_set.hpp"

namespace wangmod {

/// Truth set of f in m, computed bottom-up on desugar(f).
inline WorldSet sat_set(const Model& m, const Formula& f) {
    const Formula core = desugar(f);
    const std::size_t n = m.frame.size();
    std::unordered_map<const FormulaNode*, WorldSet> memo;
    std::function<const WorldSet&(const Formula&)> go = [&](const Formula& g) -> const WorldSet& {
        if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
        WorldSet out(n);
        switch (g.op()) {
            case Connective::Letter: out = m.value(g.name()); break;
            case Connective::Neg: out = go(g.lhs()).complement(); break;
            case Connective::Or: out = go(g.lhs()) | go(g.rhs()); break;
            case Connective::Comp: {
                WorldSet l = go(g.lhs());
                out = m.frame.image(l, go(g.rhs()));
                break;
            }
            default: throw std::logic_error("sat_set: non-core node after desugar");
        }
        return memo.emplace(g.id(), std::move(out)).first->second;
    };
    return go(core);
}

inline bool holds(const Model& m, World x, const Formula& f) { return sat_set(m, f).test(x); }

/// x |= []f, evaluated through the S relation.
inline bool holds_box(const Model& m, World x, const Formula& f, const BinRel& s) {
    return s.successors(x).subset_of(sat_set(m, f));
}

inline bool holds_box(const Model& m, World x, const Formula& f) { return holds_box(m, x, f, s_relation(m.frame)); }

// ---------------------------------------------------------------------------
// Word-level evaluator for frames of at most 64 worlds, used on hot paths.

class SmallFrame {
public:
    explicit SmallFrame(const Frame& f) : n_(f.size()), prod_(n_ * n_) {
        if (n_ > 64) throw std::invalid_argument("SmallFrame: more than 64 worlds");
        for (World y = 0; y < n_; ++y)
            for (World z = 0; z < n_; ++z) prod_[y * n_ + z] = f.product(y, z).low_word();
    }

    std::size_t size() const noexcept { return n_; }
    std::uint64_t full() const noexcept { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

    std::uint64_t image(std::uint64_t ys, std::uint64_t zs) const noexcept {
        std::uint64_t out = 0;
        if (!zs) return 0;
        for (std::uint64_t a = ys; a; a &= a - 1) {
            const std::uint64_t* row = &prod_[static_cast<std::size_t>(std::countr_zero(a)) * n_];
            for (std::uint64_t b = zs; b; b &= b - 1) out |= row[std::countr_zero(b)];
        }
        return out;
    }

private:
    std::size_t n_;
    std::vector<std::uint64_t> prod_;
};

/// Desugared formula flattened into a DAG program over letter indices.
class CompiledFormula {
public:
    explicit CompiledFormula(const Formula& f) {
        const Formula core = desugar(f);
        auto ls = wangmod::letters(core);
        letters_.assign(ls.begin(), ls.end());
        std::unordered_map<const FormulaNode*, int> index;
        std::function<int(const Formula&)> go = [&](const Formula& g) -> int {
            if (auto it = index.find(g.id()); it != index.end()) return it->second;
            Instr ins{g.op(), -1, -1};
            switch (g.op()) {
                case Connective::Letter:
                    ins.a = static_cast<int>(std::lower_bound(letters_.begin(), letters_.end(), g.name()) - letters_.begin());
                    break;
                case Connective::Neg: ins.a = go(g.lhs()); break;
                case Connective::Or:
                case Connective::Comp:
                    ins.a = go(g.lhs());
                    ins.b = go(g.rhs());
                    break;
                default: throw std::logic_error("CompiledFormula: non-core node");
            }
            code_.push_back(ins);
            int id = static_cast<int>(code_.size()) - 1;
            index.emplace(g.id(), id);
            return id;
        };
        go(core);
    }

    /// Sorted letters of the desugared formula, including the reserved top letter when present.
    const std::vector<std::string>& letters() const noexcept { return letters_; }

    int letter_index(const std::string& name) const {
        auto it = std::lower_bound(letters_.begin(), letters_.end(), name);
        return it != letters_.end() && *it == name ? static_cast<int>(it - letters_.begin()) : -1;
    }

    std::uint64_t eval(const SmallFrame& fr, const std::vector<std::uint64_t>& val,
                       std::vector<std::uint64_t>& scratch) const {
        scratch.resize(code_.size());
        const std::uint64_t full = fr.full();
        for (std::size_t i = 0; i < code_.size(); ++i) {
            const Instr& in = code_[i];
            switch (in.op) {
                case Connective::Letter: scratch[i] = val[in.a]; break;
                case Connective::Neg: scratch[i] = ~scratch[in.a] & full; break;
                case Connective::Or: scratch[i] = scratch[in.a] | scratch[in.b]; break;
                default: scratch[i] = fr.image(scratch[in.a], scratch[in.b]); break;
            }
        }
        return scratch.back();
    }

    /// Three-valued evaluation: lo holds where the formula is true under every
    /// completion of the partial valuation, hi where it is true under some.
    std::pair<std::uint64_t, std::uint64_t> eval_bounds(const SmallFrame& fr, const std::vector<std::uint64_t>& val_lo,
                                                        const std::vector<std::uint64_t>& val_hi,
                                                        std::vector<std::uint64_t>& lo,
                                                        std::vector<std::uint64_t>& hi) const {
        lo.resize(code_.size());
        hi.resize(code_.size());
        const std::uint64_t full = fr.full();
        for (std::size_t i = 0; i < code_.size(); ++i) {
            const Instr& in = code_[i];
            switch (in.op) {
                case Connective::Letter:
                    lo[i] = val_lo[in.a];
                    hi[i] = val_hi[in.a];
                    break;
                case Connective::Neg:
                    lo[i] = ~hi[in.a] & full;
                    hi[i] = ~lo[in.a] & full;
                    break;
                case Connective::Or:
                    lo[i] = lo[in.a] | lo[in.b];
                    hi[i] = hi[in.a] | hi[in.b];
                    break;
                default:
                    lo[i] = fr.image(lo[in.a], lo[in.b]);
                    hi[i] = fr.image(hi[in.a], hi[in.b]);
                    break;
            }
        }
        return {lo.back(), hi.back()};
    }

    std::size_t program_size() const noexcept { return code_.size(); }

private:
    struct Instr {
        Connective op;
        int a, b;
    };
    std::vector<std::string> letters_;
    std::vector<Instr> code_;
};

// ---------------------------------------------------------------------------
// Frame validity.

enum class Validity { Valid, Refuted, Unknown };

inline const char* to_string(Validity v) {
    switch (v) {
        case Validity::Valid: return "valid";
        case Validity::Refuted: return "refuted";
        case Validity::Unknown: return "unknown";
    }
    return "?";
}

struct ValidityVerdict {
    Validity status = Validity::Unknown;
    std::optional<Model> model;  // set when Refuted
    World world = 0;
    std::uint64_t valuations_checked = 0;
};

struct ExhaustiveStrategy {};
struct RandomStrategy {
    std::uint64_t seed = 0;
    std::uint64_t samples = 1000;
};

inline constexpr std::size_t kMaxExhaustiveBits = 24;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Runs body(job) for job in [0, jobs) on separate threads (inline when jobs == 1).
template <typename F>
void run_jobs(unsigned jobs, F&& body) {
    if (jobs <= 1) {
        body(0u);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back([&, j] { body(j); });
    for (auto& t : pool) t.join();
}

struct ValidityProblem {
    const Frame& frame;
    CompiledFormula program;
    SmallFrame small;
    std::vector<std::string> user_letters;  // letters the valuation ranges over
    std::vector<int> slot;                  // program letter index -> user letter index or -1

    ValidityProblem(const Frame& fr, const Formula& f) : frame(fr), program(f), small(fr) {
        for (const auto& l : program.letters())
            if (l != kTopLetter) user_letters.push_back(l);
        for (const auto& l : program.letters()) {
            auto it = std::find(user_letters.begin(), user_letters.end(), l);
            slot.push_back(it == user_letters.end() ? -1 : static_cast<int>(it - user_letters.begin()));
        }
    }

    /// Letter i's world set is bits [i*n, (i+1)*n) of the bit vector.
    std::uint64_t falsified(const std::vector<std::uint64_t>& user_val, std::vector<std::uint64_t>& val,
                            std::vector<std::uint64_t>& scratch) const {
        val.assign(program.letters().size(), 0);
        for (std::size_t i = 0; i < slot.size(); ++i)
            if (slot[i] >= 0) val[i] = user_val[slot[i]];
        return ~program.eval(small, val, scratch) & small.full();
    }

    Model model_for(const std::vector<std::uint64_t>& user_val) const {
        Model m(frame);
        for (std::size_t i = 0; i < user_letters.size(); ++i)
            m.valuation.emplace(user_letters[i], WorldSet::from_mask(frame.size(), user_val[i]));
        return m;
    }
};

}  // namespace detail

/// Exhaustive strategy: valuations are enumerated as a binary counter over the
/// (letter, world) grid with letters in lexicographic order; the first
/// counter value that refutes wins, at its least falsifying world.
inline ValidityVerdict frame_validity(const Frame& fr, const Formula& f, ExhaustiveStrategy, unsigned jobs = 1) {
    const std::size_t n = fr.size();
    const auto user = letters(f, false);
    if (n * user.size() > kMaxExhaustiveBits)
        throw std::invalid_argument("frame_validity: size x letters = " + std::to_string(n * user.size()) +
                                    " exceeds the exhaustive limit of " + std::to_string(kMaxExhaustiveBits));
    if (n > 64) {
        // Letter-free formula on a large frame: one valuation.
        Model m(fr);
        WorldSet bad = sat_set(m, f).complement();
        ValidityVerdict v;
        v.valuations_checked = 1;
        if (bad.empty()) {
            v.status = Validity::Valid;
        } else {
            v.status = Validity::Refuted;
            v.world = bad.first();
            v.model = std::move(m);
        }
        return v;
    }
    detail::ValidityProblem prob(fr, f);
    const std::size_t k = prob.user_letters.size();
    const std::uint64_t total = std::uint64_t{1} << (n * k);
    const std::uint64_t world_mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    std::vector<std::uint64_t> hit(jobs, std::numeric_limits<std::uint64_t>::max());
    std::vector<std::uint64_t> checked(jobs, 0);
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    detail::run_jobs(jobs, [&](unsigned j) {
        std::vector<std::uint64_t> user_val(k), val, scratch;
        const std::uint64_t lo = j * chunk, hi = std::min(total, lo + chunk);
        for (std::uint64_t c = lo; c < hi; ++c) {
            if (c > best.load(std::memory_order_relaxed)) break;
            for (std::size_t i = 0; i < k; ++i) user_val[i] = (c >> (i * n)) & world_mask;
            ++checked[j];
            if (prob.falsified(user_val, val, scratch)) {
                hit[j] = c;
                std::uint64_t cur = best.load();
                while (c < cur && !best.compare_exchange_weak(cur, c)) {
                }
                break;
            }
        }
    });
    ValidityVerdict v;
    const std::uint64_t first = *std::min_element(hit.begin(), hit.end());
    if (first == std::numeric_limits<std::uint64_t>::max()) {
        v.status = Validity::Valid;
        v.valuations_checked = total;
        return v;
    }
    std::vector<std::uint64_t> user_val(k), val, scratch;
    for (std::size_t i = 0; i < k; ++i) user_val[i] = (first >> (i * n)) & world_mask;
    const std::uint64_t bad = prob.falsified(user_val, val, scratch);
    v.status = Validity::Refuted;
    v.world = static_cast<World>(std::countr_zero(bad));
    v.model = prob.model_for(user_val);
    v.valuations_checked = first + 1;
    return v;
}

/// Random strategy: sample i draws its valuation from splitmix64(seed, i); the
/// least refuting sample index wins.
inline ValidityVerdict frame_validity(const Frame& fr, const Formula& f, RandomStrategy strat, unsigned jobs = 1) {
    const std::size_t n = fr.size();
    if (n > 64) throw std::invalid_argument("frame_validity: random strategy supports at most 64 worlds");
    detail::ValidityProblem prob(fr, f);
    const std::size_t k = prob.user_letters.size();
    const std::uint64_t world_mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    auto draw = [&](std::uint64_t i, std::vector<std::uint64_t>& user_val) {
        std::uint64_t state = detail::splitmix64(strat.seed ^ detail::splitmix64(i));
        for (std::size_t l = 0; l < k; ++l) {
            state = detail::splitmix64(state);
            user_val[l] = state & world_mask;
        }
    };
    jobs = std::max(1u, jobs);
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    detail::run_jobs(jobs, [&](unsigned j) {
        std::vector<std::uint64_t> user_val(k), val, scratch;
        for (std::uint64_t i = j; i < strat.samples; i += jobs) {
            if (i > best.load(std::memory_order_relaxed)) break;
            draw(i, user_val);
            if (prob.falsified(user_val, val, scratch)) {
                std::uint64_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
                break;
            }
        }
    });
    ValidityVerdict v;
    if (best.load() == std::numeric_limits<std::uint64_t>::max()) {
        v.status = Validity::Unknown;
        v.valuations_checked = strat.samples;
        return v;
    }
    std::vector<std::uint64_t> user_val(k), val, scratch;
    draw(best.load(), user_val);
    const std::uint64_t bad = prob.falsified(user_val, val, scratch);
    v.status = Validity::Refuted;
    v.world = static_cast<World>(std::countr_zero(bad));
    v.model = prob.model_for(user_val);
    v.valuations_checked = best.load() + 1;
    return v;
}

// ---------------------------------------------------------------------------
// Countermodel search.

/// Associative operation tables (frames with singleton products), one per
/// isomorphism class, in lexicographic table order.
inline std::vector<Frame> semigroup_frames(unsigned n);

namespace detail {
inline std::vector<Frame> enumerate_semigroups(unsigned n);
}

inline std::vector<Frame> semigroup_frames(unsigned n) {
    if (n == 0 || n > 5) throw std::invalid_argument("semigroup_frames: order must be in 1..5");
    static std::mutex lock;
    static std::map<unsigned, std::vector<Frame>> cache;
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::enumerate_semigroups(n)).first;
    return it->second;
}

inline std::vector<Frame> detail::enumerate_semigroups(unsigned n) {
    const unsigned cells = n * n;
    std::vector<int> t(cells, -1);
    std::vector<Frame> out;
    std::vector<std::vector<World>> perms;
    {
        std::vector<World> p(n);
        std::iota(p.begin(), p.end(), 0);
        while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
    }
    auto consistent = [&]() {
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) {
                int ab = t[a * n + b];
                if (ab < 0) continue;
                for (unsigned c = 0; c < n; ++c) {
                    int bc = t[b * n + c];
                    if (bc < 0) continue;
                    int l = t[ab * n + c], r = t[a * n + bc];
                    if (l >= 0 && r >= 0 && l != r) return false;
                }
            }
        return true;
    };
    auto canonical = [&]() {
        std::vector<int> inv(n);
        for (const auto& p : perms) {
            for (unsigned i = 0; i < n; ++i) inv[p[i]] = static_cast<int>(i);
            // relabelled table: t'[p a][p b] = p t[a][b]; compare row-major.
            for (unsigned cell = 0; cell < cells; ++cell) {
                unsigned a = inv[cell / n], b = inv[cell % n];
                int img = static_cast<int>(p[t[a * n + b]]);
                if (img < t[cell]) return false;
                if (img > t[cell]) break;
            }
        }
        return true;
    };
    std::function<void(unsigned)> fill = [&](unsigned cell) {
        if (cell == cells) {
            if (!canonical()) return;
            Frame f(n);
            for (unsigned y = 0; y < n; ++y)
                for (unsigned z = 0; z < n; ++z) f.add(t[y * n + z], y, z);
            out.push_back(std::move(f));
            return;
        }
        for (unsigned v = 0; v < n; ++v) {
            t[cell] = static_cast<int>(v);
            if (consistent()) fill(cell + 1);
        }
        t[cell] = -1;
    };
    fill(0);
    return out;
}

struct CountermodelOptions {
    unsigned max_worlds = 4;
    std::uint64_t budget = 10'000'000;  // backtracking nodes across all frames
    std::uint64_t seed = 0;             // 0 keeps the canonical candidate order
    unsigned jobs = 1;
};

struct Countermodel {
    Model model;
    World world;
    std::uint64_t steps = 0;            // nodes spent up to and including the hit
    std::size_t frames_tried = 0;
};

struct CountermodelOutcome {
    std::optional<Countermodel> hit;
    std::uint64_t steps = 0;
    std::size_t frames_tried = 0;
    bool budget_exhausted = false;
};

namespace detail {

/// Backtracking over valuation bits with three-valued pruning.  Searches for
/// a valuation under which `target` (the negated formula) is true somewhere.
struct ValuationSearch {
    const CompiledFormula& target;
    const SmallFrame& frame;
    std::vector<std::size_t> letter_order;  // program letter indices to branch on
    std::uint64_t limit;
    std::uint64_t root_mask;  // worlds where the target must become true
    std::uint64_t steps = 0;

    ValuationSearch(const CompiledFormula& t, const SmallFrame& f, std::vector<std::size_t> order, std::uint64_t lim,
                    std::uint64_t roots)
        : target(t), frame(f), letter_order(std::move(order)), limit(lim), root_mask(roots) {}

    std::vector<std::uint64_t> lo_val, hi_val, lo, hi;
    std::optional<std::pair<std::vector<std::uint64_t>, World>> found;

    bool run() {
        const std::size_t L = target.letters().size();
        lo_val.assign(L, 0);
        hi_val.assign(L, 0);
        for (std::size_t i : letter_order) hi_val[i] = frame.full();
        return step(0, 0);
    }

    bool step(std::size_t li, World w) {
        if (steps >= limit) return false;
        ++steps;
        auto [l, h] = target.eval_bounds(frame, lo_val, hi_val, lo, hi);
        if (!(h & root_mask)) return false;
        if (l & root_mask) {
            std::vector<std::uint64_t> val = lo_val;
            found.emplace(std::move(val), static_cast<World>(std::countr_zero(l & root_mask)));
            return true;
        }
        if (li == letter_order.size()) return false;
        const std::size_t letter = letter_order[li];
        std::size_t nli = li;
        World nw = w + 1;
        if (nw == frame.size()) {
            ++nli;
            nw = 0;
        }
        const std::uint64_t bit = std::uint64_t{1} << w;
        for (int choice : {1, 0}) {
            if (choice)
                lo_val[letter] |= bit;
            else
                hi_val[letter] &= ~bit;
            if (step(nli, nw)) return true;
            lo_val[letter] &= ~bit;
            hi_val[letter] |= bit;
            if (steps >= limit) return false;
        }
        return false;
    }
};

/// Letters in order of first occurrence, left to right, reserved letter excluded.
inline std::vector<std::string> first_occurrence_order(const Formula& f) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::unordered_set<const FormulaNode*> visited;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (!visited.insert(g.id()).second) return;
        if (g.op() == Connective::Letter) {
            if (seen.insert(g.name()).second) out.push_back(g.name());
            return;
        }
        const int a = arity(g.op());
        if (a >= 1) go(g.lhs());
        if (a == 2) go(g.rhs());
    };
    go(f);
    return out;
}

}  // namespace detail

/// Candidate frames in search order: operation tables of order 1..min(max,5),
/// then relational associative frames of order 1..min(max,3) that are not
/// already operation tables.  A nonzero seed shuffles candidates within each
/// block.
inline std::vector<Frame> countermodel_candidates(unsigned max_worlds, std::uint64_t seed) {
    std::vector<Frame> out;
    std::mt19937_64 rng(seed);
    auto push_block = [&](std::vector<Frame> block) {
        if (seed != 0) std::shuffle(block.begin(), block.end(), rng);
        for (auto& f : block) out.push_back(std::move(f));
    };
    for (unsigned n = 1; n <= std::min(max_worlds, 5u); ++n) push_block(semigroup_frames(n));
    for (unsigned n = 1; n <= std::min(max_worlds, 3u); ++n) {
        std::vector<Frame> block;
        FrameStream s(n, true);
        while (auto f = s.next()) {
            bool functional = true;
            for (World y = 0; y < n && functional; ++y)
                for (World z = 0; z < n && functional; ++z) functional = f->product(y, z).count() == 1;
            if (!functional) block.push_back(std::move(*f));
        }
        push_block(std::move(block));
    }
    return out;
}

/// Looks for an associative model and world falsifying f.  Running out of
/// budget returns no hit and makes no validity claim.
inline CountermodelOutcome countermodel_search(const Formula& f, const CountermodelOptions& opt) {
    const CompiledFormula target(Formula::neg(f));
    std::vector<std::size_t> order;
    for (const auto& l : detail::first_occurrence_order(f)) order.push_back(static_cast<std::size_t>(target.letter_index(l)));

    const auto candidates = countermodel_candidates(opt.max_worlds, opt.seed);
    CountermodelOutcome outcome;
    const unsigned jobs = std::max(1u, opt.jobs);
    std::size_t next = 0;
    while (next < candidates.size()) {
        const std::uint64_t remaining = opt.budget - outcome.steps;
        const std::size_t batch = std::min<std::size_t>(jobs, candidates.size() - next);
        struct Result {
            std::uint64_t steps = 0;
            std::optional<std::pair<std::vector<std::uint64_t>, World>> found;
        };
        std::vector<Result> results(batch);
        detail::run_jobs(static_cast<unsigned>(batch), [&](unsigned j) {
            SmallFrame small(candidates[next + j]);
            detail::ValuationSearch vs(target, small, order, remaining, small.full());
            vs.run();
            results[j].steps = vs.steps;
            results[j].found = std::move(vs.found);
        });
        for (std::size_t j = 0; j < batch; ++j) {
            const auto& r = results[j];
            // Later jobs in a batch ran with a looser limit than a sequential
            // run would give them; anything past the shared budget is cut.
            const std::uint64_t total = outcome.steps + r.steps;
            if (total > opt.budget || (!r.found && total == opt.budget)) {
                outcome.steps = opt.budget;
                outcome.frames_tried += 1;
                outcome.budget_exhausted = true;
                return outcome;
            }
            outcome.steps += r.steps;
            outcome.frames_tried += 1;
            if (r.found) {
                const Frame& fr = candidates[next + j];
                Model m(fr);
                for (std::size_t i = 0; i < target.letters().size(); ++i) {
                    if (target.letters()[i] == kTopLetter) continue;
                    m.valuation.emplace(target.letters()[i], WorldSet::from_mask(fr.size(), r.found->first[i]));
                }
                outcome.hit = Countermodel{std::move(m), r.found->second, outcome.steps, outcome.frames_tried};
                return outcome;
            }
        }
        next += batch;
    }
    return outcome;
}

}  // namespace wangmod
