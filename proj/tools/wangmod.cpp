// Command-line front end for the wangmod library.
//
// Exit codes: 0 success, 1 domain failure, 2 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wangmod/wangmod.hpp"

using namespace wangmod;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Common {
    std::string format = "text";
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool lines() const { return format == "lines"; }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "lines"}));
    app->add_option("--seed", c.seed, "Seed for randomized paths");
    app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

std::string join_worlds(const WorldSet& s) {
    std::string out;
    s.for_each([&](World w) { out += (out.empty() ? "" : " ") + std::to_string(w); });
    return out;
}

std::string join_csv(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
    return out;
}

std::string render_team(const Team& t) {
    std::string out = "{";
    bool first = true;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        if (!(t.members >> r & 1)) continue;
        out += first ? "(" : ", (";
        first = false;
        for (std::size_t i = 0; i < t.inventory.size(); ++i)
            out += (i ? "," : "") + t.inventory[i] + "=" + std::to_string(r >> i & 1);
        out += ")";
    }
    return out + "}";
}

/// Grid file: one line per row, top row first, tile names separated by spaces.
Grid parse_grid(const std::string& text, const TileSet& w) {
    std::vector<std::vector<int>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<int> row;
        for (std::string name; ls >> name;) {
            auto idx = w.index_of(name);
            if (!idx) throw UsageError("grid: unknown tile '" + name + "'");
            row.push_back(static_cast<int>(*idx));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw UsageError("grid: no rows");
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw UsageError("grid: rows differ in length");
    Grid g(rows[0].size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < rows[i].size(); ++c) g.set(c, rows.size() - 1 - i, rows[i][c]);
    return g;
}

std::string render_grid_names(const TileSet& w, const Grid& g) {
    std::string out;
    for (std::size_t r = g.height(); r-- > 0;) {
        for (std::size_t c = 0; c < g.width(); ++c) out += (c ? " " : "") + w[g.at(c, r)].name;
        out += '\n';
    }
    return out;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("expected P,Q");
    try {
        return {std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("expected P,Q with naturals");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wang tilings, associative frames and team logic"};
    app.require_subcommand(1);
    std::function<int()> run;

    // parse-formula
    Common c_parse;
    std::string parse_text;
    bool parse_desugar = false;
    auto* parse = app.add_subcommand("parse-formula", "Parse and print a formula");
    parse->add_option("formula", parse_text)->required();
    parse->add_flag("--desugar", parse_desugar, "Print the core-only form");
    add_common(parse, c_parse);
    parse->callback([&] {
        run = [&] {
            Formula f = parse_formula(parse_text);
            if (parse_desugar) f = desugar(f);
            if (c_parse.lines()) {
                std::cout << "formula=" << render(f) << "\n";
                std::cout << "nodes=" << node_count(f) << "\n";
                const auto ls = letters(f);
                std::cout << "letters=" << join_csv({ls.begin(), ls.end()}) << "\n";
            } else {
                std::cout << render(f) << "\n";
            }
            return 0;
        };
    });

    // gen-phi
    Common c_phi;
    std::string phi_tiles;
    bool phi_desugar = false, phi_stats = false;
    auto* genphi = app.add_subcommand("gen-phi", "Print the formula of a tile set");
    genphi->add_option("--tiles", phi_tiles, "Tile set file")->required();
    genphi->add_flag("--desugar", phi_desugar, "Print the core-only form");
    genphi->add_flag("--stats", phi_stats, "Print node and letter counts");
    add_common(genphi, c_phi);
    genphi->callback([&] {
        run = [&] {
            const TileSet w = parse_tiles(read_file(phi_tiles));
            Formula f = phi(w);
            if (phi_desugar) f = desugar(f);
            const auto ls = letters(f);
            if (c_phi.lines()) {
                std::cout << "phi=" << render(f) << "\n";
            } else {
                std::cout << render(f) << "\n";
            }
            if (phi_stats) {
                std::cout << (c_phi.lines() ? "" : "# ") << "nodes=" << node_count(f) << "\n";
                std::cout << (c_phi.lines() ? "" : "# ") << "letters=" << ls.size() << "\n";
                std::cout << (c_phi.lines() ? "" : "# ") << "conjuncts=" << flatten_and(phi_body(w)).size() << "\n";
            }
            return 0;
        };
    });

    // check-assoc
    Common c_assoc;
    std::string assoc_frame;
    auto* assoc = app.add_subcommand("check-assoc", "Check associativity of a frame");
    assoc->add_option("--frame", assoc_frame, "Frame file")->required();
    add_common(assoc, c_assoc);
    assoc->callback([&] {
        run = [&] {
            const Model m = parse_model(read_file(assoc_frame));
            const auto v = check_associative(m.frame);
            const auto s = s_relation(m.frame);
            if (v.associative()) {
                if (c_assoc.lines())
                    std::cout << "associative=true\ns_transitive=" << (s.is_transitive() ? "true" : "false") << "\n";
                else
                    std::cout << "associative; S is " << (s.is_transitive() ? "" : "not ") << "transitive\n";
                return 0;
            }
            const auto& ce = *v.counterexample;
            const char* dir = ce.direction == AssocDirection::LeftToRight ? "left-to-right" : "right-to-left";
            if (c_assoc.lines())
                std::cout << "associative=false\nx=" << ce.x << "\na=" << ce.a << "\nb=" << ce.b << "\nc=" << ce.c
                          << "\ndirection=" << dir << "\n";
            else
                std::cout << "not associative: x=" << ce.x << " a=" << ce.a << " b=" << ce.b << " c=" << ce.c << " ("
                          << dir << ")\n";
            return 1;
        };
    });

    // model-check
    Common c_mc;
    std::string mc_frame, mc_formula;
    long mc_world = -1;
    auto* mc = app.add_subcommand("model-check", "Truth set of a formula in a model");
    mc->add_option("--frame", mc_frame, "Model file")->required();
    mc->add_option("--formula", mc_formula, "Formula")->required();
    mc->add_option("--world", mc_world, "Report truth at this world; exit 1 when false");
    add_common(mc, c_mc);
    mc->callback([&] {
        run = [&] {
            const Model m = parse_model(read_file(mc_frame));
            const Formula f = parse_formula(mc_formula);
            const WorldSet s = sat_set(m, f);
            if (mc_world >= 0 && static_cast<std::size_t>(mc_world) >= m.frame.size()) throw UsageError("world out of range");
            if (c_mc.lines()) {
                std::cout << "sat=" << join_worlds(s) << "\n";
                if (mc_world >= 0) std::cout << "holds=" << (s.test(mc_world) ? "true" : "false") << "\n";
            } else {
                std::cout << "true at: {" << join_worlds(s) << "}\n";
                if (mc_world >= 0) std::cout << "world " << mc_world << ": " << (s.test(mc_world) ? "true" : "false") << "\n";
            }
            return mc_world >= 0 && !s.test(mc_world) ? 1 : 0;
        };
    });

    // frame-valid
    Common c_fv;
    std::string fv_frame, fv_formula, fv_strategy = "exhaustive";
    std::uint64_t fv_samples = 1000;
    auto* fv = app.add_subcommand("frame-valid", "Validity of a formula on a frame");
    fv->add_option("--frame", fv_frame, "Frame file (valuation lines are ignored)")->required();
    fv->add_option("--formula", fv_formula, "Formula")->required();
    fv->add_option("--strategy", fv_strategy)->check(CLI::IsMember({"exhaustive", "random"}));
    fv->add_option("--samples", fv_samples, "Samples for the random strategy");
    add_common(fv, c_fv);
    fv->callback([&] {
        run = [&] {
            const Model m = parse_model(read_file(fv_frame));
            const Formula f = parse_formula(fv_formula);
            const ValidityVerdict v = fv_strategy == "exhaustive"
                                          ? frame_validity(m.frame, f, ExhaustiveStrategy{}, c_fv.jobs)
                                          : frame_validity(m.frame, f, RandomStrategy{c_fv.seed, fv_samples}, c_fv.jobs);
            if (c_fv.lines()) {
                std::cout << "status=" << to_string(v.status) << "\n";
                if (v.model) {
                    std::cout << "world=" << v.world << "\n";
                    for (const auto& [p, s] : v.model->valuation) std::cout << "val_" << p << "=" << join_worlds(s) << "\n";
                }
            } else {
                std::cout << to_string(v.status) << "\n";
                if (v.model) std::cout << "falsified at world " << v.world << " of\n" << write_model(*v.model);
            }
            return v.status == Validity::Valid ? 0 : 1;
        };
    });

    // countermodel
    Common c_cm;
    std::string cm_formula, cm_tiles, cm_out;
    unsigned cm_worlds = 4;
    std::uint64_t cm_budget = 10'000'000;
    auto* cm = app.add_subcommand("countermodel", "Search associative frames for a countermodel");
    auto* cm_f = cm->add_option("--formula", cm_formula, "Formula");
    auto* cm_t = cm->add_option("--tiles", cm_tiles, "Search against the formula of this tile set");
    cm_f->excludes(cm_t);
    cm->add_option("--max-worlds", cm_worlds, "Largest frame size")->check(CLI::Range(1u, 5u));
    cm->add_option("--budget", cm_budget, "Backtracking node budget");
    cm->add_option("--out", cm_out, "Write the countermodel to this file");
    add_common(cm, c_cm);
    cm->callback([&] {
        run = [&] {
            if (cm_formula.empty() == cm_tiles.empty()) throw UsageError("give exactly one of --formula, --tiles");
            const Formula f = cm_tiles.empty() ? parse_formula(cm_formula) : phi(parse_tiles(read_file(cm_tiles)));
            CountermodelOptions opt;
            opt.max_worlds = cm_worlds;
            opt.budget = cm_budget;
            opt.seed = c_cm.seed;
            opt.jobs = c_cm.jobs;
            const auto r = countermodel_search(f, opt);
            if (c_cm.lines()) {
                std::cout << "found=" << (r.hit ? "true" : "false") << "\nsteps=" << r.steps
                          << "\nframes=" << r.frames_tried << "\nbudget_exhausted=" << (r.budget_exhausted ? "true" : "false")
                          << "\n";
                if (r.hit) std::cout << "world=" << r.hit->world << "\nworlds=" << r.hit->model.frame.size() << "\n";
            } else if (r.hit) {
                std::cout << "countermodel after " << r.steps << " steps (" << r.frames_tried << " frames), world "
                          << r.hit->world << "\n"
                          << write_model(r.hit->model);
            } else {
                std::cout << "no countermodel found (" << r.steps << " steps, " << r.frames_tried << " frames"
                          << (r.budget_exhausted ? ", budget exhausted" : ", search space exhausted") << ")\n";
            }
            if (r.hit && !cm_out.empty()) {
                std::ofstream out(cm_out);
                out << "# falsified at world " << r.hit->world << "\n" << write_model(r.hit->model);
            }
            return r.hit ? 0 : 1;
        };
    });

    // tile-solve
    Common c_ts;
    std::string ts_tiles;
    std::size_t ts_width = 0, ts_height = 0;
    std::uint64_t ts_budget = kDefaultTilingBudget;
    auto* ts = app.add_subcommand("tile-solve", "Tile a rectangle by backtracking");
    ts->add_option("--tiles", ts_tiles, "Tile set file")->required();
    ts->add_option("--width", ts_width)->required();
    ts->add_option("--height", ts_height)->required();
    ts->add_option("--budget", ts_budget, "Step budget");
    add_common(ts, c_ts);
    ts->callback([&] {
        run = [&] {
            const TileSet w = parse_tiles(read_file(ts_tiles));
            std::optional<Grid> g;
            try {
                g = solve_rect(w, ts_width, ts_height, ts_budget);
            } catch (const BudgetExceeded&) {
                std::cout << (c_ts.lines() ? "status=budget\n" : "budget exceeded\n");
                return 1;
            }
            if (!g) {
                std::cout << (c_ts.lines() ? "status=none\n" : "no tiling\n");
                return 1;
            }
            if (c_ts.lines()) {
                std::cout << "status=tiled\n";
                for (std::size_t r = g->height(); r-- > 0;) {
                    std::cout << "row" << r << "=";
                    for (std::size_t col = 0; col < g->width(); ++col) std::cout << (col ? "," : "") << w[g->at(col, r)].name;
                    std::cout << "\n";
                }
            } else {
                std::cout << render_grid_names(w, *g);
            }
            return 0;
        };
    });

    // tile-torus
    Common c_tt;
    std::string tt_tiles;
    std::size_t tt_max = 4;
    auto* tt = app.add_subcommand("tile-torus", "Find a periodic tiling");
    tt->add_option("--tiles", tt_tiles, "Tile set file")->required();
    tt->add_option("--max-period", tt_max)->check(CLI::Range(std::size_t{1}, kMaxTorusPeriod));
    add_common(tt, c_tt);
    tt->callback([&] {
        run = [&] {
            const TileSet w = parse_tiles(read_file(tt_tiles));
            const auto t = find_torus(w, tt_max);
            if (!t) {
                std::cout << (c_tt.lines() ? "status=none\n" : "no torus tiling\n");
                return 1;
            }
            if (c_tt.lines())
                std::cout << "status=periodic\np=" << t->p << "\nq=" << t->q << "\n";
            else
                std::cout << "period " << t->p << "," << t->q << "\n" << render_grid_names(w, t->cells);
            return 0;
        };
    });

    // tile-render
    Common c_tr;
    std::string tr_tiles, tr_grid;
    std::size_t tr_width = 0, tr_height = 0, tr_torus = 0;
    bool tr_svg = false;
    auto* tr = app.add_subcommand("tile-render", "Render a grid as ASCII or SVG");
    tr->add_option("--tiles", tr_tiles, "Tile set file")->required();
    tr->add_option("--grid", tr_grid, "Grid file: rows of tile names, top row first");
    tr->add_option("--width", tr_width, "Solve a rectangle of this width");
    tr->add_option("--height", tr_height, "Solve a rectangle of this height");
    tr->add_option("--torus", tr_torus, "Unroll the torus found with this maximum period");
    tr->add_flag("--svg", tr_svg, "Emit SVG instead of ASCII");
    add_common(tr, c_tr);
    tr->callback([&] {
        run = [&] {
            const TileSet w = parse_tiles(read_file(tr_tiles));
            std::optional<Grid> g;
            if (!tr_grid.empty()) {
                g = parse_grid(read_file(tr_grid), w);
            } else {
                if (tr_width == 0 || tr_height == 0) throw UsageError("give --grid, or --width and --height");
                if (tr_torus) {
                    if (tr_torus > kMaxTorusPeriod) throw UsageError("--torus must be at most 4");
                    auto t = find_torus(w, tr_torus);
                    if (t) g = unroll(*t, tr_width, tr_height);
                } else {
                    g = solve_rect(w, tr_width, tr_height);
                }
                if (!g) {
                    std::cout << (c_tr.lines() ? "status=none\n" : "no tiling\n");
                    return 1;
                }
            }
            const auto verdict = verify_grid(w, *g);
            if (tr_svg)
                std::cout << render_svg(w, *g);
            else if (!c_tr.lines())
                std::cout << render_ascii(w, *g);
            if (c_tr.lines()) {
                std::cout << "valid=" << (verdict.ok() ? "true" : "false") << "\n";
                if (!verdict.ok())
                    std::cout << "col=" << verdict.mismatch->col << "\nrow=" << verdict.mismatch->row
                              << "\nedge=" << to_string(verdict.mismatch->edge) << "\n";
            } else if (!verdict.ok()) {
                std::cerr << "mismatch at col " << verdict.mismatch->col << ", row " << verdict.mismatch->row << " ("
                          << to_string(verdict.mismatch->edge) << " edge)\n";
            }
            return verdict.ok() ? 0 : 1;
        };
    });

    // extract
    Common c_ex;
    std::string ex_frame, ex_tiles;
    World ex_world = 0;
    std::size_t ex_k = 2;
    bool ex_log = false;
    auto* ex = app.add_subcommand("extract", "Read a tiling off a model refuting the formula of a tile set");
    ex->add_option("--frame", ex_frame, "Model file")->required();
    ex->add_option("--tiles", ex_tiles, "Tile set file")->required();
    ex->add_option("--world", ex_world, "Refuting world")->required();
    ex->add_option("--k", ex_k, "Grid size")->check(CLI::Range(std::size_t{0}, std::size_t{64}));
    ex->add_flag("--log", ex_log, "Print every checked obligation");
    add_common(ex, c_ex);
    ex->callback([&] {
        run = [&] {
            const Model m = parse_model(read_file(ex_frame));
            const TileSet w = parse_tiles(read_file(ex_tiles));
            if (ex_world >= m.frame.size()) throw UsageError("world out of range");
            try {
                const Extraction e = extract_tiling(m, ex_world, w, ex_k);
                if (c_ex.lines()) {
                    std::cout << "status=ok\nobligations=" << e.log.size() << "\n";
                    for (std::size_t n = 1; n <= ex_k; ++n)
                        for (std::size_t mm = 1; mm <= ex_k; ++mm)
                            std::cout << "p" << mm << "_" << n << "=" << e.points.at(mm, n) << " tile="
                                      << w[e.tiling.at(mm - 1, n - 1)].name << "\n";
                } else {
                    std::cout << "extracted " << ex_k << "x" << ex_k << " tiling, " << e.log.size()
                              << " obligations checked\n"
                              << render_grid_names(w, e.tiling);
                }
                if (ex_log)
                    for (const auto& o : e.log) std::cout << (o.ok ? "ok   " : "FAIL ") << o.claim << "\n";
                return 0;
            } catch (const ExtractionError& err) {
                if (c_ex.lines())
                    std::cout << "status=" << to_string(err.kind()) << "\nitem=" << err.item() << "\nindex=" << err.index()
                              << "\n";
                else
                    std::cout << err.what() << "\n";
                return 1;
            }
        };
    });

    // verify-lemma6
    Common c_vl;
    std::string vl_tiles, vl_period = "1,1", vl_mode = "union", vl_cells;
    std::size_t vl_depth = 3;
    auto* vl = app.add_subcommand("verify-lemma6", "Bounded check of the powerset refutation");
    vl->add_option("--tiles", vl_tiles, "Tile set file")->required();
    vl->add_option("--period", vl_period, "Torus periods P,Q");
    vl->add_option("--depth", vl_depth)->check(CLI::Range(std::size_t{0}, kMaxSymbolicDepth));
    vl->add_option("--mode", vl_mode)->check(CLI::IsMember({"union", "disjoint", "nonempty"}));
    vl->add_option("--cells", vl_cells,
                   "Explicit torus: rows of tile names, top row first, rows separated by '/'; skips the adjacency check");
    add_common(vl, c_vl);
    vl->callback([&] {
        run = [&] {
            const TileSet w = parse_tiles(read_file(vl_tiles));
            const auto [p, q] = parse_pair(vl_period);
            if (p == 0 || q == 0 || p > kMaxTorusPeriod || q > kMaxTorusPeriod) throw UsageError("periods must be in 1..4");
            std::optional<TauOracle> tau;
            if (!vl_cells.empty()) {
                std::string text = vl_cells;
                std::replace(text.begin(), text.end(), '/', '\n');
                Grid g = parse_grid(text, w);
                if (g.width() != p || g.height() != q) throw UsageError("--cells does not match --period");
                tau.emplace(w, PeriodicTiling{p, q, std::move(g)}, TauOracle::Unchecked{});
            } else {
                std::uint64_t budget = kDefaultTilingBudget;
                auto t = find_torus_with_period(w, p, q, budget);
                if (!t) {
                    std::cout << (c_vl.lines() ? "status=no-torus\n" : "no torus tiling with that period\n");
                    return 1;
                }
                tau.emplace(w, std::move(*t));
            }
            const auto rep = check_refutation(*tau, vl_depth, parse_powerset_mode(vl_mode));
            if (c_vl.lines()) {
                std::cout << "mode=" << to_string(rep.mode) << "\ndepth=" << rep.depth << "\nuniverse=" << rep.universe_size
                          << "\n";
                for (const auto& c : rep.conjuncts)
                    std::cout << "conjunct=" << c.name << " status=" << (c.pass ? "pass" : "fail") << " state=" << render(c.state)
                              << "\n";
            } else {
                std::cout << "mode " << to_string(rep.mode) << ", depth " << rep.depth << ", " << rep.universe_size
                          << " states\n";
                for (const auto& c : rep.conjuncts)
                    std::cout << "  " << c.name << ": " << (c.pass ? "pass" : "FAIL at " + render(c.state)) << "  ["
                              << c.justification << "]\n";
                std::cout << "note: " << RefutationReport::kScope << "\n";
            }
            return rep.all_pass() ? 0 : 1;
        };
    });

    // ptl-decide
    Common c_ptl;
    std::string ptl_text;
    auto* ptl = app.add_subcommand("ptl-decide", "Decide validity in propositional team logic");
    ptl->add_option("formula", ptl_text)->required();
    add_common(ptl, c_ptl);
    ptl->callback([&] {
        run = [&] {
            const TeamFormula f = parse_team_formula(ptl_text);
            const auto v = ptl_decide(f);
            if (c_ptl.lines()) {
                std::cout << "valid=" << (v.valid ? "true" : "false") << "\n";
                if (!v.valid) std::cout << "counterteam=" << render_team(*v.counterteam) << "\n";
            } else if (v.valid) {
                std::cout << "valid\n";
            } else {
                std::cout << "not valid; counterteam " << render_team(*v.counterteam) << "\n";
            }
            return v.valid ? 0 : 1;
        };
    });

    // enum-frames
    Common c_en;
    unsigned en_worlds = 2;
    bool en_assoc = false, en_list = false;
    auto* en = app.add_subcommand("enum-frames", "Enumerate frames up to isomorphism");
    en->add_option("--worlds", en_worlds)->check(CLI::Range(1u, 3u));
    en->add_flag("--assoc", en_assoc, "Only associative frames");
    en->add_flag("--list", en_list, "Print every frame");
    add_common(en, c_en);
    en->callback([&] {
        run = [&] {
            const auto frames = collect_frames(en_worlds, en_assoc, c_en.jobs);
            std::cout << (c_en.lines() ? "count=" : "frames: ") << frames.size() << "\n";
            if (en_list)
                for (const auto& f : frames) std::cout << "---\n" << write_model(Model(f));
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return run();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const FrameFormatError& e) {
        std::cerr << "frame file: " << e.what() << "\n";
        return 2;
    } catch (const TileSetError& e) {
        std::cerr << "tile file: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
