/*
 * Copyright 2026 The pgg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pgg/eval/eval.hpp"
#include "pgg/features/features.hpp"
#include "pgg/game/io.hpp"
#include "pgg/gt/ground_truth.hpp"
#include "pgg/ltl/parser.hpp"
#include "pgg/ranker/ranker.hpp"
#include "pgg/translation/translation.hpp"
#include "pgg/util/hash.hpp"

using namespace pgg;
using nlohmann::json;

namespace {

// Bad flag values found after parsing; reported like parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    bool json_out = false;
    std::uint64_t seed = 1;
    int jobs = 1;
};

template <typename F>
void
check_usage(F f)
{
    try {
        f();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

void
emit(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::set<std::string>
to_set(const std::vector<std::string> &v)
{
    return {v.begin(), v.end()};
}

// A game file is pgg JSON (labeled or plain) or PGSolver text.
struct LoadedGame {
    std::optional<translation::LabeledGame> labeled;
    game::ParityGame plain;

    const game::ParityGame &game() const { return labeled ? labeled->game : plain; }
};

LoadedGame
load_game(const std::string &path)
{
    const std::string text = read_file(path);
    LoadedGame out;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        out.plain = game::import_pgsolver(text);
        return out;
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (j.contains("labels")) {
        out.labeled = translation::labeled_game_from_json(j);
    } else {
        out.plain = game::game_from_json(j);
    }
    return out;
}

const translation::LabeledGame &
need_labels(const LoadedGame &g, const std::string &path)
{
    if (!g.labeled) throw std::runtime_error(path + " has no state labels; produce it with `pgg translate`");
    return *g.labeled;
}

json
load_json(const std::string &path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

eval::Corpus
load_corpus(const std::string &path, const std::string &split, std::uint64_t seed)
{
    eval::Corpus c = eval::corpus_from_tsv(read_file(path), seed);
    if (split == "all") return c;
    eval::Corpus out;
    out.entries = c.split(eval::parse_split(split));
    return out;
}

void
add_gt_options(CLI::App *cmd, gt::GtParams &p)
{
    cmd->add_option("--beta", p.beta, "Discount per ply, in (0,1)")->capture_default_str();
    cmd->add_option("--depth", p.depth, "Plies unfolded below each root")->capture_default_str();
    cmd->add_option("--samples", p.samples, "Simulations per frontier edge")->capture_default_str();
    cmd->add_option("--threshold", p.threshold, "Environment pruning window")->capture_default_str();
    cmd->add_option("--node-budget", p.node_budget, "Tree nodes per root before the depth shrinks")->capture_default_str();
    cmd->add_flag("!--no-prune", p.prune, "Keep every Environment edge");
    cmd->add_flag("!--no-scc-cache", p.scc_cache, "Unfold across SCC boundaries instead of reusing values");
    cmd->add_flag("--frontier-path", p.frontier_path, "Frontier simulations see the tree path above them");
}

void
print_warnings(const std::vector<std::string> &w)
{
    for (const auto &s : w) std::cerr << "warning: " << s << '\n';
}

// --- subcommands ---

struct TranslateArgs {
    std::string formula;
    std::vector<std::string> sys, env;
    bool complement = false;
    std::size_t max_vertices = 20000;
    std::string out;
};

int
run_translate(const Global &gl, const TranslateArgs &a)
{
    const ltl::Formula f = ltl::parse(a.formula);
    ltl::Partition p;
    p.system = to_set(a.sys);
    p.environment = to_set(a.env);
    for (const auto &atom : ltl::atoms_of(f)) {
        if (!p.system.count(atom)) p.environment.insert(atom);
    }
    if (!p.disjoint()) throw UsageError("a proposition is listed for both players");
    translation::BuildOptions opts;
    opts.max_vertices = a.max_vertices;
    const translation::LabeledGame g = a.complement ? translation::complement_game(f, p, opts) : translation::build_game(f, p, opts);
    const std::string doc = translation::labeled_game_to_json(g).dump(2) + "\n";
    const auto reach = game::reachable(g.game, g.game.initial());
    int reachable = 0;
    for (bool r : reach) reachable += r;
    const json summary{{"formula", g.formula.to_string()},
                       {"fragment", translation::fragment_name(g.fragment)},
                       {"complement", g.complement},
                       {"vertices", g.num_vertices()},
                       {"reachable", reachable},
                       {"edges", g.game.num_edges()},
                       {"hash", content_hash(doc)}};
    if (a.out.empty()) {
        std::cout << doc;
        return 0;
    }
    write_file(a.out, doc);
    if (gl.json_out) {
        std::cout << summary.dump() << '\n';
    } else {
        std::cout << "translated " << g.formula.to_string() << " (" << translation::fragment_name(g.fragment) << "): "
                  << g.num_vertices() << " vertices, " << reachable << " reachable, " << g.game.num_edges() << " edges\n";
    }
    return 0;
}

struct SolveArgs {
    std::string game;
    std::string algorithm = "zielonka";
    std::string export_pgsolver;
};

int
run_solve(const Global &gl, const SolveArgs &a)
{
    const LoadedGame lg = load_game(a.game);
    const game::ParityGame &g = lg.game();
    game::SolveResult r;
    if (a.algorithm == "zielonka") {
        r = game::zielonka_solve(g);
    } else {
        r = game::strategy_iteration(g, game::complete_strategy(g, game::Strategy(game::Player::System, g.num_vertices())),
                                     a.algorithm == "si-losing" ? game::SwitchRule::LosingOnly : game::SwitchRule::AllProfitable);
    }
    if (!a.export_pgsolver.empty()) {
        std::vector<std::string> warnings;
        write_file(a.export_pgsolver, game::export_pgsolver(g, &warnings));
        print_warnings(warnings);
    }
    const game::Player w = r.winner[g.initial()];
    if (gl.json_out) {
        json strategy = json::object();
        for (int v = 0; v < g.num_vertices(); v++) {
            if (r.system.defined(v)) strategy[std::to_string(v)] = {{"edge", r.system[v]}, {"dst", g.edge(r.system[v]).dst}};
        }
        std::cout << json{{"winner", game::player_name(w)},
                          {"initial", g.initial()},
                          {"system_region", r.region(game::Player::System)},
                          {"environment_region", r.region(game::Player::Environment)},
                          {"system_strategy", strategy},
                          {"rounds", r.rounds}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "winner: " << game::player_name(w) << " (System region " << r.region(game::Player::System).size() << " of "
                  << g.num_vertices() << " vertices)\n";
    }
    return 0;
}

struct GtArgs {
    std::string game;
    gt::GtParams params;
    std::string out;
};

int
run_gt(const Global &gl, GtArgs a)
{
    a.params.seed = gl.seed;
    check_usage([&] { a.params.validate(); });
    const LoadedGame lg = load_game(a.game);
    const gt::GroundTruthTable t =
        lg.labeled ? gt::compute_ground_truth(*lg.labeled, a.params) : gt::compute_ground_truth(lg.plain, a.params);
    const std::string csv = gt::table_to_csv(t, lg.game(), lg.labeled ? &*lg.labeled : nullptr);
    json sidecar = gt::table_sidecar(t);
    sidecar["table_hash"] = content_hash(csv);
    if (!t.notice.empty()) std::cerr << "notice: " << t.notice << '\n';
    if (a.out.empty()) {
        std::cout << csv;
        return 0;
    }
    write_file(a.out, csv);
    write_file(a.out + ".json", sidecar.dump(2) + "\n");
    if (gl.json_out) {
        std::cout << sidecar.dump() << '\n';
    } else {
        std::cout << "ground truth for " << t.size() << " edges written to " << a.out << '\n';
    }
    return 0;
}

struct FeaturesArgs {
    std::string game;
    std::string out;
};

int
run_features(const Global &, const FeaturesArgs &a)
{
    const LoadedGame lg = load_game(a.game);
    const auto &g = need_labels(lg, a.game);
    const auto &schema = features::default_schema();
    emit(a.out, features::features_csv_header(schema) + features::features_csv_rows(content_hash(read_file(a.game)), g, schema));
    return 0;
}

struct DatasetArgs {
    std::string corpus;
    std::string split = "train";
    gt::GtParams params;
    int pair_cap = 200;
    std::string gt_dir;
    std::string out;
};

int
run_dataset(const Global &gl, DatasetArgs a)
{
    a.params.seed = gl.seed;
    ranker::TrainConfig cfg;
    cfg.pair_cap = a.pair_cap;
    cfg.seed = gl.seed;
    check_usage([&] {
        a.params.validate();
        cfg.validate();
    });
    const eval::Corpus c = load_corpus(a.corpus, a.split, gl.seed);
    std::vector<std::string> warnings;
    const auto games = eval::prepare_games(c.entries, a.params, gl.jobs, &warnings);
    if (!a.gt_dir.empty()) {
        std::filesystem::create_directories(a.gt_dir);
        for (const auto &p : games) {
            write_file(a.gt_dir + "/" + p.entry.id() + ".csv", gt::table_to_csv(p.truth, p.game.game, &p.game));
        }
    }
    ranker::PairDataset d = ranker::build_pair_dataset(eval::records(games), cfg);
    warnings.insert(warnings.end(), d.warnings.begin(), d.warnings.end());
    d.warnings = warnings;
    json doc = ranker::dataset_to_json(d);
    doc["corpus_hash"] = content_hash(read_file(a.corpus));
    doc["split"] = a.split;
    doc["gt_params"] = a.params.to_json();
    doc["games"] = games.size();
    emit(a.out, doc.dump() + "\n");
    print_warnings(warnings);
    if (!a.out.empty()) {
        const json s{{"games", games.size()}, {"pairs", d.size()}, {"hash", d.hash()}};
        std::cout << (gl.json_out ? s.dump() : "pair dataset: " + std::to_string(d.size()) + " pairs from " + std::to_string(games.size()) + " games") << '\n';
    }
    return 0;
}

struct TrainArgs {
    std::string train, validation;
    ranker::TrainConfig cfg;
    std::string out;
};

int
run_train(const Global &gl, TrainArgs a)
{
    a.cfg.seed = gl.seed;
    check_usage([&] { a.cfg.validate(); });
    const ranker::PairDataset train = ranker::dataset_from_json(load_json(a.train));
    std::optional<ranker::PairDataset> val;
    if (!a.validation.empty()) val = ranker::dataset_from_json(load_json(a.validation));
    const ranker::RankerBank bank = ranker::train_bank(train, val ? &*val : nullptr, a.cfg);
    const std::string doc = bank.to_json().dump(2) + "\n";
    emit(a.out, doc);
    print_warnings(bank.warnings);
    if (a.out.empty()) return 0;
    json models = json::array();
    for (int m = 0; m < ranker::num_models; m++) {
        if (!bank.models[m]) continue;
        const auto &lm = *bank.models[m];
        models.push_back({{"class", features::state_class_name(static_cast<features::StateClass>(m / 2))},
                          {"complement", m % 2 == 1},
                          {"features", lm.features.size()},
                          {"samples", lm.samples},
                          {"train_accuracy", lm.train_accuracy},
                          {"validation_accuracy", lm.validation_accuracy}});
    }
    if (gl.json_out) {
        std::cout << json{{"bank_hash", content_hash(bank.to_json().dump())}, {"models", models}}.dump() << '\n';
    } else {
        for (const auto &m : models) {
            std::cout << m["class"].get<std::string>() << (m["complement"].get<bool>() ? "/complement" : "") << ": "
                      << m["features"] << " features, " << m["samples"] << " samples, train accuracy " << m["train_accuracy"] << '\n';
        }
    }
    return 0;
}

ranker::RankerBank
load_bank(const std::string &path)
{
    ranker::RankerBank b = ranker::RankerBank::from_json(load_json(path));
    if (b.schema_id != features::default_schema().id()) {
        throw std::runtime_error(path + " was trained on feature schema " + b.schema_id + ", this build uses " + features::default_schema().id());
    }
    return b;
}

struct RecommendArgs {
    std::string game, models, out;
};

int
run_recommend(const Global &gl, const RecommendArgs &a)
{
    const LoadedGame lg = load_game(a.game);
    const auto &g = need_labels(lg, a.game);
    const ranker::RankerBank bank = a.models.empty() ? ranker::RankerBank{} : load_bank(a.models);
    const game::Strategy s = ranker::recommend_strategy(g, bank);
    json choices = json::array();
    for (int v = 0; v < g.num_vertices(); v++) {
        if (!s.defined(v)) continue;
        choices.push_back({{"vertex", v}, {"edge", s[v]}, {"dst", g.game.edge(s[v]).dst}, {"valuation", g.edge_data(s[v]).valuation.to_string()}});
    }
    const bool wins = game::zielonka_solve(g.game).winner[g.game.initial()] == game::Player::System;
    json doc{{"game_hash", content_hash(read_file(a.game))}, {"strategy", choices}, {"immediately_solved", wins && eval::immediately_solved(g, s)}};
    if (!a.models.empty()) doc["bank_hash"] = content_hash(bank.to_json().dump());
    if (wins) doc["relative_distance"] = eval::relative_distance(g, s);
    if (!a.out.empty() || gl.json_out) {
        emit(a.out, doc.dump(2) + "\n");
        if (a.out.empty()) return 0;
    }
    if (!gl.json_out) {
        std::cout << "recommended " << choices.size() << " choices; immediately solved: " << (doc["immediately_solved"].get<bool>() ? "yes" : "no") << '\n';
    }
    return 0;
}

struct EvalArgs {
    std::string corpus, split = "all", models, out, summary;
};

int
run_eval(const Global &gl, const EvalArgs &a)
{
    const eval::Corpus c = load_corpus(a.corpus, a.split, gl.seed);
    std::optional<ranker::RankerBank> bank;
    if (!a.models.empty()) bank = load_bank(a.models);
    std::vector<std::string> warnings;
    const eval::EvalReport r = eval::evaluate(c.entries, bank ? &*bank : nullptr, gl.seed, gl.jobs, &warnings);
    print_warnings(warnings);
    json summary = r.summary();
    summary["corpus_hash"] = content_hash(read_file(a.corpus));
    summary["split"] = a.split;
    if (!a.summary.empty()) write_file(a.summary, summary.dump(2) + "\n");
    if (a.out.empty()) {
        std::cout << (gl.json_out ? summary.dump() + "\n" : r.to_csv());
        return 0;
    }
    write_file(a.out, r.to_csv());
    if (gl.json_out) {
        std::cout << summary.dump() << '\n';
        return 0;
    }
    std::printf("%zu games, %d realizable, %d unsolved by every method\n", r.rows.size(), summary["realizable"].get<int>(), r.unsolved_by_all());
    for (int m = 0; m < eval::num_methods; m++) {
        std::printf("  %-9s solved %6.1f%%  distance %s\n", eval::method_names[m], 100 * r.solved_fraction(m),
                    summary["methods"][eval::method_names[m]]["distance_geomean"].dump().c_str());
    }
    if (!r.has_model) std::printf("  (%s)\n", summary["notice"].get<std::string>().c_str());
    return 0;
}

struct CorpusArgs {
    eval::CorpusParams params;
    std::vector<std::string> families{"parity"};
    bool include_unrealizable = false;
    std::string out, split_dir;
};

int
run_gen_corpus(const Global &gl, CorpusArgs a)
{
    a.params.seed = gl.seed;
    a.params.realizable_only = !a.include_unrealizable;
    a.params.families.clear();
    for (const auto &f : a.families) {
        try {
            a.params.families.push_back(eval::parse_family(f));
        } catch (const eval::EvalError &e) {
            throw UsageError(e.what());
        }
    }
    const eval::Corpus c = eval::generate_corpus(a.params);
    emit(a.out, eval::corpus_to_tsv(c));
    if (!a.split_dir.empty()) {
        std::filesystem::create_directories(a.split_dir);
        for (eval::Split s : {eval::Split::Train, eval::Split::Validation, eval::Split::Test}) {
            eval::Corpus part;
            part.entries = c.split(s);
            write_file(a.split_dir + "/" + eval::split_name(s) + ".tsv", eval::corpus_to_tsv(part));
        }
    }
    if (a.out.empty()) return 0;
    const json s{{"entries", c.entries.size()},
                 {"train", c.split(eval::Split::Train).size()},
                 {"validation", c.split(eval::Split::Validation).size()},
                 {"test", c.split(eval::Split::Test).size()}};
    std::cout << (gl.json_out ? s.dump() : "corpus: " + std::to_string(c.entries.size()) + " formulas") << '\n';
    return 0;
}

}  // namespace

int
main(int argc, char **argv)
{
    CLI::App app{"Parity-game guidance: translation, ground truth, ranking and evaluation", "pgg"};
    app.set_config("--config", "", "TOML or INI file with flag defaults; flags given on the command line win");
    app.require_subcommand(1);
    app.fallthrough();
    Global gl;
    app.add_flag("--json", gl.json_out, "Machine-readable results on stdout");
    app.add_option("--seed", gl.seed, "Seed for every stochastic step")->capture_default_str();
    app.add_option("--jobs", gl.jobs, "Games processed in parallel")->check(CLI::PositiveNumber)->capture_default_str();

    TranslateArgs ta;
    auto *translate = app.add_subcommand("translate", "Build the labeled parity game of a formula");
    translate->add_option("--formula,-f", ta.formula, "LTL formula")->required();
    translate->add_option("--sys", ta.sys, "System propositions")->delimiter(',');
    translate->add_option("--env", ta.env, "Environment propositions (default: every other atom)")->delimiter(',');
    translate->add_flag("--complement", ta.complement, "Build the game of the negation with the roles swapped");
    translate->add_option("--max-vertices", ta.max_vertices, "Abort beyond this many vertices")->capture_default_str();
    translate->add_option("--out,-o", ta.out, "Game JSON path (default: stdout)");

    SolveArgs sa;
    auto *solve = app.add_subcommand("solve", "Solve a parity game");
    solve->add_option("--game,-g", sa.game, "Game file: pgg JSON or PGSolver")->required()->check(CLI::ExistingFile);
    solve->add_option("--algorithm", sa.algorithm, "zielonka, si or si-losing")
        ->check(CLI::IsMember({"zielonka", "si", "si-losing"}))
        ->capture_default_str();
    solve->add_option("--export-pgsolver", sa.export_pgsolver, "Also write the game in PGSolver format");

    GtArgs ga;
    auto *gtc = app.add_subcommand("gt", "Ground-truth edge values of a game");
    gtc->add_option("--game,-g", ga.game, "Game file")->required()->check(CLI::ExistingFile);
    add_gt_options(gtc, ga.params);
    gtc->add_option("--out,-o", ga.out, "CSV path; a .json sidecar is written next to it (default: CSV on stdout)");

    FeaturesArgs fa;
    auto *feat = app.add_subcommand("features", "Per-edge feature vectors of a labeled game");
    feat->add_option("--game,-g", fa.game, "Labeled game JSON")->required()->check(CLI::ExistingFile);
    feat->add_option("--out,-o", fa.out, "CSV path (default: stdout)");

    DatasetArgs da;
    auto *dataset = app.add_subcommand("dataset", "Pairwise training samples from a corpus");
    dataset->add_option("--corpus,-c", da.corpus, "Corpus TSV")->required()->check(CLI::ExistingFile);
    dataset->add_option("--split", da.split, "train, validation, test or all")
        ->check(CLI::IsMember({"train", "validation", "test", "all"}))
        ->capture_default_str();
    add_gt_options(dataset, da.params);
    dataset->add_option("--pair-cap", da.pair_cap, "Edge pairs kept per game")->capture_default_str();
    dataset->add_option("--gt-dir", da.gt_dir, "Also write each game's ground-truth CSV here");
    dataset->add_option("--out,-o", da.out, "Dataset JSON path (default: stdout)");

    TrainArgs tra;
    auto *train = app.add_subcommand("train", "Train the ranker bank");
    train->add_option("--train", tra.train, "Training pair dataset")->required()->check(CLI::ExistingFile);
    train->add_option("--validation", tra.validation, "Validation pair dataset")->check(CLI::ExistingFile);
    train->add_option("--lambda", tra.cfg.lambda, "L2 weight")->capture_default_str();
    train->add_option("--epochs", tra.cfg.epochs, "Passes over the data")->capture_default_str();
    train->add_option("--eta0", tra.cfg.eta0, "Initial step size")->capture_default_str();
    train->add_option("--min-features", tra.cfg.min_features, "Lower end of feature elimination")->capture_default_str();
    train->add_option("--max-features", tra.cfg.max_features, "Upper end of feature elimination")->capture_default_str();
    train->add_option("--max-validation-drop", tra.cfg.max_validation_drop, "Accuracy loss tolerated per elimination step")
        ->capture_default_str();
    train->add_option("--out,-o", tra.out, "Bank JSON path (default: stdout)");

    RecommendArgs ra;
    auto *recommend = app.add_subcommand("recommend", "Recommended System strategy for a labeled game");
    recommend->add_option("--game,-g", ra.game, "Labeled game JSON")->required()->check(CLI::ExistingFile);
    recommend->add_option("--models,-m", ra.models, "Ranker bank (default: trueness fallback)")->check(CLI::ExistingFile);
    recommend->add_option("--out,-o", ra.out, "Strategy JSON path");

    EvalArgs ea;
    auto *evalc = app.add_subcommand("eval", "Compare the ranker with the trueness and random baselines");
    evalc->add_option("--corpus,-c", ea.corpus, "Corpus TSV")->required()->check(CLI::ExistingFile);
    evalc->add_option("--split", ea.split, "train, validation, test or all")
        ->check(CLI::IsMember({"train", "validation", "test", "all"}))
        ->capture_default_str();
    evalc->add_option("--models,-m", ea.models, "Ranker bank (default: trueness fallback)")->check(CLI::ExistingFile);
    evalc->add_option("--out,-o", ea.out, "Report CSV path (default: stdout)");
    evalc->add_option("--summary", ea.summary, "Summary JSON path");

    CorpusArgs ca;
    auto *gen = app.add_subcommand("gen-corpus", "Generate a seeded formula corpus");
    gen->add_option("--families", ca.families, "safety, cosafety, near, parity")->delimiter(',')->capture_default_str();
    gen->add_option("--per-family", ca.params.per_family, "Formulas per family")->capture_default_str();
    gen->add_option("--sys", ca.params.system_props, "System propositions")->delimiter(',')->capture_default_str();
    gen->add_option("--env", ca.params.environment_props, "Environment propositions")->delimiter(',')->capture_default_str();
    gen->add_option("--depth", ca.params.depth, "Nesting depth of generated subformulas")->capture_default_str();
    gen->add_option("--max-goals", ca.params.max_goals, "Top-level conjuncts, up to")->capture_default_str();
    gen->add_option("--min-decisions", ca.params.min_decisions, "Reachable System vertices with a real choice, at least")
        ->capture_default_str();
    gen->add_option("--mutate", ca.params.mutate_fraction, "Chance of adding a mutated copy per formula")->capture_default_str();
    gen->add_option("--translate-budget", ca.params.translate_budget_seconds, "Seconds per translation")->capture_default_str();
    gen->add_option("--max-vertices", ca.params.max_vertices, "Largest accepted game")->capture_default_str();
    gen->add_flag("--include-unrealizable", ca.include_unrealizable, "Keep formulas System cannot win");
    gen->add_option("--out,-o", ca.out, "Corpus TSV path (default: stdout)");
    gen->add_option("--split-dir", ca.split_dir, "Also write train.tsv, validation.tsv and test.tsv here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*translate) return run_translate(gl, ta);
        if (*solve) return run_solve(gl, sa);
        if (*gtc) return run_gt(gl, ga);
        if (*feat) return run_features(gl, fa);
        if (*dataset) return run_dataset(gl, da);
        if (*train) return run_train(gl, tra);
        if (*recommend) return run_recommend(gl, ra);
        if (*evalc) return run_eval(gl, ea);
        if (*gen) return run_gen_corpus(gl, ca);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
