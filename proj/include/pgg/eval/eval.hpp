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

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgg/game/parity_game.hpp"
#include "pgg/gt/ground_truth.hpp"
#include "pgg/ltl/formula.hpp"
#include "pgg/ranker/ranker.hpp"
#include "pgg/translation/translation.hpp"
#include "pgg/util/random.hpp"

namespace pgg::eval {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- metrics ---

bool immediately_solved(const game::ParityGame &g, const game::Strategy &s);
bool immediately_solved(const translation::LabeledGame &g, const game::Strategy &s);

// Share of reachable System vertices whose choice differs from the
// winning strategy that strategy iteration reaches when started from s,
// counting differences only where that strategy's plays can go.
double relative_distance(const game::ParityGame &g, const game::Strategy &s);
double relative_distance(const translation::LabeledGame &g, const game::Strategy &s);

// Successor with the most true master formula per System vertex.
game::Strategy baseline_trueness(const translation::LabeledGame &g);
game::Strategy baseline_random(const translation::LabeledGame &g, std::uint64_t seed);

double logistic(double x);

// Value of moving from Environment choice p to q through one System
// choice: min over the System choices in between of
// logistic(rank score of the edge into q) * trueness(master of q).
double exploration_score(const translation::LabeledGame &g, const ranker::RankerBank &bank, int p, int q);

// Replaces one uniformly chosen temporal operator by a different one of
// the same arity; retries up to 20 times until the result is translatable.
ltl::Formula mutate_formula(const ltl::Formula &f, std::uint64_t seed);

// --- corpus ---

enum class Provenance { Original, Mutated, Generated };
enum class Split { Train, Validation, Test };
enum class Family { Safety, CoSafety, Near, Parity };

const char *provenance_name(Provenance p);
const char *split_name(Split s);
const char *family_name(Family f);
Provenance parse_provenance(const std::string &s);
Split parse_split(const std::string &s);
Family parse_family(const std::string &s);

struct CorpusEntry {
    std::string formula;
    std::set<std::string> system;  // every other atom belongs to the environment
    Provenance provenance = Provenance::Generated;
    Split split = Split::Train;
    std::uint64_t seed = 0;

    ltl::Formula parsed() const;
    ltl::Partition partition() const;
    std::string id() const;  // content hash of formula and System props
};

struct Corpus {
    std::vector<CorpusEntry> entries;

    std::vector<CorpusEntry> split(Split s) const;
};

// Orders entries by a seeded hash of their id and tags the first 60% as
// train, the next 20% as validation and the rest as test.
void assign_splits(Corpus &c, std::uint64_t seed);

// formula TAB system-props TAB provenance [TAB split]
std::string corpus_to_tsv(const Corpus &c);
Corpus corpus_from_tsv(const std::string &text, std::uint64_t split_seed = 0);

struct CorpusParams {
    std::vector<Family> families{Family::Parity};
    int per_family = 50;
    std::vector<std::string> system_props{"a", "b", "c"};
    std::vector<std::string> environment_props{"d", "e", "f"};
    int depth = 2;
    int max_goals = 3;      // top-level conjuncts drawn uniformly from 1..max_goals
    int min_decisions = 8;  // reachable System vertices with a real choice
    double mutate_fraction = 0.0;
    double translate_budget_seconds = 10.0;
    std::size_t max_vertices = 2000;
    bool realizable_only = true;
    std::uint64_t seed = 1;
};

Corpus generate_corpus(const CorpusParams &p);
ltl::Formula random_family_formula(Family f, Rng &rng, const CorpusParams &p);

// --- pipeline ---

struct PreparedGame {
    CorpusEntry entry;
    translation::LabeledGame game;
    gt::GroundTruthTable truth;
};

// Translates every entry and computes its ground truth, in parallel over
// games; output order follows the input.
std::vector<PreparedGame> prepare_games(const std::vector<CorpusEntry> &entries, const gt::GtParams &params, int jobs = 1,
                                        std::vector<std::string> *warnings = nullptr);
std::vector<ranker::GameRecord> records(const std::vector<PreparedGame> &games);

constexpr const char *method_names[] = {"model", "trueness", "random"};
constexpr int num_methods = 3;

struct GameRow {
    std::string id;
    std::string formula;
    int vertices = 0;
    int reachable_system = 0;
    game::Player winner = game::Player::System;
    bool solved[num_methods] = {false, false, false};
    double distance[num_methods] = {0, 0, 0};  // NaN when System loses
};

struct EvalReport {
    std::vector<GameRow> rows;
    bool has_model = true;
    std::string bank_hash;

    double solved_fraction(int method) const;
    // Geometric mean over games that no method solved immediately.
    double distance_geomean(int method) const;
    int unsolved_by_all() const;
    std::string to_csv() const;
    nlohmann::json summary() const;
};

GameRow evaluate_game(const std::string &id, const translation::LabeledGame &g, const ranker::RankerBank *bank,
                      std::uint64_t seed);
EvalReport evaluate(const std::vector<CorpusEntry> &entries, const ranker::RankerBank *bank, std::uint64_t seed,
                    int jobs = 1, std::vector<std::string> *warnings = nullptr);

}  // namespace pgg::eval
