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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgg/game/parity_game.hpp"

namespace pgg::translation {
struct LabeledGame;
}

namespace pgg::gt {

// Game-tree conventions shared by every evaluator here:
//  - a ply closes the play when its target is already on the path, or when
//    the target is absorbing (all its edges are self-loops); the closed loop
//    decides the leaf: 1 if System wins it, else 0;
//  - every ply multiplies by beta, so a win closed k plies below the root
//    is worth beta^k;
//  - System nodes take the max over their edges, Environment nodes the min.

struct GtParams {
    double beta = 0.95;
    int depth = 7;                 // plies unfolded below each root
    int samples = 1000;            // simulations per frontier edge
    double threshold = 0.02;       // Environment pruning window
    bool prune = true;
    bool scc_cache = true;
    bool frontier_path = false;    // frontier simulations see the tree path above them
    std::uint64_t seed = 1;
    std::size_t node_budget = 400000;  // per root; the depth shrinks when exceeded

    void validate() const;
    nlohmann::json to_json() const;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Target is absorbing; the owner picks among its self-loops.
bool is_absorbing(const game::ParityGame &g, int v);
bool absorbing_system_wins(const game::ParityGame &g, int v);

// Full unfolding of the tree below edge e, no shortcuts.
double exact_tree_value(const game::ParityGame &g, int e, double beta, std::size_t node_budget = 5000000);

// Mean of params.samples guided simulations starting with edge e.
// `winner` is the solved winner per vertex. `prefix` is the edge path
// already played before e; loops may close on it, plies count from e.
double mcts_value(const game::ParityGame &g, const std::vector<game::Player> &winner, int e, const GtParams &params,
                  const std::vector<int> &prefix = {});

struct GroundTruthTable {
    std::vector<double> value;      // per edge; NaN where no entry
    std::vector<bool> trivial;      // per edge: one-step absorbing lookahead decides it
    std::vector<double> vertex_value;
    GtParams params;
    std::string game_hash;
    int sccs = 0;
    int cache_hits = 0;
    int depth_reductions = 0;
    std::string notice;

    bool has(int e) const { return e >= 0 && e < static_cast<int>(value.size()) && value[e] == value[e]; }
    double at(int e) const;
    std::size_t size() const;
};

GroundTruthTable compute_ground_truth(const game::ParityGame &g, const GtParams &params);
GroundTruthTable compute_ground_truth(const translation::LabeledGame &g, const GtParams &params);

// edge_src,edge_dst,valuation,value; valuations come from the labels when given
std::string table_to_csv(const GroundTruthTable &t, const game::ParityGame &g,
                         const translation::LabeledGame *labels = nullptr);
nlohmann::json table_sidecar(const GroundTruthTable &t);

}  // namespace pgg::gt
