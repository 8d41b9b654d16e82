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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgg/features/features.hpp"
#include "pgg/game/parity_game.hpp"
#include "pgg/gt/ground_truth.hpp"
#include "pgg/translation/translation.hpp"

namespace pgg::ranker {

using features::StateClass;

// Models are keyed by state class and complement flag.
constexpr int num_models = 2 * features::num_state_classes;
int model_index(StateClass c, bool complement);

struct TrainConfig {
    double lambda = 1e-3;
    int epochs = 40;
    double eta0 = 0.1;  // step size eta0 / (1 + lambda * eta0 * t)
    int pair_cap = 200;  // unordered pairs per game
    int min_features = 30;
    int max_features = 40;
    double max_validation_drop = 0.01;
    std::uint64_t seed = 1;

    void validate() const;
    nlohmann::json to_json() const;
};

struct PairSample {
    std::vector<double> x;  // features of e1 followed by features of e2
    int y = 0;              // +1 iff gt(e1) > gt(e2)
    StateClass state_class = StateClass::Other;
    bool complement = false;
    std::string game_id;
};

struct GameRecord {
    std::string id;
    const translation::LabeledGame *game = nullptr;
    const gt::GroundTruthTable *truth = nullptr;
};

struct PairDataset {
    std::array<std::vector<PairSample>, num_models> samples;
    std::vector<std::string> warnings;

    std::size_t size() const;
    std::string hash() const;
};

PairDataset build_pair_dataset(const std::vector<GameRecord> &games, const TrainConfig &cfg);
nlohmann::json dataset_to_json(const PairDataset &d);
// Throws std::runtime_error on a schema or hash mismatch.
PairDataset dataset_from_json(const nlohmann::json &j);

struct LinearModel {
    std::vector<int> features;  // positions in the per-edge vector
    std::vector<double> mean, stddev, weights;  // 2 * features.size() each
    double bias = 0.0;
    double train_accuracy = 0.0;
    double validation_accuracy = -1.0;  // -1 without a validation set
    std::size_t samples = 0;

    // Signed distance of the standardized pair (a, b) to the hyperplane.
    double margin(const std::vector<double> &a, const std::vector<double> &b) const;
    // (margin(a,b) - margin(b,a)) / 2, antisymmetric by construction.
    double confidence(const std::vector<double> &a, const std::vector<double> &b) const;
    double accuracy(const std::vector<PairSample> &data) const;
};

// Hinge loss with L2 regularization, subgradient descent in a seeded
// fixed order. Features with zero variance are dropped from `features`.
LinearModel train_model(const std::vector<PairSample> &data, std::vector<int> features, const TrainConfig &cfg,
                        const std::vector<PairSample> *validation = nullptr);

// Drops features (both pair copies at once) with the smallest combined
// absolute weight down to cfg.max_features, then further towards
// cfg.min_features while validation accuracy holds.
LinearModel feature_elimination(const std::vector<PairSample> &data, std::vector<int> features, const TrainConfig &cfg,
                                const std::vector<PairSample> *validation = nullptr);

struct RankerBank {
    std::string schema_id;
    std::array<std::optional<LinearModel>, num_models> models;
    TrainConfig config;
    std::string dataset_hash;
    std::vector<std::string> warnings;

    const LinearModel *model(StateClass c, bool complement) const;
    nlohmann::json to_json() const;
    static RankerBank from_json(const nlohmann::json &j);
};

RankerBank train_bank(const PairDataset &train, const PairDataset *validation, const TrainConfig &cfg);

// Tie-break key: (target vertex, System letter bits).
std::pair<int, std::uint64_t> edge_order_key(const translation::LabeledGame &g, int e);
double successor_trueness(const translation::LabeledGame &g, int e);

struct Ranking {
    std::vector<int> edges;      // best first
    std::vector<double> scores;  // aligned with edges
    bool fallback = false;       // no model for the state's class
};

// Sums of pairwise confidences; tt-sink edges first and ff-sink edges last.
Ranking rank_edges(const translation::LabeledGame &g, int v, const RankerBank &bank);
// Same with the state's statewise-normalized features already extracted.
Ranking rank_edges(const translation::LabeledGame &g, int v, const RankerBank &bank,
                   const std::vector<features::FeatureVector> &fv);

// Top-ranked edge on every System vertex reachable from the initial one.
game::Strategy recommend_strategy(const translation::LabeledGame &g, const RankerBank &bank);

}  // namespace pgg::ranker
