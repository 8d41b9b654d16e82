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
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgg/ltl/formula.hpp"
#include "pgg/translation/translation.hpp"

namespace pgg::features {

enum class StateClass { NoMonitors, MasterStable, Other };

constexpr int num_state_classes = 3;
const char *state_class_name(StateClass c);
StateClass parse_state_class(const std::string &s);

// NoMonitors: no pending monitor; MasterStable: every successor label has
// the same master as this one.
StateClass classify_state(const translation::LabeledGame &g, int v);

constexpr int num_base_features = 10;
extern const std::array<const char *, num_base_features> base_feature_names;

// conjuncts, disjuncts, height, temporal_ops, trueness, system_control,
// system_control_prop and the last three again on the obligation formula.
std::array<double, num_base_features> base_features(const ltl::Formula &f, const ltl::Partition &p);

struct FeatureSchema {
    int version = 1;
    std::vector<std::string> names;
    std::vector<bool> normalized;  // rescaled per state
    std::vector<bool> master;      // derived from the master formula only
    std::vector<bool> monitor;     // derived from monitors

    std::size_t size() const { return names.size(); }
    std::string id() const;
    int index(const std::string &name) const;  // -1 if absent
    // Feature positions used for a state class.
    std::vector<int> subset(StateClass c) const;
    // Indices of features sharing a base measure and block with i
    // (successor value and delta); i itself included.
    std::vector<int> paired(int i) const;

    nlohmann::json to_json() const;
    static FeatureSchema from_json(const nlohmann::json &j);
};

const FeatureSchema &default_schema();

struct FeatureVector {
    std::vector<double> values;
    std::string schema_id;
    StateClass state_class = StateClass::Other;
    bool complement = false;
};

// Odd priorities map into (0,1], even ones into [-1,0); 1 -> 1 and 0 -> -1.
double priority_feature(int p, int bound);
// Weighted share of discharged tokens, -1 into the ff sink.
double progress_feature(const translation::LabeledGame &g, int e);
// Agreement of the System letter with the source master's recommendation.
double one_step_feature(const translation::LabeledGame &g, int e);

// Per System atom: +1 recommends playing it, -1 recommends not to.
std::map<std::string, double> recommendation(const ltl::Formula &f, const ltl::Partition &p);

// Weight of monitor position pos (0 = front) among m monitors.
double position_weight(int pos, int m);

// Caches per-vertex base features; extracting the same edge twice gives
// bit-identical vectors.
class Extractor {
public:
    explicit Extractor(const translation::LabeledGame &g, const FeatureSchema &schema = default_schema());

    FeatureVector edge(int e);
    // All out-edges of a System choice vertex, normalized statewise.
    std::vector<FeatureVector> state(int v);

private:
    const std::array<double, num_base_features> &master_block(int v);
    const std::array<double, num_base_features> &monitor_block(int v);

    const translation::LabeledGame &g_;
    const FeatureSchema &schema_;
    std::map<int, std::array<double, num_base_features>> master_, monitor_;
    std::map<ltl::Formula, std::array<double, num_base_features>, ltl::FormulaLess> formula_;
};

inline FeatureVector
extract_edge_features(const translation::LabeledGame &g, int e, const FeatureSchema &schema = default_schema())
{
    return Extractor(g, schema).edge(e);
}

// Min-max per normalized feature across one state's edges; constant
// features become 0.5, unmasked features are left alone.
void statewise_normalize(std::vector<std::vector<double>> &rows, const std::vector<bool> &mask);
void statewise_normalize(std::vector<FeatureVector> &rows, const FeatureSchema &schema);

// game_id,state,valuation,class,complement,<features...> for every System
// choice vertex of the game, normalized.
std::string features_csv_header(const FeatureSchema &schema);
std::string features_csv_rows(const std::string &game_id, const translation::LabeledGame &g,
                              const FeatureSchema &schema = default_schema());

}  // namespace pgg::features
