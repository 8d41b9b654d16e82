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
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgg/game/parity_game.hpp"
#include "pgg/ltl/formula.hpp"

namespace pgg::translation {

class TranslationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Fragment { Safety, CoSafety, GConjunction, Unsupported };

const char *fragment_name(Fragment f);
Fragment classify_fragment(const ltl::Formula &f);

bool is_safety(const ltl::Formula &f);    // no F, U, M
bool is_cosafety(const ltl::Formula &f);  // no G, R, W

// Equivalence-preserving rewrite used on every label formula: a conjunct
// phi is dropped next to G phi, a disjunct phi next to F phi, and inside
// and/or each child is simplified assuming its siblings true/false.
ltl::Formula normalize_label(const ltl::Formula &f);

// Top-level conjuncts of f (f itself if it is not a conjunction).
std::vector<ltl::Formula> conjuncts(const ltl::Formula &f);

enum class MonitorKind { Recurring, FiniteObligation };

struct Monitor {
    MonitorKind kind;
    ltl::Formula goal;
    std::vector<ltl::Formula> tokens;  // canonical order, never tt/ff

    bool operator==(const Monitor &o) const { return kind == o.kind && goal == o.goal && tokens == o.tokens; }
};

struct SemanticLabel {
    ltl::Formula master;
    std::vector<Monitor> monitors;  // front is most urgent

    bool operator==(const SemanticLabel &o) const { return master == o.master && monitors == o.monitors; }
    std::string key() const;
};

enum class VertexKind { EnvChoice, SysChoice, TTSink, FFSink };

const char *vertex_kind_name(VertexKind k);

struct VertexData {
    VertexKind kind;
    SemanticLabel label;
    ltl::Valuation env;  // SysChoice: the environment letter already played
};

// What one monitor of the source label did on a System edge.
struct MonitorStep {
    int pending = 0;      // tokens before the step
    int discharged = 0;   // of those, tokens that reached tt
    bool completed = false;
    bool failed = false;  // a token reached ff
};

struct EdgeData {
    ltl::Valuation valuation;  // letter of the moving player
    std::vector<MonitorStep> steps;  // System edges only, source monitor order
    int discharge_position = -1;     // front-most completed monitor
};

struct LabeledGame {
    game::ParityGame game;
    std::vector<VertexData> vertices;
    std::vector<EdgeData> edges;
    ltl::Formula formula;
    ltl::Partition partition;
    Fragment fragment = Fragment::Unsupported;
    bool complement = false;

    int num_vertices() const { return game.num_vertices(); }
    const VertexData &vertex(int v) const { return vertices.at(v); }
    const EdgeData &edge_data(int e) const { return edges.at(e); }
    bool is_sink(int v) const;
    // System-owned choice vertices, the ones strategies are recommended for
    std::vector<int> system_choices() const;
    // Lowest-id sink vertex of the given kind, or -1.
    int find_sink(VertexKind k) const;
};

struct BuildOptions {
    std::size_t max_vertices = 20000;
    int max_props = 10;  // per player
    int max_label_height = 40;
};

// Environment moves first; see docs/translation.md for the step rules and
// the priority scheme.
LabeledGame build_game(const ltl::Formula &f, const ltl::Partition &p, const BuildOptions &opts = {});

// Negation of f with every System atom delayed by one step, so that the
// original System keeps seeing the environment letter before it answers
// once the roles are swapped.
ltl::Formula complement_formula(const ltl::Formula &f, const ltl::Partition &p);

// build_game(complement_formula(f, p), p.swapped()) flagged as complement.
LabeledGame complement_game(const ltl::Formula &f, const ltl::Partition &p, const BuildOptions &opts = {});

// Throws TranslationError naming the first offending vertex.
void check_alternation(const LabeledGame &g);

nlohmann::json labeled_game_to_json(const LabeledGame &g);
LabeledGame labeled_game_from_json(const nlohmann::json &j);

}  // namespace pgg::translation
