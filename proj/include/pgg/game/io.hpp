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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pgg/game/parity_game.hpp"

namespace pgg::game {

/*
 * PGSolver text format:
 *
 *   parity <N>;
 *   [start <id>;]
 *   <id> <priority> <owner> <succ>,<succ>,... ["name"];
 *
 * Owner 0 is the System, 1 the Environment. N must be at least the
 * largest vertex id. Vertex priorities are lifted to every outgoing edge
 * on import; on export a vertex gets the largest priority among its
 * outgoing edges (a warning is recorded when the edges disagree, since
 * the round trip then changes the game).
 */
std::string export_pgsolver(const ParityGame &g, std::vector<std::string> *warnings = nullptr,
                            const std::vector<std::string> *names = nullptr);
ParityGame import_pgsolver(std::string_view text);

// Native JSON format, see docs/game.schema.json.
nlohmann::json game_to_json(const ParityGame &g);
ParityGame game_from_json(const nlohmann::json &j);

struct RandomGameParams {
    int vertices = 8;
    int min_out = 1;
    int max_out = 3;
    int min_priority = 0;
    int max_priority = 5;
    double system_ratio = 0.5;
    bool edge_priorities = false;  // otherwise each vertex stamps its priority on its edges
    bool self_loops = true;
};

// Seeded; successors of a vertex are distinct.
ParityGame random_game(const RandomGameParams &p, std::uint64_t seed);

}  // namespace pgg::game
