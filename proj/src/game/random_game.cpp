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

#include "pgg/game/io.hpp"
#include "pgg/util/random.hpp"

namespace pgg::game {

ParityGame
random_game(const RandomGameParams &p, std::uint64_t seed)
{
    if (p.vertices < 1 || p.min_out < 1 || p.max_out < p.min_out || p.max_priority < p.min_priority) {
        throw GameError("invalid random game parameters");
    }
    Rng rng(seed);
    ParityGame g;
    std::vector<int> vprio(p.vertices);
    for (int v = 0; v < p.vertices; v++) {
        g.add_vertex(rng.chance(p.system_ratio) ? Player::System : Player::Environment);
        vprio[v] = rng.range(p.min_priority, p.max_priority);
    }
    for (int v = 0; v < p.vertices; v++) {
        std::vector<int> cands;
        for (int t = 0; t < p.vertices; t++) {
            if (t != v || p.self_loops) cands.push_back(t);
        }
        if (cands.empty()) cands.push_back(v);
        rng.shuffle(cands);
        int k = std::min<int>(rng.range(p.min_out, p.max_out), static_cast<int>(cands.size()));
        cands.resize(k);
        for (int t : cands) {
            g.add_edge(v, t, p.edge_priorities ? rng.range(p.min_priority, p.max_priority) : vprio[v]);
        }
    }
    g.set_initial(0);
    return g;
}

}  // namespace pgg::game
