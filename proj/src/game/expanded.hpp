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

#include <vector>

#include "pgg/game/parity_game.hpp"

namespace pgg::game::detail {

/*
 * Vertex-priority view of an edge-priority game: every edge e becomes a
 * vertex num_orig + e carrying the edge's priority, with the original
 * vertex as its only predecessor and the edge target as its only
 * successor. Original vertices get a priority above every edge priority,
 * so they never decide a play.
 */
struct VGame {
    int n = 0;
    int num_orig = 0;
    std::vector<Player> owner;
    std::vector<int> prio;
    std::vector<std::vector<int>> succ, pred;

    bool is_edge_vertex(int v) const { return v >= num_orig; }
    int edge_of(int v) const { return v - num_orig; }
};

inline VGame
expand(const ParityGame &g)
{
    VGame vg;
    vg.num_orig = g.num_vertices();
    vg.n = g.num_vertices() + g.num_edges();
    vg.owner.resize(vg.n, Player::System);
    vg.prio.resize(vg.n);
    vg.succ.resize(vg.n);
    vg.pred.resize(vg.n);
    const int top = g.max_priority() + 1;
    for (int v = 0; v < g.num_vertices(); v++) {
        vg.owner[v] = g.owner(v);
        vg.prio[v] = top;
    }
    for (int e = 0; e < g.num_edges(); e++) {
        const Edge &ed = g.edge(e);
        const int x = vg.num_orig + e;
        vg.prio[x] = ed.priority;
        vg.succ[ed.src].push_back(x);
        vg.pred[x].push_back(ed.src);
        vg.succ[x].push_back(ed.dst);
        vg.pred[ed.dst].push_back(x);
    }
    return vg;
}

}  // namespace pgg::game::detail
