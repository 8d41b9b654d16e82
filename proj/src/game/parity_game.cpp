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

#include "pgg/game/parity_game.hpp"

#include <algorithm>
#include <climits>
#include <deque>

namespace pgg::game {

const char *
player_name(Player p)
{
    return p == Player::System ? "system" : "environment";
}

int
ParityGame::add_vertex(Player owner)
{
    owner_.push_back(owner);
    out_.emplace_back();
    in_.emplace_back();
    return num_vertices() - 1;
}

int
ParityGame::add_edge(int src, int dst, int priority)
{
    if (src < 0 || src >= num_vertices() || dst < 0 || dst >= num_vertices()) {
        throw GameError("edge " + std::to_string(src) + "->" + std::to_string(dst) + " has an unknown endpoint");
    }
    if (priority < 0) throw GameError("negative priority on edge " + std::to_string(src) + "->" + std::to_string(dst));
    edges_.push_back(Edge{src, dst, priority});
    const int id = num_edges() - 1;
    out_[src].push_back(id);
    in_[dst].push_back(id);
    bound_ = std::max(bound_, priority);
    return id;
}

void
ParityGame::set_initial(int v)
{
    if (v < 0 || v >= num_vertices()) throw GameError("initial vertex " + std::to_string(v) + " does not exist");
    initial_ = v;
}

void
ParityGame::set_priority_bound(int d)
{
    if (d < max_priority()) throw GameError("priority bound below the largest edge priority");
    bound_ = d;
}

int
ParityGame::max_priority() const
{
    int m = 0;
    for (const Edge &e : edges_) m = std::max(m, e.priority);
    return m;
}

int
ParityGame::find_edge(int src, int dst) const
{
    for (int e : out_.at(src)) {
        if (edges_[e].dst == dst) return e;
    }
    return -1;
}

void
ParityGame::validate() const
{
    if (num_vertices() == 0) throw GameError("game has no vertices");
    if (initial_ < 0 || initial_ >= num_vertices()) throw GameError("initial vertex does not exist");
    for (int v = 0; v < num_vertices(); v++) {
        if (out_[v].empty()) throw GameError("vertex " + std::to_string(v) + " has no outgoing edge");
    }
    for (const Edge &e : edges_) {
        if (e.priority > bound_) throw GameError("edge priority exceeds the bound");
    }
}

bool
ParityGame::operator==(const ParityGame &o) const
{
    if (owner_ != o.owner_ || initial_ != o.initial_ || edges_.size() != o.edges_.size()) return false;
    for (std::size_t i = 0; i < edges_.size(); i++) {
        const Edge &a = edges_[i], &b = o.edges_[i];
        if (a.src != b.src || a.dst != b.dst || a.priority != b.priority) return false;
    }
    return true;
}

ParityGame
from_vertex_priorities(const std::vector<Player> &owners, const std::vector<int> &priorities,
                       const std::vector<std::pair<int, int>> &edges, int initial)
{
    if (owners.size() != priorities.size()) throw GameError("owner and priority lists differ in length");
    ParityGame g;
    for (Player p : owners) g.add_vertex(p);
    for (auto [s, t] : edges) g.add_edge(s, t, priorities.at(s));
    g.set_initial(initial);
    return g;
}

Strategy
complete_strategy(const ParityGame &g, Strategy s)
{
    if (s.size() != g.num_vertices()) throw GameError("strategy size does not match the game");
    for (int v = 0; v < g.num_vertices(); v++) {
        if (g.owner(v) == s.player && !s.defined(v)) s[v] = g.out_edges(v).at(0);
    }
    return s;
}

Player
loop_winner(const std::vector<int> &loop_edges, const ParityGame &g)
{
    if (loop_edges.empty()) throw GameError("empty loop");
    int m = INT_MAX;
    for (int e : loop_edges) m = std::min(m, g.edge(e).priority);
    return priority_player(m);
}

Player
play_winner(const Lasso &l, const ParityGame &g)
{
    if (l.loop.empty()) throw GameError("invalid lasso: empty loop");
    std::vector<int> path = l.stem;
    path.insert(path.end(), l.loop.begin(), l.loop.end());
    for (int v : path) {
        if (v < 0 || v >= g.num_vertices()) throw GameError("invalid lasso: unknown vertex " + std::to_string(v));
    }
    for (std::size_t i = 0; i + 1 < path.size(); i++) {
        if (g.find_edge(path[i], path[i + 1]) < 0) {
            throw GameError("invalid lasso: no edge " + std::to_string(path[i]) + "->" + std::to_string(path[i + 1]));
        }
    }
    std::vector<int> loop_edges;
    for (std::size_t i = 0; i < l.loop.size(); i++) {
        int e = g.find_edge(l.loop[i], l.loop[(i + 1) % l.loop.size()]);
        if (e < 0) throw GameError("invalid lasso: loop does not close");
        loop_edges.push_back(e);
    }
    return loop_winner(loop_edges, g);
}

std::vector<bool>
reachable(const ParityGame &g, int from, const Strategy *s)
{
    std::vector<bool> seen(g.num_vertices(), false);
    std::deque<int> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        auto visit = [&](int e) {
            int t = g.edge(e).dst;
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        };
        if (s && g.owner(v) == s->player && s->defined(v)) {
            visit((*s)[v]);
        } else {
            for (int e : g.out_edges(v)) visit(e);
        }
    }
    return seen;
}

std::vector<int>
SolveResult::region(Player p) const
{
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(winner.size()); v++) {
        if (winner[v] == p) out.push_back(v);
    }
    return out;
}

std::vector<Player>
solve_restricted(const ParityGame &g, const Strategy &s)
{
    const int n = g.num_vertices();
    const Player opp = opponent(s.player);
    std::vector<bool> edge_live(g.num_edges(), true);
    for (int v = 0; v < n; v++) {
        if (g.owner(v) != s.player || !s.defined(v)) continue;
        if (g.edge(s[v]).src != v) throw GameError("strategy edge does not leave vertex " + std::to_string(v));
        for (int e : g.out_edges(v)) edge_live[e] = e == s[v];
    }
    // the opponent wins from v iff it can reach a cycle whose smallest
    // priority has its parity
    std::vector<int> prios;
    for (const Edge &e : g.edges()) prios.push_back(e.priority);
    std::sort(prios.begin(), prios.end());
    prios.erase(std::unique(prios.begin(), prios.end()), prios.end());
    std::vector<bool> on_cycle(n, false);
    std::vector<bool> all(n, true);
    for (int p : prios) {
        if (priority_player(p) != opp) continue;
        std::vector<bool> ok(g.num_edges());
        for (int e = 0; e < g.num_edges(); e++) ok[e] = edge_live[e] && g.edge(e).priority >= p;
        for (const auto &comp : scc_decompose(g, all, ok)) {
            std::vector<bool> in(n, false);
            for (int v : comp) in[v] = true;
            bool hit = false;
            for (int v : comp) {
                for (int e : g.out_edges(v)) {
                    if (ok[e] && in[g.edge(e).dst] && g.edge(e).priority == p) hit = true;
                }
            }
            if (hit) {
                for (int v : comp) on_cycle[v] = true;
            }
        }
    }
    std::vector<bool> opp_wins = on_cycle;
    std::deque<int> queue;
    for (int v = 0; v < n; v++) {
        if (on_cycle[v]) queue.push_back(v);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : g.in_edges(v)) {
            if (!edge_live[e]) continue;
            int u = g.edge(e).src;
            if (!opp_wins[u]) {
                opp_wins[u] = true;
                queue.push_back(u);
            }
        }
    }
    std::vector<Player> out(n);
    for (int v = 0; v < n; v++) out[v] = opp_wins[v] ? opp : s.player;
    return out;
}

bool
one_player_check(const ParityGame &g, const Strategy &sys)
{
    if (sys.player != Player::System) throw GameError("one_player_check expects a System strategy");
    if (sys.size() != g.num_vertices()) throw GameError("strategy size does not match the game");
    std::vector<bool> reach = reachable(g, g.initial(), &sys);
    for (int v = 0; v < g.num_vertices(); v++) {
        if (reach[v] && g.owner(v) == Player::System && !sys.defined(v)) {
            throw GameError("strategy undefined on reachable System vertex " + std::to_string(v));
        }
    }
    return solve_restricted(g, sys)[g.initial()] == Player::System;
}

}  // namespace pgg::game
