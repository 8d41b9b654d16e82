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
#include <stdexcept>
#include <string>
#include <vector>

namespace pgg::game {

// Min-parity throughout: System wins a play iff the smallest priority
// seen infinitely often is odd.
enum class Player : std::uint8_t { System = 0, Environment = 1 };

inline Player opponent(Player p) { return p == Player::System ? Player::Environment : Player::System; }
inline Player priority_player(int priority) { return priority % 2 ? Player::System : Player::Environment; }
const char *player_name(Player p);

class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    int src;
    int dst;
    int priority;
};

class ParityGame {
public:
    int add_vertex(Player owner);
    int add_edge(int src, int dst, int priority);

    void set_initial(int v);
    int initial() const { return initial_; }

    // a-priori priority bound D; raised automatically by add_edge
    void set_priority_bound(int d);
    int priority_bound() const { return bound_; }
    int max_priority() const;

    int num_vertices() const { return static_cast<int>(owner_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    Player owner(int v) const { return owner_.at(v); }
    const Edge &edge(int e) const { return edges_.at(e); }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<int> &out_edges(int v) const { return out_.at(v); }
    const std::vector<int> &in_edges(int v) const { return in_.at(v); }

    // Lowest-id edge between two vertices, or -1.
    int find_edge(int src, int dst) const;

    // Throws GameError unless total, priorities within bound and initial valid.
    void validate() const;

    bool operator==(const ParityGame &o) const;

private:
    std::vector<Player> owner_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_;
    int initial_ = 0;
    int bound_ = 0;
};

// Builds a game from vertex priorities by stamping every outgoing edge
// with the priority of its source.
ParityGame from_vertex_priorities(const std::vector<Player> &owners, const std::vector<int> &priorities,
                                  const std::vector<std::pair<int, int>> &edges, int initial = 0);

// Positional strategy: chosen edge id per vertex, -1 where undefined.
struct Strategy {
    Player player = Player::System;
    std::vector<int> choice;

    Strategy() = default;
    Strategy(Player p, int n) : player(p), choice(n, -1) {}

    bool defined(int v) const { return choice.at(v) >= 0; }
    int operator[](int v) const { return choice.at(v); }
    int &operator[](int v) { return choice.at(v); }
    int size() const { return static_cast<int>(choice.size()); }
    bool operator==(const Strategy &o) const { return player == o.player && choice == o.choice; }
};

// Fills undefined choices of the strategy's player with the first edge.
Strategy complete_strategy(const ParityGame &g, Strategy s);

struct Lasso {
    std::vector<int> stem;
    std::vector<int> loop;  // nonempty, loop.back() -> loop.front() closes it
};

// Vertex lassos take the lowest-id edge between consecutive vertices.
Player play_winner(const Lasso &l, const ParityGame &g);
Player loop_winner(const std::vector<int> &loop_edges, const ParityGame &g);

// Vertices reachable from `from`; with a strategy, only its edges are
// followed at the strategy player's vertices (undefined choices follow
// every edge).
std::vector<bool> reachable(const ParityGame &g, int from, const Strategy *s = nullptr);

struct SolveResult {
    std::vector<Player> winner;  // per vertex
    Strategy system;             // defined on System vertices of System's region
    Strategy environment;        // defined on Environment vertices of Environment's region
    int rounds = 0;              // improvement rounds (strategy iteration only)

    std::vector<int> region(Player p) const;
    const Strategy &strategy(Player p) const { return p == Player::System ? system : environment; }
};

SolveResult zielonka_solve(const ParityGame &g);

enum class SwitchRule {
    AllProfitable,  // switch every strictly improving vertex
    LosingOnly,     // switch only where the current strategy loses
};

// init must be defined on every System vertex.
SolveResult strategy_iteration(const ParityGame &g, const Strategy &init, SwitchRule rule = SwitchRule::AllProfitable);

// Winner of every vertex in the one-player game left after fixing `s`.
std::vector<Player> solve_restricted(const ParityGame &g, const Strategy &s);

// True iff the Environment cannot win from the initial vertex once the
// System plays `sys`. Throws if `sys` is undefined on a reachable System vertex.
bool one_player_check(const ParityGame &g, const Strategy &sys);

// SCCs in reverse topological order (sinks first); each SCC sorted.
std::vector<std::vector<int>> scc_decompose(const ParityGame &g);
// Restricted to vertices with keep[v] and edges accepted by edge_ok.
std::vector<std::vector<int>> scc_decompose(const ParityGame &g, const std::vector<bool> &keep,
                                            const std::vector<bool> &edge_ok);

}  // namespace pgg::game
