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

#include <cmath>

#include "pgg/gt/ground_truth.hpp"

namespace pgg::gt {

using game::ParityGame;
using game::Player;

void
GtParams::validate() const
{
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie strictly between 0 and 1");
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    if (!(threshold >= 0.0)) throw std::invalid_argument("threshold must be non-negative");
    if (node_budget < 1) throw std::invalid_argument("node budget must be positive");
}

nlohmann::json
GtParams::to_json() const
{
    return {{"beta", beta},           {"depth", depth}, {"samples", samples},       {"threshold", threshold},
            {"prune", prune},         {"scc_cache", scc_cache}, {"frontier_path", frontier_path}, {"seed", seed}, {"node_budget", node_budget}};
}

bool
is_absorbing(const ParityGame &g, int v)
{
    const auto &out = g.out_edges(v);
    if (out.empty()) return false;
    for (int e : out) {
        if (g.edge(e).dst != v) return false;
    }
    return true;
}

bool
absorbing_system_wins(const ParityGame &g, int v)
{
    const Player me = g.owner(v);
    for (int e : g.out_edges(v)) {
        if (game::priority_player(g.edge(e).priority) == me) return me == Player::System;
    }
    return me != Player::System;
}

double
GroundTruthTable::at(int e) const
{
    if (!has(e)) throw std::out_of_range("no ground-truth entry for edge " + std::to_string(e));
    return value[e];
}

std::size_t
GroundTruthTable::size() const
{
    std::size_t n = 0;
    for (std::size_t e = 0; e < value.size(); e++) n += has(static_cast<int>(e));
    return n;
}

namespace {

class Unfolder {
public:
    Unfolder(const ParityGame &g, double beta, std::size_t budget)
        : g_(g), beta_(beta), budget_(budget), pos_(g.num_vertices(), -1)
    {
    }

    double root(int e)
    {
        pos_[g_.edge(e).src] = 0;
        return edge(e);
    }

private:
    double edge(int e)
    {
        if (++nodes_ > budget_) throw BudgetExceeded("game tree exceeds the node budget of " + std::to_string(budget_));
        const int d = g_.edge(e).dst;
        if (pos_[d] >= 0) {
            std::vector<int> loop(path_.begin() + pos_[d], path_.end());
            loop.push_back(e);
            return game::loop_winner(loop, g_) == Player::System ? beta_ : 0.0;
        }
        if (is_absorbing(g_, d)) return absorbing_system_wins(g_, d) ? beta_ : 0.0;
        pos_[d] = static_cast<int>(path_.size()) + 1;
        path_.push_back(e);
        const bool sys = g_.owner(d) == Player::System;
        double best = sys ? 0.0 : 1.0;
        for (int f : g_.out_edges(d)) {
            double v = edge(f);
            best = sys ? std::max(best, v) : std::min(best, v);
        }
        path_.pop_back();
        pos_[d] = -1;
        return beta_ * best;
    }

    const ParityGame &g_;
    double beta_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    std::vector<int> pos_;
    std::vector<int> path_;
};

}  // namespace

double
exact_tree_value(const ParityGame &g, int e, double beta, std::size_t node_budget)
{
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie strictly between 0 and 1");
    return Unfolder(g, beta, node_budget).root(e);
}

}  // namespace pgg::gt
