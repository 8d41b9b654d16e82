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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pgg/game/io.hpp"
#include "pgg/gt/ground_truth.hpp"
#include "pgg/translation/translation.hpp"
#include "pgg/util/hash.hpp"

namespace pgg::gt {

using game::ParityGame;
using game::Player;

namespace {

constexpr double none = std::numeric_limits<double>::quiet_NaN();

class Evaluator {
public:
    Evaluator(const ParityGame &g, const GtParams &params, GroundTruthTable &t)
        : g_(g), p_(params), t_(t), pos_(g.num_vertices(), -1), mcts_(g.num_edges(), none)
    {
        winner_ = game::zielonka_solve(g).winner;
        scc_of_.assign(g.num_vertices(), -1);
    }

    void run()
    {
        const auto sccs = game::scc_decompose(g_);
        t_.sccs = static_cast<int>(sccs.size());
        for (std::size_t i = 0; i < sccs.size(); i++) {
            for (int v : sccs[i]) scc_of_[v] = static_cast<int>(i);
        }
        for (std::size_t i = 0; i < sccs.size(); i++) {
            for (int v : sccs[i]) root(v);
        }
    }

private:
    void root(int v)
    {
        const bool sys = g_.owner(v) == Player::System;
        if (winner_[v] == Player::Environment) {
            t_.vertex_value[v] = 0.0;
            return;
        }
        root_scc_ = scc_of_[v];
        depth_ = p_.depth;
        for (;;) {
            try {
                std::vector<std::pair<int, double>> vals;
                nodes_ = 0;
                pos_[v] = 0;
                for (int f : moves(v)) vals.emplace_back(f, edge(f, 1));
                pos_[v] = -1;
                double best = sys ? 0.0 : 1.0;
                for (auto [f, x] : vals) {
                    best = sys ? std::max(best, x) : std::min(best, x);
                    if (sys) t_.value[f] = x;
                }
                t_.vertex_value[v] = best;
                return;
            } catch (const BudgetExceeded &) {
                std::fill(pos_.begin(), pos_.end(), -1);
                path_.clear();
                if (depth_ <= 1) throw;
                depth_--;
                t_.depth_reductions++;
            }
        }
    }

    double mcts(int e)
    {
        if (std::isnan(mcts_[e])) mcts_[e] = mcts_value(g_, winner_, e, p_);
        return mcts_[e];
    }

    // Environment keeps only the edges whose estimate is within the
    // threshold of its best one
    std::vector<int> moves(int u)
    {
        const auto &out = g_.out_edges(u);
        if (!p_.prune || g_.owner(u) == Player::System || out.size() < 2) return out;
        double lo = 1.0;
        for (int f : out) lo = std::min(lo, mcts(f));
        std::vector<int> kept;
        for (int f : out) {
            if (mcts(f) <= lo + p_.threshold) kept.push_back(f);
        }
        return kept;
    }

    double edge(int e, int ply)
    {
        if (++nodes_ > p_.node_budget) throw BudgetExceeded("node budget exceeded");
        const int d = g_.edge(e).dst;
        if (winner_[d] == Player::Environment) return 0.0;
        if (pos_[d] >= 0) {
            std::vector<int> loop(path_.begin() + pos_[d], path_.end());
            loop.push_back(e);
            return game::loop_winner(loop, g_) == Player::System ? p_.beta : 0.0;
        }
        if (is_absorbing(g_, d)) return absorbing_system_wins(g_, d) ? p_.beta : 0.0;
        if (p_.scc_cache && scc_of_[d] != root_scc_) {
            t_.cache_hits++;
            return p_.beta * t_.vertex_value[d];
        }
        if (ply >= depth_) return p_.frontier_path ? mcts_value(g_, winner_, e, p_, path_) : mcts(e);
        const bool sys = g_.owner(d) == Player::System;
        pos_[d] = static_cast<int>(path_.size()) + 1;
        path_.push_back(e);
        double best = sys ? 0.0 : 1.0;
        for (int f : moves(d)) {
            double x = edge(f, ply + 1);
            best = sys ? std::max(best, x) : std::min(best, x);
        }
        path_.pop_back();
        pos_[d] = -1;
        return p_.beta * best;
    }

    const ParityGame &g_;
    const GtParams &p_;
    GroundTruthTable &t_;
    std::vector<Player> winner_;
    std::vector<int> scc_of_;
    std::vector<int> pos_;
    std::vector<int> path_;
    std::vector<double> mcts_;
    std::size_t nodes_ = 0;
    int depth_ = 0;
    int root_scc_ = -1;
};

std::string
format_value(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

GroundTruthTable
compute_ground_truth(const ParityGame &g, const GtParams &params)
{
    params.validate();
    g.validate();
    GroundTruthTable t;
    t.params = params;
    t.game_hash = content_hash(game::game_to_json(g).dump());
    t.value.assign(g.num_edges(), none);
    t.trivial.assign(g.num_edges(), false);
    t.vertex_value.assign(g.num_vertices(), 0.0);
    for (int e = 0; e < g.num_edges(); e++) t.trivial[e] = is_absorbing(g, g.edge(e).dst);

    const auto winner = game::zielonka_solve(g).winner;
    if (std::none_of(winner.begin(), winner.end(), [](Player p) { return p == Player::System; })) {
        t.notice = "System wins nowhere; no ground truth";
        return t;
    }
    Evaluator(g, params, t).run();
    return t;
}

GroundTruthTable
compute_ground_truth(const translation::LabeledGame &g, const GtParams &params)
{
    return compute_ground_truth(g.game, params);
}

std::string
table_to_csv(const GroundTruthTable &t, const ParityGame &g, const translation::LabeledGame *labels)
{
    if (t.value.size() != static_cast<std::size_t>(g.num_edges())) throw std::invalid_argument("table does not match the game");
    std::ostringstream out;
    out << "edge_src,edge_dst,valuation,value\n";
    for (int e = 0; e < g.num_edges(); e++) {
        if (!t.has(e)) continue;
        const auto &ed = g.edge(e);
        std::string val = labels ? labels->edge_data(e).valuation.to_string() : "";
        out << ed.src << ',' << ed.dst << ",\"" << val << "\"," << format_value(t.value[e]) << '\n';
    }
    return out.str();
}

nlohmann::json
table_sidecar(const GroundTruthTable &t)
{
    return {{"params", t.params.to_json()},
            {"game_hash", t.game_hash},
            {"entries", t.size()},
            {"sccs", t.sccs},
            {"cache_hits", t.cache_hits},
            {"depth_reductions", t.depth_reductions},
            {"notice", t.notice}};
}

}  // namespace pgg::gt
