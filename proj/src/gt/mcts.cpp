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
#include "pgg/util/hash.hpp"
#include "pgg/util/random.hpp"

namespace pgg::gt {

using game::ParityGame;
using game::Player;

namespace {

class Simulator {
public:
    Simulator(const ParityGame &g, const std::vector<Player> &winner, double beta)
        : g_(g), winner_(winner), beta_(beta), pos_(g.num_vertices(), -1)
    {
    }

    double run(int e, Rng &rng, const std::vector<int> &prefix)
    {
        clear();
        visit(prefix.empty() ? g_.edge(e).src : g_.edge(prefix.front()).src);
        for (int f : prefix) {
            path_.push_back(f);
            visit(g_.edge(f).dst);
        }
        int cur = e;
        for (int plies = 1;; plies++) {
            const int d = g_.edge(cur).dst;
            if (winner_[d] == Player::Environment) return 0.0;
            int closed = closure(cur);
            if (closed != Open) return closed == SysWins ? std::pow(beta_, plies) : 0.0;
            path_.push_back(cur);
            visit(d);
            cur = g_.owner(d) == Player::System ? system_move(d, rng) : environment_move(d, rng);
        }
    }

private:
    enum { Open, SysWins, EnvWins };
    static constexpr int lookahead = 4;

    void visit(int v)
    {
        pos_[v] = static_cast<int>(path_.size());
        seen_.push_back(v);
    }

    void clear()
    {
        for (int v : seen_) pos_[v] = -1;
        seen_.clear();
        path_.clear();
    }

    int closure(int e) const
    {
        const int d = g_.edge(e).dst;
        if (pos_[d] >= 0) {
            std::vector<int> loop(path_.begin() + pos_[d], path_.end());
            loop.push_back(e);
            return game::loop_winner(loop, g_) == Player::System ? SysWins : EnvWins;
        }
        if (is_absorbing(g_, d)) return absorbing_system_wins(g_, d) ? SysWins : EnvWins;
        return Open;
    }

    int loop_length(int e) const
    {
        const int d = g_.edge(e).dst;
        if (pos_[d] >= 0) return static_cast<int>(path_.size()) - pos_[d] + 1;
        return 1;
    }

    // one-step lookahead on absorbing targets, uniform otherwise
    int system_move(int u, Rng &rng) const
    {
        std::vector<int> good, rest;
        for (int f : g_.out_edges(u)) {
            const int d = g_.edge(f).dst;
            if (is_absorbing(g_, d) && pos_[d] < 0) {
                if (absorbing_system_wins(g_, d)) good.push_back(f);
                continue;
            }
            rest.push_back(f);
        }
        if (!good.empty()) return rng.pick(good);
        if (!rest.empty()) return rng.pick(rest);
        return rng.pick(g_.out_edges(u));
    }

    // True if after f the Environment can force its own region or a loop
    // it wins within h more plies.
    bool forces(int f, int h)
    {
        const int d = g_.edge(f).dst;
        const int c = closure(f);
        if (winner_[d] == Player::Environment || c == EnvWins) return true;
        if (c != Open || h == 0) return false;
        path_.push_back(f);
        pos_[d] = static_cast<int>(path_.size());
        const bool env = g_.owner(d) == Player::Environment;
        bool r = !env;
        for (int g : g_.out_edges(d)) {
            if (forces(g, h - 1) == env) {
                r = env;
                break;
            }
        }
        pos_[d] = -1;
        path_.pop_back();
        return r;
    }

    // prefer a forced win, then any move that keeps the play open, then
    // the longest System loop
    int environment_move(int u, Rng &rng)
    {
        std::vector<int> win, open, longest;
        int best = -1;
        for (int f : g_.out_edges(u)) {
            const int c = closure(f);
            if (forces(f, lookahead)) {
                win.push_back(f);
            } else if (c == Open) {
                open.push_back(f);
            } else {
                const int len = loop_length(f);
                if (len > best) {
                    best = len;
                    longest.clear();
                }
                if (len == best) longest.push_back(f);
            }
        }
        if (!win.empty()) return rng.pick(win);
        if (!open.empty()) return rng.pick(open);
        return rng.pick(longest);
    }

    const ParityGame &g_;
    const std::vector<Player> &winner_;
    double beta_;
    std::vector<int> pos_;
    std::vector<int> seen_;
    std::vector<int> path_;
};

}  // namespace

double
mcts_value(const ParityGame &g, const std::vector<Player> &winner, int e, const GtParams &params,
           const std::vector<int> &prefix)
{
    params.validate();
    if (winner.size() != static_cast<std::size_t>(g.num_vertices())) throw std::invalid_argument("winner table does not match the game");
    Simulator sim(g, winner, params.beta);
    double sum = 0.0;
    for (int i = 0; i < params.samples; i++) {
        Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(i)));
        sum += sim.run(e, rng, prefix);
    }
    return sum / params.samples;
}

}  // namespace pgg::gt
