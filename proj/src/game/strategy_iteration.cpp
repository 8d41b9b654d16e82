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

/*
 * Discrete strategy improvement with play profiles (Voege/Jurdzinski),
 * run on the vertex-priority expansion of the game. Priorities are made
 * distinct by ranking vertices by (priority, id); rank 0 is the most
 * relevant vertex. A vertex is good when its priority is odd.
 */

#include <algorithm>
#include <deque>
#include <numeric>

#include "expanded.hpp"

namespace pgg::game {

namespace {

using detail::VGame;

struct Profile {
    int w = -1;               // loop vertex
    std::vector<int> ranks;   // more relevant vertices seen before w, ascending rank
    int d = 0;                // path length to w
};

class Improver {
public:
    explicit Improver(const VGame &g) : g_(g)
    {
        std::vector<int> order(g.n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.prio[a] < g.prio[b]; });
        rank_.resize(g.n);
        by_rank_ = order;
        for (int r = 0; r < g.n; r++) rank_[order[r]] = r;
        good_.resize(g.n);
        for (int v = 0; v < g.n; v++) good_[v] = g.prio[v] % 2 == 1;
    }

    long reward(int v) const
    {
        long s = g_.n - rank_[v];
        return good_[v] ? s : -s;
    }

    // > 0 when a is better for the System than b
    int compare(const Profile &a, const Profile &b) const
    {
        if (a.w != b.w) return reward(a.w) < reward(b.w) ? -1 : 1;
        std::size_t i = 0, j = 0;
        while (i < a.ranks.size() || j < b.ranks.size()) {
            if (j == b.ranks.size() || (i < a.ranks.size() && a.ranks[i] < b.ranks[j])) {
                return good_[by_rank_[a.ranks[i]]] ? 1 : -1;
            }
            if (i == a.ranks.size() || b.ranks[j] < a.ranks[i]) {
                return good_[by_rank_[b.ranks[j]]] ? -1 : 1;
            }
            i++;
            j++;
        }
        if (a.d == b.d) return 0;
        if (good_[a.w]) return a.d < b.d ? 1 : -1;
        return a.d > b.d ? 1 : -1;
    }

    // Optimal Environment response to sigma; fills prof_ and tau_.
    void evaluate(const std::vector<int> &sigma)
    {
        const int n = g_.n;
        prof_.assign(n, Profile{});
        tau_.assign(n, -1);
        out_.assign(n, {});
        for (int v = 0; v < n; v++) {
            if (g_.owner[v] == Player::System) out_[v] = {sigma[v]};
            else out_[v] = g_.succ[v];
        }
        std::vector<bool> remaining(n, true);
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return reward(a) < reward(b); });

        for (int w : order) {
            if (!remaining[w]) continue;
            // vertices reaching w through vertices no more relevant than w
            std::vector<bool> low(n, false);
            for (int v = 0; v < n; v++) low[v] = remaining[v] && rank_[v] >= rank_[w];
            std::vector<bool> l = back_reach(w, low, n);
            bool cycle = false;
            for (int x : out_[w]) cycle |= low[x] && l[x];
            if (!cycle) continue;
            std::vector<bool> r = back_reach_set(l, remaining, n);
            subvaluation(r, w);
            for (int v = 0; v < n; v++) {
                if (r[v]) remaining[v] = false;
            }
        }
        for (int v = 0; v < n; v++) {
            if (prof_[v].w < 0) throw std::logic_error("strategy valuation left a vertex without a loop");
        }
    }

    const Profile &profile(int v) const { return prof_[v]; }
    int tau(int v) const { return tau_[v]; }
    bool good(int v) const { return good_[v]; }

private:
    std::vector<bool> back_reach(int from, const std::vector<bool> &allowed, int n) const
    {
        std::vector<bool> start(n, false);
        start[from] = true;
        return back_reach_set(start, allowed, n);
    }

    // Backward closure of `start` in the current graph, staying in `allowed`.
    std::vector<bool> back_reach_set(const std::vector<bool> &start, const std::vector<bool> &allowed, int n) const
    {
        std::vector<std::vector<int>> pred(n);
        for (int v = 0; v < n; v++) {
            if (!allowed[v]) continue;
            for (int x : out_[v]) {
                if (allowed[x]) pred[x].push_back(v);
            }
        }
        std::vector<bool> seen = start;
        std::deque<int> queue;
        for (int v = 0; v < n; v++) {
            if (seen[v]) queue.push_back(v);
        }
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u : pred[v]) {
                if (!seen[u]) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        return seen;
    }

    void subvaluation(const std::vector<bool> &r, int w)
    {
        const int n = g_.n;
        std::vector<int> members;
        for (int v = 0; v < n; v++) {
            if (r[v]) members.push_back(v);
        }
        // local copy of the edges inside r
        std::vector<std::vector<int>> alive(n);
        for (int v : members) {
            for (int x : out_[v]) {
                if (r[x]) alive[v].push_back(x);
            }
        }
        auto reach_in = [&](int target, int avoid) {
            std::vector<std::vector<int>> pred(n);
            for (int v : members) {
                if (v == avoid) continue;
                for (int x : alive[v]) {
                    if (x != avoid) pred[x].push_back(v);
                }
            }
            std::vector<bool> seen(n, false);
            seen[target] = true;
            std::deque<int> queue{target};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int u : pred[v]) {
                    if (!seen[u]) {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            return seen;
        };

        std::vector<std::vector<int>> ranks(n);
        std::vector<int> above;
        for (int v : members) {
            if (rank_[v] < rank_[w]) above.push_back(v);
        }
        std::sort(above.begin(), above.end(), [&](int a, int b) { return rank_[a] < rank_[b]; });
        for (int u : above) {
            if (good_[u]) {
                std::vector<bool> U = reach_in(w, u);
                for (int v : members) {
                    if (!U[v]) ranks[v].push_back(rank_[u]);
                }
                for (int v : members) {
                    if (v == w) continue;
                    if (U[v] || v == u) {
                        auto &a = alive[v];
                        a.erase(std::remove_if(a.begin(), a.end(), [&](int x) { return !U[x]; }), a.end());
                    }
                }
            } else {
                std::vector<bool> U = reach_in(u, w);
                for (int v : members) {
                    if (U[v]) ranks[v].push_back(rank_[u]);
                }
                for (int v : members) {
                    if (v == w || !U[v]) continue;
                    auto &a = alive[v];
                    if (v == u) {
                        a.erase(std::remove_if(a.begin(), a.end(), [&](int x) { return U[x] && x != u; }), a.end());
                    } else {
                        a.erase(std::remove_if(a.begin(), a.end(), [&](int x) { return !U[x]; }), a.end());
                    }
                }
            }
        }
        for (int v : members) {
            if (v != w && alive[v].empty()) throw std::logic_error("strategy valuation removed every move of a vertex");
        }

        std::vector<int> dist(n, -1);
        dist[w] = 0;
        if (good_[w]) {
            // the Environment delays the System's loop: longest path
            std::vector<int> state(n, 0);  // 0 new, 1 open, 2 done
            state[w] = 2;
            for (int root : members) {
                if (state[root] == 2) continue;
                std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
                state[root] = 1;
                while (!stack.empty()) {
                    auto &[v, i] = stack.back();
                    if (i < alive[v].size()) {
                        int x = alive[v][i++];
                        if (state[x] == 1) throw std::logic_error("cycle in strategy valuation distances");
                        if (state[x] == 0) {
                            state[x] = 1;
                            stack.push_back({x, 0});
                        }
                        continue;
                    }
                    int best = -1;
                    for (int x : alive[v]) best = std::max(best, dist[x]);
                    dist[v] = best + 1;
                    state[v] = 2;
                    stack.pop_back();
                }
            }
        } else {
            // the Environment hurries to its own loop: shortest path
            std::vector<std::vector<int>> pred(n);
            for (int v : members) {
                if (v == w) continue;
                for (int x : alive[v]) pred[x].push_back(v);
            }
            std::deque<int> queue{w};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int u : pred[v]) {
                    if (dist[u] < 0) {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        for (int v : members) {
            if (dist[v] < 0) throw std::logic_error("strategy valuation: vertex cannot reach its loop");
            prof_[v].w = w;
            prof_[v].ranks = ranks[v];
            prof_[v].d = dist[v];
        }
        // Environment moves realising the optimum (w is always an edge
        // vertex, so it never belongs to the Environment)
        for (int v : members) {
            if (g_.owner[v] != Player::Environment) continue;
            for (int x : alive[v]) {
                if (dist[x] == dist[v] - 1) {
                    tau_[v] = x;
                    break;
                }
            }
        }
    }

    const VGame &g_;
    std::vector<int> rank_, by_rank_;
    std::vector<bool> good_;
    std::vector<std::vector<int>> out_;
    std::vector<Profile> prof_;
    std::vector<int> tau_;
};

}  // namespace

SolveResult
strategy_iteration(const ParityGame &g, const Strategy &init, SwitchRule rule)
{
    g.validate();
    if (init.player != Player::System) throw GameError("strategy iteration needs a System strategy");
    if (init.size() != g.num_vertices()) throw GameError("initial strategy size does not match the game");
    VGame vg = detail::expand(g);
    std::vector<int> sigma(vg.n, -1);
    for (int v = 0; v < vg.n; v++) {
        if (vg.is_edge_vertex(v)) {
            sigma[v] = vg.succ[v][0];
        } else if (g.owner(v) == Player::System) {
            if (!init.defined(v)) throw GameError("initial strategy undefined on System vertex " + std::to_string(v));
            int e = init[v];
            if (e < 0 || e >= g.num_edges() || g.edge(e).src != v) {
                throw GameError("initial strategy picks a foreign edge at vertex " + std::to_string(v));
            }
            sigma[v] = vg.num_orig + e;
        }
    }

    Improver imp(vg);
    SolveResult r;
    for (;;) {
        imp.evaluate(sigma);
        std::vector<std::pair<int, int>> switches;
        for (int v = 0; v < vg.num_orig; v++) {
            if (g.owner(v) != Player::System) continue;
            if (rule == SwitchRule::LosingOnly && imp.good(imp.profile(v).w)) continue;
            int best = sigma[v];
            for (int x : vg.succ[v]) {
                if (imp.compare(imp.profile(x), imp.profile(best)) > 0) best = x;
            }
            if (best != sigma[v]) switches.push_back({v, best});
        }
        if (switches.empty()) break;
        for (auto [v, x] : switches) sigma[v] = x;
        r.rounds++;
    }

    const int n = g.num_vertices();
    r.winner.resize(n);
    r.system = Strategy(Player::System, n);
    r.environment = Strategy(Player::Environment, n);
    for (int v = 0; v < n; v++) {
        r.winner[v] = imp.good(imp.profile(v).w) ? Player::System : Player::Environment;
        if (g.owner(v) != r.winner[v]) continue;
        if (g.owner(v) == Player::System) {
            r.system[v] = vg.edge_of(sigma[v]);
        } else {
            int x = imp.tau(v);
            if (x < 0) throw std::logic_error("no Environment move recorded");
            r.environment[v] = vg.edge_of(x);
        }
    }
    return r;
}

}  // namespace pgg::game
