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

#include <climits>
#include <deque>

#include "expanded.hpp"

namespace pgg::game {

namespace {

using detail::VGame;

class Zielonka {
public:
    explicit Zielonka(const VGame &g) : g_(g), win_(g.n, Player::System), str_(g.n, -1) {}

    void run()
    {
        solve(std::vector<bool>(g_.n, true));
    }

    const std::vector<Player> &winner() const { return win_; }
    const std::vector<int> &strategy() const { return str_; }

private:
    // Attractor of `target` for `pl` inside `in`; records attractor moves.
    std::vector<bool> attract(const std::vector<bool> &in, const std::vector<bool> &target, Player pl)
    {
        std::vector<bool> a = target;
        std::vector<int> count(g_.n, 0);
        std::deque<int> queue;
        for (int v = 0; v < g_.n; v++) {
            if (!in[v]) continue;
            if (a[v]) queue.push_back(v);
            for (int w : g_.succ[v]) count[v] += in[w];
        }
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u : g_.pred[v]) {
                if (!in[u] || a[u]) continue;
                if (g_.owner[u] == pl) {
                    a[u] = true;
                    str_[u] = v;
                    queue.push_back(u);
                } else if (--count[u] == 0) {
                    a[u] = true;
                    queue.push_back(u);
                }
            }
        }
        return a;
    }

    void solve(const std::vector<bool> &in)
    {
        int p = INT_MAX;
        for (int v = 0; v < g_.n; v++) {
            if (in[v] && g_.prio[v] < p) p = g_.prio[v];
        }
        if (p == INT_MAX) return;
        const Player a = priority_player(p);
        const Player b = opponent(a);

        std::vector<bool> top(g_.n, false);
        for (int v = 0; v < g_.n; v++) top[v] = in[v] && g_.prio[v] == p;
        std::vector<bool> attr = attract(in, top, a);
        std::vector<bool> sub(g_.n);
        for (int v = 0; v < g_.n; v++) sub[v] = in[v] && !attr[v];
        solve(sub);

        std::vector<bool> lost(g_.n, false);
        bool any_lost = false;
        for (int v = 0; v < g_.n; v++) {
            if (sub[v] && win_[v] == b) lost[v] = any_lost = true;
        }
        if (!any_lost) {
            for (int v = 0; v < g_.n; v++) {
                if (!in[v]) continue;
                win_[v] = a;
                if (top[v] && g_.owner[v] == a) {
                    for (int w : g_.succ[v]) {
                        if (in[w]) {
                            str_[v] = w;
                            break;
                        }
                    }
                }
            }
            return;
        }
        std::vector<bool> battr = attract(in, lost, b);
        std::vector<bool> rest(g_.n);
        for (int v = 0; v < g_.n; v++) rest[v] = in[v] && !battr[v];
        solve(rest);
        for (int v = 0; v < g_.n; v++) {
            if (battr[v]) win_[v] = b;
        }
    }

    const VGame &g_;
    std::vector<Player> win_;
    std::vector<int> str_;
};

}  // namespace

SolveResult
zielonka_solve(const ParityGame &g)
{
    g.validate();
    VGame vg = detail::expand(g);
    Zielonka z(vg);
    z.run();
    SolveResult r;
    const int n = g.num_vertices();
    r.winner.assign(z.winner().begin(), z.winner().begin() + n);
    r.system = Strategy(Player::System, n);
    r.environment = Strategy(Player::Environment, n);
    for (int v = 0; v < n; v++) {
        if (g.owner(v) != r.winner[v]) continue;
        int x = z.strategy()[v];
        if (x < 0) throw std::logic_error("solver left a winning vertex without a move");
        Strategy &s = r.winner[v] == Player::System ? r.system : r.environment;
        s[v] = vg.edge_of(x);
    }
    return r;
}

}  // namespace pgg::game
