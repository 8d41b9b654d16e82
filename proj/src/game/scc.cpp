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

#include "pgg/game/parity_game.hpp"

namespace pgg::game {

// Iterative Tarjan. Components come out sinks first, which is the
// reverse topological order of the condensation.
std::vector<std::vector<int>>
scc_decompose(const ParityGame &g, const std::vector<bool> &keep, const std::vector<bool> &edge_ok)
{
    const int n = g.num_vertices();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; root++) {
        if (!keep[root] || index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame &f = call.back();
            const auto &outs = g.out_edges(f.v);
            if (f.next < outs.size()) {
                int e = outs[f.next++];
                if (!edge_ok[e]) continue;
                int w = g.edge(e).dst;
                if (!keep[w]) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            int v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    return out;
}

std::vector<std::vector<int>>
scc_decompose(const ParityGame &g)
{
    return scc_decompose(g, std::vector<bool>(g.num_vertices(), true), std::vector<bool>(g.num_edges(), true));
}

}  // namespace pgg::game
