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
#include <numeric>

#include "pgg/ltl/measures.hpp"
#include "pgg/ranker/ranker.hpp"

namespace pgg::ranker {

using translation::LabeledGame;
using translation::VertexKind;

std::pair<int, std::uint64_t>
edge_order_key(const LabeledGame &g, int e)
{
    const auto &letter = g.edge_data(e).valuation;
    std::uint64_t bits = 0;
    int i = 0;
    for (const auto &a : g.partition.system) {
        if (letter.contains(a)) bits |= 1ULL << i;
        i++;
    }
    return {g.game.edge(e).dst, bits};
}

double
successor_trueness(const LabeledGame &g, int e)
{
    return ltl::trueness_or_estimate(g.vertex(g.game.edge(e).dst).label.master).value;
}

Ranking
rank_edges(const LabeledGame &g, int v, const RankerBank &bank, const std::vector<features::FeatureVector> &fv)
{
    const auto &out = g.game.out_edges(v);
    if (g.vertex(v).kind != VertexKind::SysChoice) throw std::invalid_argument("vertex " + std::to_string(v) + " is not a System choice");
    if (fv.size() != out.size()) throw std::invalid_argument("feature rows do not match the out-edges");
    const std::size_t n = out.size();
    std::vector<double> score(n, 0.0);
    Ranking r;
    const LinearModel *m = bank.model(fv[0].state_class, g.complement);
    if (n > 1 && m) {
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = i + 1; j < n; j++) {
                const double c = m->confidence(fv[i].values, fv[j].values);
                score[i] += c;
                score[j] -= c;
            }
        }
    } else if (n > 1) {
        r.fallback = true;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; i++) {
            score[i] = successor_trueness(g, out[i]);
            mean += score[i];
        }
        mean /= static_cast<double>(n);
        for (double &s : score) s -= mean;
    }
    auto tier = [&](std::size_t i) {
        const VertexKind k = g.vertex(g.game.edge(out[i]).dst).kind;
        return k == VertexKind::TTSink ? 0 : k == VertexKind::FFSink ? 2 : 1;
    };
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (tier(a) != tier(b)) return tier(a) < tier(b);
        if (score[a] != score[b]) return score[a] > score[b];
        return edge_order_key(g, out[a]) < edge_order_key(g, out[b]);
    });
    for (std::size_t i : idx) {
        r.edges.push_back(out[i]);
        r.scores.push_back(score[i]);
    }
    return r;
}

Ranking
rank_edges(const LabeledGame &g, int v, const RankerBank &bank)
{
    features::Extractor ex(g);
    return rank_edges(g, v, bank, ex.state(v));
}

game::Strategy
recommend_strategy(const LabeledGame &g, const RankerBank &bank)
{
    const auto reach = game::reachable(g.game, g.game.initial());
    game::Strategy s(game::Player::System, g.num_vertices());
    features::Extractor ex(g);
    for (int v : g.system_choices()) {
        if (reach[v]) s[v] = rank_edges(g, v, bank, ex.state(v)).edges.front();
    }
    return s;
}

}  // namespace pgg::ranker
