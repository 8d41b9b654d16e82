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
#include <bit>
#include <cmath>
#include <cstdio>

#include "pgg/ranker/ranker.hpp"
#include "pgg/util/hash.hpp"
#include "pgg/util/random.hpp"

namespace pgg::ranker {

int
model_index(StateClass c, bool complement)
{
    return 2 * static_cast<int>(c) + (complement ? 1 : 0);
}

void
TrainConfig::validate() const
{
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
    if (!(eta0 > 0.0)) throw std::invalid_argument("eta0 must be positive");
    if (pair_cap < 1) throw std::invalid_argument("pair cap must be at least 1");
    if (min_features < 1 || min_features > max_features) throw std::invalid_argument("feature range is empty");
    if (!(max_validation_drop >= 0.0)) throw std::invalid_argument("validation drop must be non-negative");
}

nlohmann::json
TrainConfig::to_json() const
{
    return {{"lambda", lambda},
            {"epochs", epochs},
            {"eta0", eta0},
            {"pair_cap", pair_cap},
            {"min_features", min_features},
            {"max_features", max_features},
            {"max_validation_drop", max_validation_drop},
            {"seed", seed}};
}

std::size_t
PairDataset::size() const
{
    std::size_t n = 0;
    for (const auto &s : samples) n += s.size();
    return n;
}

std::string
PairDataset::hash() const
{
    std::uint64_t h = fnv_offset;
    for (int m = 0; m < num_models; m++) {
        h = fnv1a_u64(static_cast<std::uint64_t>(m), h);
        for (const auto &s : samples[m]) {
            h = fnv1a(s.game_id, h);
            h = fnv1a_u64(static_cast<std::uint64_t>(s.y + 1), h);
            for (double x : s.x) h = fnv1a_u64(std::bit_cast<std::uint64_t>(x), h);
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Candidate {
    int model;
    const std::vector<double> *a, *b;
    int y;
    StateClass cls;
};

std::string
model_name(int m)
{
    return std::string(features::state_class_name(static_cast<StateClass>(m / 2))) + (m % 2 ? "/complement" : "/original");
}

}  // namespace

PairDataset
build_pair_dataset(const std::vector<GameRecord> &games, const TrainConfig &cfg)
{
    cfg.validate();
    PairDataset out;
    for (const GameRecord &r : games) {
        if (!r.game || !r.truth) throw std::invalid_argument("game record " + r.id + " is incomplete");
        const auto &g = *r.game;
        const auto &t = *r.truth;
        if (t.value.size() != static_cast<std::size_t>(g.game.num_edges())) {
            throw std::invalid_argument("ground truth of " + r.id + " does not match its game");
        }
        features::Extractor ex(g);
        std::vector<std::vector<features::FeatureVector>> states;
        std::vector<Candidate> cands;
        const auto choices = g.system_choices();
        states.reserve(choices.size());
        for (int v : choices) {
            const auto &out_edges = g.game.out_edges(v);
            std::vector<int> keep;
            for (std::size_t i = 0; i < out_edges.size(); i++) {
                const int e = out_edges[i];
                if (t.has(e) && !t.trivial[e]) keep.push_back(static_cast<int>(i));
            }
            if (keep.size() < 2) continue;
            states.push_back(ex.state(v));
            const auto &fv = states.back();
            const StateClass cls = fv[0].state_class;
            const int m = model_index(cls, g.complement);
            for (std::size_t i = 0; i < keep.size(); i++) {
                for (std::size_t j = i + 1; j < keep.size(); j++) {
                    const double a = t.at(out_edges[keep[i]]), b = t.at(out_edges[keep[j]]);
                    if (std::abs(a - b) <= 1e-12) continue;
                    cands.push_back({m, &fv[keep[i]].values, &fv[keep[j]].values, a > b ? 1 : -1, cls});
                }
            }
        }
        if (cands.size() > static_cast<std::size_t>(cfg.pair_cap)) {
            std::vector<std::size_t> idx(cands.size());
            for (std::size_t i = 0; i < idx.size(); i++) idx[i] = i;
            Rng rng(derive_seed(cfg.seed, fnv1a(r.id)));
            rng.shuffle(idx);
            idx.resize(cfg.pair_cap);
            std::sort(idx.begin(), idx.end());
            std::vector<Candidate> kept;
            for (std::size_t i : idx) kept.push_back(cands[i]);
            cands = std::move(kept);
        }
        for (const Candidate &c : cands) {
            for (int flip = 0; flip < 2; flip++) {
                PairSample s;
                const auto &first = flip ? *c.b : *c.a;
                const auto &second = flip ? *c.a : *c.b;
                s.x = first;
                s.x.insert(s.x.end(), second.begin(), second.end());
                s.y = flip ? -c.y : c.y;
                s.state_class = c.cls;
                s.complement = g.complement;
                s.game_id = r.id;
                out.samples[c.model].push_back(std::move(s));
            }
        }
    }
    for (int m = 0; m < num_models; m++) {
        if (out.samples[m].empty()) out.warnings.push_back("no training pairs for " + model_name(m) + "; ranking falls back to trueness");
    }
    return out;
}

}  // namespace pgg::ranker
