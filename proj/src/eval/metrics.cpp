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

#include "pgg/eval/eval.hpp"
#include "pgg/ltl/measures.hpp"
#include "pgg/util/hash.hpp"

namespace pgg::eval {

using game::ParityGame;
using game::Player;
using game::Strategy;
using translation::LabeledGame;
using translation::VertexKind;

bool
immediately_solved(const ParityGame &g, const Strategy &s)
{
    return game::one_player_check(g, s);
}

bool
immediately_solved(const LabeledGame &g, const Strategy &s)
{
    return immediately_solved(g.game, s);
}

double
relative_distance(const ParityGame &g, const Strategy &s)
{
    const auto solved = game::zielonka_solve(g);
    if (solved.winner[g.initial()] != Player::System) throw EvalError("System does not win the game; relative distance is undefined");
    const auto reach = game::reachable(g, g.initial());
    for (int v = 0; v < g.num_vertices(); v++) {
        if (reach[v] && g.owner(v) == Player::System && !s.defined(v)) {
            throw EvalError("strategy undefined on reachable System vertex " + std::to_string(v));
        }
    }
    const auto ref = game::strategy_iteration(g, game::complete_strategy(g, s), game::SwitchRule::LosingOnly).system;
    // Repairs off the plays the repaired strategy allows do not count: SI
    // also fixes losing vertices that no winning play visits.
    const auto used = game::reachable(g, g.initial(), &ref);
    int total = 0, differ = 0;
    for (int v = 0; v < g.num_vertices(); v++) {
        if (!reach[v] || g.owner(v) != Player::System) continue;
        total++;
        differ += used[v] && ref.defined(v) && ref[v] != s[v];
    }
    return total ? static_cast<double>(differ) / total : 0.0;
}

double
relative_distance(const LabeledGame &g, const Strategy &s)
{
    return relative_distance(g.game, s);
}

Strategy
baseline_trueness(const LabeledGame &g)
{
    Strategy s(Player::System, g.num_vertices());
    for (int v : g.system_choices()) {
        int best = -1;
        double hi = -1.0;
        for (int e : g.game.out_edges(v)) {
            const double t = ranker::successor_trueness(g, e);
            if (best < 0 || t > hi || (t == hi && ranker::edge_order_key(g, e) < ranker::edge_order_key(g, best))) {
                best = e;
                hi = t;
            }
        }
        s[v] = best;
    }
    return s;
}

Strategy
baseline_random(const LabeledGame &g, std::uint64_t seed)
{
    Strategy s(Player::System, g.num_vertices());
    for (int v : g.system_choices()) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(v)));
        s[v] = rng.pick(g.game.out_edges(v));
    }
    return s;
}

double
logistic(double x)
{
    return 1.0 / (1.0 + std::exp(-x));
}

double
exploration_score(const LabeledGame &g, const ranker::RankerBank &bank, int p, int q)
{
    if (p < 0 || p >= g.num_vertices() || q < 0 || q >= g.num_vertices()) throw EvalError("exploration endpoints out of range");
    if (g.vertex(p).kind != VertexKind::EnvChoice) throw EvalError("exploration must start at an Environment choice");
    const VertexKind qk = g.vertex(q).kind;
    if (qk == VertexKind::SysChoice) throw EvalError("exploration must end at an Environment choice or a sink");
    bool found = false;
    double value = 1.0;
    const double global = ltl::trueness_or_estimate(g.vertex(q).label.master).value;
    for (int e : g.game.out_edges(p)) {
        const int s = g.game.edge(e).dst;
        const auto r = ranker::rank_edges(g, s, bank);
        for (std::size_t i = 0; i < r.edges.size(); i++) {
            if (g.game.edge(r.edges[i]).dst != q) continue;
            found = true;
            value = std::min(value, logistic(r.scores[i]) * global);
            break;
        }
    }
    if (!found) throw EvalError("vertex " + std::to_string(q) + " is not two plies after vertex " + std::to_string(p));
    if (qk == VertexKind::TTSink) return 1.0;
    if (qk == VertexKind::FFSink) return 0.0;
    return value;
}

namespace {

using ltl::Formula;
using ltl::Op;

void
temporal_nodes(const Formula &f, std::vector<const Formula *> &out)
{
    if (ltl::is_temporal(f.op())) out.push_back(&f);
    for (const Formula &c : f.children()) temporal_nodes(c, out);
}

Formula
replace_node(const Formula &f, const Formula *target, Op op)
{
    if (&f == target) return ltl::make(op, f.children());
    if (f.arity() == 0) return f;
    std::vector<Formula> kids;
    for (const Formula &c : f.children()) kids.push_back(replace_node(c, target, op));
    return ltl::make(f.op(), std::move(kids), f.name());
}

}  // namespace

Formula
mutate_formula(const Formula &f, std::uint64_t seed)
{
    std::vector<const Formula *> nodes;
    temporal_nodes(f, nodes);
    if (nodes.empty()) throw EvalError("formula " + f.to_string() + " has no temporal operator to mutate");
    static const std::vector<Op> unary{Op::Next, Op::Finally, Op::Globally};
    static const std::vector<Op> binary{Op::Until, Op::WeakUntil, Op::Release, Op::StrongRelease};
    Rng rng(seed);
    for (int attempt = 0; attempt < 20; attempt++) {
        const Formula *n = rng.pick(nodes);
        std::vector<Op> ops;
        for (Op o : ltl::is_unary_temporal(n->op()) ? unary : binary) {
            if (o != n->op()) ops.push_back(o);
        }
        const Formula out = ltl::simplify(ltl::to_nnf(replace_node(f, n, rng.pick(ops))));
        if (out == f || out.is_constant()) continue;
        if (translation::classify_fragment(out) == translation::Fragment::Unsupported) continue;
        return out;
    }
    throw EvalError("no translatable mutation of " + f.to_string() + " within 20 attempts");
}

}  // namespace pgg::eval
