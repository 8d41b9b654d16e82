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
#include <deque>
#include <map>

#include "pgg/translation/translation.hpp"

namespace pgg::translation {

using game::Player;
using ltl::Formula;
using ltl::Valuation;

const char *
vertex_kind_name(VertexKind k)
{
    switch (k) {
    case VertexKind::EnvChoice: return "env_choice";
    case VertexKind::SysChoice: return "sys_choice";
    case VertexKind::TTSink: return "tt_sink";
    case VertexKind::FFSink: return "ff_sink";
    }
    return "?";
}

std::string
SemanticLabel::key() const
{
    std::string k = master.to_string();
    for (const Monitor &m : monitors) {
        k += m.kind == MonitorKind::Recurring ? " |R " : " |O ";
        k += m.goal.to_string();
        for (const Formula &t : m.tokens) k += " ; " + t.to_string();
    }
    return k;
}

bool
LabeledGame::is_sink(int v) const
{
    VertexKind k = vertices.at(v).kind;
    return k == VertexKind::TTSink || k == VertexKind::FFSink;
}

std::vector<int>
LabeledGame::system_choices() const
{
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); v++) {
        if (vertices[v].kind == VertexKind::SysChoice) out.push_back(v);
    }
    return out;
}

int
LabeledGame::find_sink(VertexKind k) const
{
    for (int v = 0; v < num_vertices(); v++) {
        if (vertices[v].kind == k) return v;
    }
    return -1;
}

namespace {

std::vector<Formula>
split_tokens(const Formula &f)
{
    if (f.is_true()) return {};
    std::vector<Formula> out = conjuncts(f);
    std::sort(out.begin(), out.end(), ltl::FormulaLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

enum class Target { Label, TT, FF };

struct Step {
    Target target = Target::Label;
    SemanticLabel next;
    int priority = 1;
    std::vector<MonitorStep> steps;
    int discharge_position = -1;
};

class Builder {
public:
    Builder(const Formula &f, const ltl::Partition &p, const BuildOptions &opts) : opts_(opts)
    {
        out_.formula = f;
        out_.partition = p;
        out_.fragment = classify_fragment(f);
        env_props_ = p.environment_list();
        sys_props_ = p.system_list();
    }

    LabeledGame run();

private:
    SemanticLabel initial_label() const;
    Step step(const SemanticLabel &l, const Valuation &letter) const;
    int vertex(const std::string &key, VertexData data);
    int sink(VertexKind k);
    std::string describe() const { return "formula '" + out_.formula.to_string() + "'"; }

    BuildOptions opts_;
    LabeledGame out_;
    std::vector<std::string> env_props_, sys_props_;
    std::map<std::string, int> index_;
    std::deque<int> queue_;
    int neutral_ = 2;
};

SemanticLabel
Builder::initial_label() const
{
    const Formula &f = out_.formula;
    SemanticLabel l{normalize_label(f), {}};
    auto obligation = [](const Formula &goal) {
        Formula g = normalize_label(goal);
        return Monitor{MonitorKind::FiniteObligation, g, split_tokens(g)};
    };
    switch (out_.fragment) {
    case Fragment::Safety: break;
    case Fragment::CoSafety: l.monitors.push_back(obligation(f)); break;
    case Fragment::GConjunction: {
        std::vector<Formula> pre, recurring;
        for (const Formula &c : conjuncts(f)) {
            if (c.op() != ltl::Op::Globally) {
                pre.push_back(c);
            } else if (!is_safety(c.child(0))) {
                recurring.push_back(c.child(0));
            }
        }
        Formula p = ltl::conj(pre);
        if (!is_safety(p)) l.monitors.push_back(obligation(p));
        for (const Formula &g : recurring) {
            Formula goal = normalize_label(g);
            l.monitors.push_back(Monitor{MonitorKind::Recurring, goal, split_tokens(goal)});
        }
        break;
    }
    case Fragment::Unsupported: throw TranslationError(describe() + " is outside the supported fragment");
    }
    return l;
}

Step
Builder::step(const SemanticLabel &l, const Valuation &letter) const
{
    Step s;
    Formula master = normalize_label(ltl::af(l.master, letter));
    std::vector<Monitor> kept, rotated;
    bool obligation_failed = false, goal_failed = false;
    for (std::size_t i = 0; i < l.monitors.size(); i++) {
        const Monitor &m = l.monitors[i];
        MonitorStep ms;
        ms.pending = static_cast<int>(m.tokens.size());
        std::vector<Formula> next;
        for (const Formula &t : m.tokens) {
            Formula r = normalize_label(ltl::af(t, letter));
            if (r.is_true()) {
                ms.discharged++;
            } else if (r.is_false()) {
                ms.failed = true;
            } else {
                for (const Formula &k : split_tokens(r)) next.push_back(k);
            }
        }
        std::sort(next.begin(), next.end(), ltl::FormulaLess{});
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (ms.failed) {
            (m.kind == MonitorKind::Recurring ? goal_failed : obligation_failed) = true;
        } else if (next.empty()) {
            ms.completed = true;
            if (s.discharge_position < 0) s.discharge_position = static_cast<int>(i);
            if (m.kind == MonitorKind::Recurring) {
                Formula fresh = normalize_label(ltl::af(m.goal, letter));
                if (fresh.is_false()) {
                    ms.failed = true;
                    goal_failed = true;
                }
                rotated.push_back(Monitor{m.kind, m.goal, split_tokens(fresh.is_true() ? m.goal : fresh)});
            }
        } else {
            kept.push_back(Monitor{m.kind, m.goal, std::move(next)});
        }
        s.steps.push_back(ms);
    }
    if (master.is_false() || obligation_failed) {
        s.target = Target::FF;
        s.priority = 0;
        return s;
    }
    if (goal_failed) throw TranslationError("unsupported goal shape in a recurring monitor of " + describe());
    for (Monitor &m : rotated) kept.push_back(std::move(m));
    bool recurring = std::any_of(kept.begin(), kept.end(), [](const Monitor &m) { return m.kind == MonitorKind::Recurring; });
    if (master.is_true() && !recurring) {
        s.target = Target::TT;
        s.priority = 1;
        return s;
    }
    s.next = SemanticLabel{master, std::move(kept)};
    if (l.monitors.empty() || s.discharge_position == 0) {
        s.priority = 1;
    } else if (s.discharge_position > 0) {
        s.priority = 2 * s.discharge_position;
    } else {
        s.priority = 2;
    }
    return s;
}

int
Builder::vertex(const std::string &key, VertexData data)
{
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    if (static_cast<std::size_t>(out_.num_vertices()) >= opts_.max_vertices) {
        throw TranslationError("state budget of " + std::to_string(opts_.max_vertices) + " vertices exceeded for " + describe());
    }
    auto too_tall = [&](const Formula &f) { return f.height() > opts_.max_label_height; };
    bool tall = too_tall(data.label.master);
    for (const Monitor &m : data.label.monitors) {
        for (const Formula &t : m.tokens) tall = tall || too_tall(t);
    }
    if (tall) throw TranslationError("label formulas grow beyond height " + std::to_string(opts_.max_label_height) + " for " + describe());
    int v = out_.game.add_vertex(data.kind == VertexKind::SysChoice ? Player::System : Player::Environment);
    out_.vertices.push_back(std::move(data));
    index_.emplace(key, v);
    queue_.push_back(v);
    return v;
}

int
Builder::sink(VertexKind k)
{
    Formula m = k == VertexKind::TTSink ? ltl::tt() : ltl::ff();
    return vertex(vertex_kind_name(k), VertexData{k, SemanticLabel{m, {}}, {}});
}

LabeledGame
Builder::run()
{
    const Formula &f = out_.formula;
    if (!out_.partition.disjoint()) throw TranslationError("proposition partition of " + describe() + " is not disjoint");
    if (!out_.partition.covers(f)) throw TranslationError("proposition partition does not cover " + describe());
    if (static_cast<int>(env_props_.size()) > opts_.max_props || static_cast<int>(sys_props_.size()) > opts_.max_props) {
        throw TranslationError("too many propositions for " + describe());
    }
    SemanticLabel init = initial_label();
    const int m = static_cast<int>(init.monitors.size());
    neutral_ = std::max(2, 2 * (m - 1));

    const std::vector<Valuation> env_letters = ltl::all_valuations(env_props_);
    const std::vector<Valuation> sys_letters = ltl::all_valuations(sys_props_);
    vertex("E " + init.key(), VertexData{VertexKind::EnvChoice, init, {}});
    auto add_edge = [&](int src, int dst, int prio, EdgeData d) {
        out_.game.add_edge(src, dst, prio);
        out_.edges.push_back(std::move(d));
    };
    while (!queue_.empty()) {
        const int v = queue_.front();
        queue_.pop_front();
        const VertexData data = out_.vertices[v];
        switch (data.kind) {
        case VertexKind::TTSink: add_edge(v, v, 1, {}); break;
        case VertexKind::FFSink: add_edge(v, v, 0, {}); break;
        case VertexKind::EnvChoice:
            for (const Valuation &e : env_letters) {
                int w = vertex("S " + data.label.key() + " @ " + e.to_string(), VertexData{VertexKind::SysChoice, data.label, e});
                add_edge(v, w, neutral_, EdgeData{e, {}, -1});
            }
            break;
        case VertexKind::SysChoice:
            for (const Valuation &s : sys_letters) {
                Step st = step(data.label, data.env.united(s));
                int w;
                if (st.target == Target::TT) {
                    w = sink(VertexKind::TTSink);
                } else if (st.target == Target::FF) {
                    w = sink(VertexKind::FFSink);
                } else {
                    w = vertex("E " + st.next.key(), VertexData{VertexKind::EnvChoice, st.next, {}});
                }
                add_edge(v, w, st.priority, EdgeData{s, std::move(st.steps), st.discharge_position});
            }
            break;
        }
    }
    out_.game.set_initial(0);
    out_.game.set_priority_bound(std::max(neutral_, out_.game.max_priority()));
    return std::move(out_);
}

}  // namespace

LabeledGame
build_game(const Formula &f, const ltl::Partition &p, const BuildOptions &opts)
{
    return Builder(f, p, opts).run();
}

LabeledGame
complement_game(const Formula &f, const ltl::Partition &p, const BuildOptions &opts)
{
    Formula neg = complement_formula(f, p);
    if (classify_fragment(neg) == Fragment::Unsupported) {
        throw TranslationError("negation of formula '" + f.to_string() + "' leaves the supported fragment");
    }
    LabeledGame g = build_game(neg, p.swapped(), opts);
    g.complement = true;
    return g;
}

void
check_alternation(const LabeledGame &g)
{
    auto fail = [](int v, const std::string &why) {
        throw TranslationError("alternation violated at vertex " + std::to_string(v) + ": " + why);
    };
    if (g.vertices.size() != static_cast<std::size_t>(g.num_vertices()) || g.edges.size() != static_cast<std::size_t>(g.game.num_edges())) {
        fail(-1, "label tables do not match the game");
    }
    if (g.vertex(g.game.initial()).kind != VertexKind::EnvChoice) fail(g.game.initial(), "initial vertex is not an environment choice");
    for (int v = 0; v < g.num_vertices(); v++) {
        const VertexKind k = g.vertex(v).kind;
        const Player want = k == VertexKind::SysChoice ? Player::System : Player::Environment;
        if (g.game.owner(v) != want) fail(v, "wrong owner");
        for (int e : g.game.out_edges(v)) {
            const int w = g.game.edge(e).dst;
            const VertexKind t = g.vertex(w).kind;
            bool ok = false;
            switch (k) {
            case VertexKind::EnvChoice: ok = t == VertexKind::SysChoice; break;
            case VertexKind::SysChoice: ok = t != VertexKind::SysChoice; break;
            case VertexKind::TTSink:
            case VertexKind::FFSink: ok = w == v; break;
            }
            if (!ok) fail(v, std::string("edge to ") + vertex_kind_name(t));
        }
    }
}

}  // namespace pgg::translation
