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

#include "pgg/features/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pgg/ltl/measures.hpp"
#include "pgg/util/hash.hpp"

namespace pgg::features {

using ltl::Formula;
using ltl::Op;
using translation::LabeledGame;
using translation::VertexKind;

const std::array<const char *, num_base_features> base_feature_names = {
    "conjuncts",  "disjuncts",      "height",         "temporal_ops",   "trueness",
    "system_control", "system_control_prop", "obligation_trueness", "obligation_system_control",
    "obligation_system_control_prop"};

namespace {

constexpr std::array<const char *, 5> edge_feature_names = {"priority", "progress", "one_step", "discharge_front",
                                                            "discharge_any"};

using Block = std::array<double, num_base_features>;

std::string
format_value(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const translation::VertexData &
system_choice(const LabeledGame &g, int v)
{
    const auto &d = g.vertex(v);
    if (d.kind != VertexKind::SysChoice) throw std::invalid_argument("vertex " + std::to_string(v) + " is not a System choice");
    return d;
}

}  // namespace

const char *
state_class_name(StateClass c)
{
    switch (c) {
    case StateClass::NoMonitors: return "no_monitors";
    case StateClass::MasterStable: return "master_stable";
    case StateClass::Other: return "other";
    }
    return "?";
}

StateClass
parse_state_class(const std::string &s)
{
    for (StateClass c : {StateClass::NoMonitors, StateClass::MasterStable, StateClass::Other}) {
        if (s == state_class_name(c)) return c;
    }
    throw std::invalid_argument("unknown state class '" + s + "'");
}

StateClass
classify_state(const LabeledGame &g, int v)
{
    const auto &d = system_choice(g, v);
    if (d.label.monitors.empty()) return StateClass::NoMonitors;
    for (int e : g.game.out_edges(v)) {
        if (g.vertex(g.game.edge(e).dst).label.master != d.label.master) return StateClass::Other;
    }
    return StateClass::MasterStable;
}

std::array<double, num_base_features>
base_features(const Formula &f, const ltl::Partition &p)
{
    const auto m = ltl::syntactic_metrics(f);
    const Formula ob = ltl::obligation_formula(f);
    return {static_cast<double>(m.conjuncts),
            static_cast<double>(m.disjuncts),
            static_cast<double>(m.height),
            static_cast<double>(m.temporal_ops),
            ltl::trueness_or_estimate(f).value,
            ltl::system_control(f, p),
            ltl::system_control_prop(f, p),
            ltl::trueness_or_estimate(ob).value,
            ltl::system_control(ob, p),
            ltl::system_control_prop(ob, p)};
}

std::string
FeatureSchema::id() const
{
    std::string all;
    for (const auto &n : names) all += n + ";";
    return "features-v" + std::to_string(version) + "-" + content_hash(all).substr(0, 8);
}

int
FeatureSchema::index(const std::string &name) const
{
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

std::vector<int>
FeatureSchema::subset(StateClass c) const
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(size()); i++) {
        bool keep = true;
        if (c == StateClass::NoMonitors) keep = !monitor[i];
        if (c == StateClass::MasterStable) keep = !master[i] || !normalized[i];
        if (keep) out.push_back(i);
    }
    return out;
}

std::vector<int>
FeatureSchema::paired(int i) const
{
    const std::string &n = names.at(i);
    auto dot = n.rfind('.');
    if (dot == std::string::npos) return {i};
    const std::string stem = n.substr(0, dot);
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(size()); k++) {
        if (names[k].rfind(stem + ".", 0) == 0 && names[k].find('.', stem.size() + 1) == std::string::npos) out.push_back(k);
    }
    return out;
}

nlohmann::json
FeatureSchema::to_json() const
{
    nlohmann::json fs = nlohmann::json::array();
    for (std::size_t i = 0; i < size(); i++) {
        fs.push_back({{"name", names[i]},
                      {"normalized", static_cast<bool>(normalized[i])},
                      {"master", static_cast<bool>(master[i])},
                      {"monitor", static_cast<bool>(monitor[i])}});
    }
    nlohmann::json classes = nlohmann::json::object();
    for (StateClass c : {StateClass::NoMonitors, StateClass::MasterStable, StateClass::Other}) {
        classes[state_class_name(c)] = subset(c);
    }
    return {{"id", id()}, {"version", version}, {"features", fs}, {"classes", classes}};
}

FeatureSchema
FeatureSchema::from_json(const nlohmann::json &j)
{
    try {
        FeatureSchema s;
        s.version = j.at("version").get<int>();
        for (const auto &f : j.at("features")) {
            s.names.push_back(f.at("name").get<std::string>());
            s.normalized.push_back(f.at("normalized").get<bool>());
            s.master.push_back(f.at("master").get<bool>());
            s.monitor.push_back(f.at("monitor").get<bool>());
        }
        if (j.contains("id") && j.at("id").get<std::string>() != s.id()) throw std::invalid_argument("feature schema id does not match its features");
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed feature schema: ") + e.what());
    }
}

const FeatureSchema &
default_schema()
{
    static const FeatureSchema s = [] {
        FeatureSchema s;
        for (const char *block : {"master", "monitors"}) {
            for (const char *b : base_feature_names) {
                for (const char *kind : {"succ", "delta"}) {
                    s.names.push_back(std::string(block) + "." + b + "." + kind);
                    s.normalized.push_back(true);
                    s.master.push_back(block[1] == 'a');
                    s.monitor.push_back(block[1] == 'o');
                }
            }
        }
        for (const char *n : edge_feature_names) {
            const std::string name = n;
            s.names.push_back(name);
            s.normalized.push_back(false);
            s.master.push_back(name == "one_step");
            s.monitor.push_back(name == "progress" || name.rfind("discharge", 0) == 0);
        }
        return s;
    }();
    return s;
}

double
priority_feature(int p, int bound)
{
    if (p < 0 || p > bound) throw std::invalid_argument("priority " + std::to_string(p) + " outside [0," + std::to_string(bound) + "]");
    const double d = bound + 1.0;
    return p % 2 ? 1.0 - (p - 1) / d : -1.0 + p / d;
}

double
position_weight(int pos, int m)
{
    if (m <= 0 || pos < 0 || pos >= m) throw std::invalid_argument("monitor position out of range");
    return static_cast<double>(m - pos) / (m * (m + 1) / 2.0);
}

double
progress_feature(const LabeledGame &g, int e)
{
    const auto &ed = g.game.edge(e);
    system_choice(g, ed.src);
    const VertexKind to = g.vertex(ed.dst).kind;
    if (to == VertexKind::FFSink) return -1.0;
    const auto &steps = g.edge_data(e).steps;
    if (steps.empty()) return to == VertexKind::TTSink ? 1.0 : 0.0;
    const int m = static_cast<int>(steps.size());
    double sum = 0.0;
    for (int i = 0; i < m; i++) {
        const auto &s = steps[i];
        double x;
        if (s.failed) {
            x = -0.5;
        } else if (s.completed) {
            x = 1.0;
        } else {
            x = s.pending > 0 ? static_cast<double>(s.discharged) / s.pending : 0.0;
        }
        sum += position_weight(i, m) * x;
    }
    return sum;
}

namespace {

using Rec = std::map<std::string, double>;

void
add_into(Rec &out, const Rec &r, double scale)
{
    for (const auto &[a, x] : r) out[a] += scale * x;
}

void
clamp(Rec &r)
{
    for (auto &[a, x] : r) x = std::clamp(x, -1.0, 1.0);
}

Rec
recommend(const Formula &f, const ltl::Partition &p)
{
    Rec out;
    switch (f.op()) {
    case Op::Atom:
        if (p.is_system(f.name())) out[f.name()] = 1.0;
        break;
    case Op::NegAtom:
        if (p.is_system(f.name())) out[f.name()] = -1.0;
        break;
    case Op::And:
        for (const Formula &c : f.children()) add_into(out, recommend(c, p), 1.0);
        break;
    case Op::Or:
        for (const Formula &c : f.children()) add_into(out, recommend(c, p), 0.5);
        break;
    case Op::Next:
    case Op::Globally: out = recommend(f.child(0), p); break;
    case Op::Finally: add_into(out, recommend(f.child(0), p), 0.5); break;
    case Op::Until:
    case Op::WeakUntil:
        add_into(out, recommend(f.child(0), p), 1.0);
        add_into(out, recommend(f.child(1), p), 0.5);
        break;
    case Op::Release:
    case Op::StrongRelease:
        add_into(out, recommend(f.child(0), p), 0.5);
        add_into(out, recommend(f.child(1), p), 1.0);
        break;
    default: break;
    }
    clamp(out);
    return out;
}

}  // namespace

std::map<std::string, double>
recommendation(const Formula &f, const ltl::Partition &p)
{
    Rec r = recommend(f, p);
    for (auto it = r.begin(); it != r.end();) it = it->second == 0.0 ? r.erase(it) : std::next(it);
    return r;
}

double
one_step_feature(const LabeledGame &g, int e)
{
    const auto &src = system_choice(g, g.game.edge(e).src);
    const auto r = recommendation(src.label.master, g.partition);
    const auto &letter = g.edge_data(e).valuation;
    double dot = 0.0, norm = 0.0;
    for (const auto &[a, x] : r) {
        dot += x * (letter.contains(a) ? 1.0 : -1.0);
        norm += std::abs(x);
    }
    if (norm == 0.0) return 0.5;
    return (1.0 + dot / norm) / 2.0;
}

Extractor::Extractor(const LabeledGame &g, const FeatureSchema &schema) : g_(g), schema_(schema)
{
    if (schema.id() != default_schema().id()) throw std::invalid_argument("unsupported feature schema " + schema.id());
}

namespace {

Block
formula_block(std::map<Formula, Block, ltl::FormulaLess> &cache, const Formula &f, const ltl::Partition &p)
{
    auto it = cache.find(f);
    if (it == cache.end()) it = cache.emplace(f, base_features(f, p)).first;
    return it->second;
}

}  // namespace

const Block &
Extractor::master_block(int v)
{
    auto it = master_.find(v);
    if (it == master_.end()) it = master_.emplace(v, formula_block(formula_, g_.vertex(v).label.master, g_.partition)).first;
    return it->second;
}

// Position-weighted mean over monitors of the smallest value among each
// monitor's tokens.
const Block &
Extractor::monitor_block(int v)
{
    auto it = monitor_.find(v);
    if (it != monitor_.end()) return it->second;
    const auto &mons = g_.vertex(v).label.monitors;
    Block out{};
    if (mons.empty()) {
        out = formula_block(formula_, ltl::tt(), g_.partition);
    } else {
        const int m = static_cast<int>(mons.size());
        for (int i = 0; i < m; i++) {
            Block lo;
            lo.fill(std::numeric_limits<double>::infinity());
            if (mons[i].tokens.empty()) lo = formula_block(formula_, ltl::tt(), g_.partition);
            for (const Formula &t : mons[i].tokens) {
                Block b = formula_block(formula_, t, g_.partition);
                for (int k = 0; k < num_base_features; k++) lo[k] = std::min(lo[k], b[k]);
            }
            for (int k = 0; k < num_base_features; k++) out[k] += position_weight(i, m) * lo[k];
        }
    }
    return monitor_.emplace(v, out).first->second;
}

FeatureVector
Extractor::edge(int e)
{
    const auto &ed = g_.game.edge(e);
    FeatureVector fv;
    fv.schema_id = schema_.id();
    fv.state_class = classify_state(g_, ed.src);
    fv.complement = g_.complement;
    fv.values.reserve(schema_.size());
    for (int block = 0; block < 2; block++) {
        const Block &before = block == 0 ? master_block(ed.src) : monitor_block(ed.src);
        const Block &after = block == 0 ? master_block(ed.dst) : monitor_block(ed.dst);
        for (int k = 0; k < num_base_features; k++) {
            fv.values.push_back(after[k]);
            fv.values.push_back(after[k] - before[k]);
        }
    }
    const auto &data = g_.edge_data(e);
    fv.values.push_back(priority_feature(ed.priority, g_.game.priority_bound()));
    fv.values.push_back(progress_feature(g_, e));
    fv.values.push_back(one_step_feature(g_, e));
    fv.values.push_back(data.discharge_position == 0 ? 1.0 : 0.0);
    fv.values.push_back(data.discharge_position >= 0 ? 1.0 : 0.0);
    for (double x : fv.values) {
        if (!std::isfinite(x)) throw std::logic_error("non-finite feature on edge " + std::to_string(e));
    }
    return fv;
}

std::vector<FeatureVector>
Extractor::state(int v)
{
    system_choice(g_, v);
    std::vector<FeatureVector> rows;
    for (int e : g_.game.out_edges(v)) rows.push_back(edge(e));
    statewise_normalize(rows, schema_);
    return rows;
}

void
statewise_normalize(std::vector<std::vector<double>> &rows, const std::vector<bool> &mask)
{
    if (rows.empty()) throw std::invalid_argument("statewise normalization needs at least one edge");
    for (const auto &r : rows) {
        if (r.size() != mask.size()) throw std::invalid_argument("feature row does not match the schema");
    }
    for (std::size_t k = 0; k < mask.size(); k++) {
        if (!mask[k]) continue;
        double lo = rows[0][k], hi = rows[0][k];
        for (const auto &r : rows) {
            lo = std::min(lo, r[k]);
            hi = std::max(hi, r[k]);
        }
        for (auto &r : rows) r[k] = hi > lo ? (r[k] - lo) / (hi - lo) : 0.5;
    }
}

void
statewise_normalize(std::vector<FeatureVector> &rows, const FeatureSchema &schema)
{
    std::vector<std::vector<double>> m;
    for (auto &r : rows) m.push_back(std::move(r.values));
    statewise_normalize(m, schema.normalized);
    for (std::size_t i = 0; i < rows.size(); i++) rows[i].values = std::move(m[i]);
}

std::string
features_csv_header(const FeatureSchema &schema)
{
    std::string h = "game_id,state,valuation,class,complement";
    for (const auto &n : schema.names) h += "," + n;
    return h + "\n";
}

std::string
features_csv_rows(const std::string &game_id, const LabeledGame &g, const FeatureSchema &schema)
{
    Extractor ex(g, schema);
    std::ostringstream out;
    for (int v : g.system_choices()) {
        const auto rows = ex.state(v);
        const auto &edges = g.game.out_edges(v);
        for (std::size_t i = 0; i < rows.size(); i++) {
            out << game_id << ',' << v << ",\"" << g.edge_data(edges[i]).valuation.to_string() << "\","
                << state_class_name(rows[i].state_class) << ',' << (rows[i].complement ? 1 : 0);
            for (double x : rows[i].values) out << ',' << format_value(x);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace pgg::features
