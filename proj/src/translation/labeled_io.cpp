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

#include "pgg/game/io.hpp"
#include "pgg/ltl/parser.hpp"
#include "pgg/translation/translation.hpp"

namespace pgg::translation {

using nlohmann::json;
using ltl::Formula;

namespace {

json
valuation_json(const ltl::Valuation &v)
{
    return json(v.names());
}

ltl::Valuation
valuation_of(const json &j)
{
    return ltl::Valuation(j.get<std::vector<std::string>>());
}

Formula
formula_of(const json &j)
{
    return ltl::parse(j.get<std::string>());
}

VertexKind
kind_of(const std::string &s)
{
    for (VertexKind k : {VertexKind::EnvChoice, VertexKind::SysChoice, VertexKind::TTSink, VertexKind::FFSink}) {
        if (s == vertex_kind_name(k)) return k;
    }
    throw TranslationError("unknown vertex kind '" + s + "'");
}

Fragment
fragment_of(const std::string &s)
{
    for (Fragment f : {Fragment::Safety, Fragment::CoSafety, Fragment::GConjunction, Fragment::Unsupported}) {
        if (s == fragment_name(f)) return f;
    }
    throw TranslationError("unknown fragment '" + s + "'");
}

}  // namespace

json
labeled_game_to_json(const LabeledGame &g)
{
    json j = game::game_to_json(g.game);
    j["formula"] = g.formula.to_string();
    j["system"] = g.partition.system_list();
    j["environment"] = g.partition.environment_list();
    j["fragment"] = fragment_name(g.fragment);
    j["complement"] = g.complement;
    json vs = json::array();
    for (const VertexData &d : g.vertices) {
        json ms = json::array();
        for (const Monitor &m : d.label.monitors) {
            json toks = json::array();
            for (const Formula &t : m.tokens) toks.push_back(t.to_string());
            ms.push_back({{"kind", m.kind == MonitorKind::Recurring ? "recurring" : "obligation"},
                          {"goal", m.goal.to_string()},
                          {"tokens", std::move(toks)}});
        }
        json v = {{"kind", vertex_kind_name(d.kind)}, {"master", d.label.master.to_string()}, {"monitors", std::move(ms)}};
        if (d.kind == VertexKind::SysChoice) v["env"] = valuation_json(d.env);
        vs.push_back(std::move(v));
    }
    j["labels"] = std::move(vs);
    json es = json::array();
    for (const EdgeData &d : g.edges) {
        json e = {{"valuation", valuation_json(d.valuation)}};
        if (!d.steps.empty()) {
            json st = json::array();
            for (const MonitorStep &s : d.steps) {
                st.push_back({{"pending", s.pending}, {"discharged", s.discharged}, {"completed", s.completed}, {"failed", s.failed}});
            }
            e["steps"] = std::move(st);
        }
        if (d.discharge_position >= 0) e["discharge"] = d.discharge_position;
        es.push_back(std::move(e));
    }
    j["edge_labels"] = std::move(es);
    return j;
}

LabeledGame
labeled_game_from_json(const json &j)
{
    LabeledGame g;
    g.game = game::game_from_json(j);
    if (!j.contains("labels") || !j.contains("edge_labels")) throw TranslationError("game carries no semantic labels");
    try {
        g.formula = formula_of(j.at("formula"));
        for (const std::string &a : j.at("system").get<std::vector<std::string>>()) g.partition.system.insert(a);
        for (const std::string &a : j.at("environment").get<std::vector<std::string>>()) g.partition.environment.insert(a);
        g.fragment = fragment_of(j.at("fragment").get<std::string>());
        g.complement = j.value("complement", false);
        for (const json &v : j.at("labels")) {
            VertexData d;
            d.kind = kind_of(v.at("kind").get<std::string>());
            d.label.master = formula_of(v.at("master"));
            for (const json &m : v.at("monitors")) {
                Monitor mon;
                std::string kind = m.at("kind").get<std::string>();
                if (kind != "recurring" && kind != "obligation") throw TranslationError("unknown monitor kind '" + kind + "'");
                mon.kind = kind == "recurring" ? MonitorKind::Recurring : MonitorKind::FiniteObligation;
                mon.goal = formula_of(m.at("goal"));
                for (const json &t : m.at("tokens")) mon.tokens.push_back(formula_of(t));
                d.label.monitors.push_back(std::move(mon));
            }
            if (v.contains("env")) d.env = valuation_of(v.at("env"));
            g.vertices.push_back(std::move(d));
        }
        for (const json &e : j.at("edge_labels")) {
            EdgeData d;
            d.valuation = valuation_of(e.at("valuation"));
            if (e.contains("steps")) {
                for (const json &s : e.at("steps")) {
                    d.steps.push_back(MonitorStep{s.at("pending").get<int>(), s.at("discharged").get<int>(),
                                                  s.at("completed").get<bool>(), s.at("failed").get<bool>()});
                }
            }
            d.discharge_position = e.value("discharge", -1);
            g.edges.push_back(std::move(d));
        }
    } catch (const json::exception &e) {
        throw TranslationError(std::string("malformed labelled game: ") + e.what());
    } catch (const ltl::ParseError &e) {
        throw TranslationError(std::string("malformed label formula: ") + e.what());
    }
    check_alternation(g);
    return g;
}

}  // namespace pgg::translation
