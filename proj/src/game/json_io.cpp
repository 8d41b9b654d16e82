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

namespace pgg::game {

using nlohmann::json;

json
game_to_json(const ParityGame &g)
{
    json j;
    j["format"] = "pgg-game";
    j["version"] = 1;
    j["initial"] = g.initial();
    j["max_priority"] = g.priority_bound();
    json vs = json::array();
    for (int v = 0; v < g.num_vertices(); v++) {
        vs.push_back({{"id", v}, {"owner", player_name(g.owner(v))}});
    }
    j["vertices"] = std::move(vs);
    json es = json::array();
    for (const Edge &e : g.edges()) es.push_back({{"src", e.src}, {"dst", e.dst}, {"priority", e.priority}});
    j["edges"] = std::move(es);
    return j;
}

ParityGame
game_from_json(const json &j)
{
    try {
        if (j.value("format", "") != "pgg-game") throw GameError("not a pgg-game document");
        ParityGame g;
        const json &vs = j.at("vertices");
        for (std::size_t i = 0; i < vs.size(); i++) {
            if (vs[i].at("id").get<int>() != static_cast<int>(i)) throw GameError("vertex ids must be 0..n-1 in order");
            std::string owner = vs[i].at("owner").get<std::string>();
            if (owner != "system" && owner != "environment") throw GameError("unknown owner '" + owner + "'");
            g.add_vertex(owner == "system" ? Player::System : Player::Environment);
        }
        for (const json &e : j.at("edges")) {
            g.add_edge(e.at("src").get<int>(), e.at("dst").get<int>(), e.at("priority").get<int>());
        }
        g.set_initial(j.at("initial").get<int>());
        if (j.contains("max_priority")) g.set_priority_bound(j.at("max_priority").get<int>());
        return g;
    } catch (const json::exception &e) {
        throw GameError(std::string("malformed game JSON: ") + e.what());
    }
}

}  // namespace pgg::game
