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
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "pgg/game/io.hpp"

namespace pgg::game {

std::string
export_pgsolver(const ParityGame &g, std::vector<std::string> *warnings, const std::vector<std::string> *names)
{
    std::ostringstream out;
    out << "parity " << std::max(0, g.num_vertices() - 1) << ";\n";
    out << "start " << g.initial() << ";\n";
    for (int v = 0; v < g.num_vertices(); v++) {
        int prio = 0;
        bool mixed = false;
        const auto &outs = g.out_edges(v);
        for (std::size_t i = 0; i < outs.size(); i++) {
            int p = g.edge(outs[i]).priority;
            if (i && p != prio) mixed = true;
            prio = i ? std::max(prio, p) : p;
        }
        if (mixed && warnings) {
            warnings->push_back("vertex " + std::to_string(v) +
                                " has outgoing edges with different priorities; exported the largest");
        }
        out << v << ' ' << prio << ' ' << (g.owner(v) == Player::System ? 0 : 1) << ' ';
        for (std::size_t i = 0; i < outs.size(); i++) {
            if (i) out << ',';
            out << g.edge(outs[i]).dst;
        }
        if (names && v < static_cast<int>(names->size()) && !(*names)[v].empty()) {
            std::string n = (*names)[v];
            std::replace(n.begin(), n.end(), '"', '\'');
            out << " \"" << n << '"';
        }
        out << ";\n";
    }
    return out.str();
}

namespace {

struct Statement {
    std::string text;
    int line;
};

// Split on ';' outside of quoted names.
std::vector<Statement>
statements(std::string_view text)
{
    std::vector<Statement> out;
    std::string cur;
    int line = 1, start_line = 1;
    bool quoted = false, blank = true;
    for (char c : text) {
        if (c == '\n') line++;
        if (c == '"') quoted = !quoted;
        if (c == ';' && !quoted) {
            if (!blank) out.push_back({cur, start_line});
            cur.clear();
            blank = true;
            continue;
        }
        if (blank && !std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            start_line = line;
        }
        cur += c;
    }
    if (!blank) throw GameError("pgsolver: line " + std::to_string(start_line) + ": statement not terminated by ';'");
    return out;
}

long
parse_int(const std::string &tok, int line, const char *what)
{
    std::size_t pos = 0;
    long v = -1;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos != tok.size() || tok.empty() || v < 0) {
        throw GameError("pgsolver: line " + std::to_string(line) + ": malformed " + what + " '" + tok + "'");
    }
    return v;
}

}  // namespace

ParityGame
import_pgsolver(std::string_view text)
{
    std::vector<Statement> st = statements(text);
    if (st.empty()) throw GameError("pgsolver: malformed header: empty input");
    std::istringstream head(st[0].text);
    std::string kw, num, extra;
    head >> kw >> num;
    if (kw != "parity" || num.empty() || (head >> extra)) {
        throw GameError("pgsolver: malformed header at line " + std::to_string(st[0].line) + ", expected 'parity <N>;'");
    }
    const long bound = parse_int(num, st[0].line, "header bound");
    std::optional<long> start;
    struct Row {
        long prio;
        int owner;
        std::vector<long> succ;
        int line;
    };
    std::map<long, Row> rows;
    for (std::size_t i = 1; i < st.size(); i++) {
        const int line = st[i].line;
        std::string s = st[i].text;
        auto q = s.find('"');
        if (q != std::string::npos) {
            if (s.find('"', q + 1) == std::string::npos) throw GameError("pgsolver: line " + std::to_string(line) + ": unterminated name");
            s = s.substr(0, q);
        }
        std::istringstream in(s);
        std::string a, b, c, d, rest;
        in >> a;
        if (a == "start") {
            in >> b;
            if (b.empty() || (in >> rest)) throw GameError("pgsolver: line " + std::to_string(line) + ": malformed start line");
            start = parse_int(b, line, "start vertex");
            continue;
        }
        in >> b >> c >> d;
        if (d.empty() || (in >> rest)) throw GameError("pgsolver: line " + std::to_string(line) + ": malformed vertex line");
        long id = parse_int(a, line, "vertex id");
        if (id > bound) throw GameError("pgsolver: line " + std::to_string(line) + ": vertex id exceeds header bound");
        Row row{parse_int(b, line, "priority"), static_cast<int>(parse_int(c, line, "owner")), {}, line};
        if (row.owner > 1) throw GameError("pgsolver: line " + std::to_string(line) + ": owner must be 0 or 1");
        std::stringstream succs(d);
        std::string tok;
        while (std::getline(succs, tok, ',')) row.succ.push_back(parse_int(tok, line, "successor"));
        if (row.succ.empty()) throw GameError("pgsolver: line " + std::to_string(line) + ": vertex without successors");
        if (!rows.emplace(id, row).second) throw GameError("pgsolver: line " + std::to_string(line) + ": duplicate vertex id");
    }
    if (rows.empty()) throw GameError("pgsolver: no vertices");
    // ids must be 0..n-1
    long expect = 0;
    for (const auto &[id, row] : rows) {
        if (id != expect++) throw GameError("pgsolver: line " + std::to_string(row.line) + ": vertex ids are not contiguous from 0");
    }
    ParityGame g;
    for (const auto &[id, row] : rows) g.add_vertex(row.owner == 0 ? Player::System : Player::Environment);
    for (const auto &[id, row] : rows) {
        for (long t : row.succ) {
            if (t >= static_cast<long>(rows.size())) {
                throw GameError("pgsolver: line " + std::to_string(row.line) + ": dangling successor " + std::to_string(t));
            }
            g.add_edge(static_cast<int>(id), static_cast<int>(t), static_cast<int>(row.prio));
        }
    }
    if (start) {
        if (*start >= static_cast<long>(rows.size())) throw GameError("pgsolver: start vertex does not exist");
        g.set_initial(static_cast<int>(*start));
    }
    return g;
}

}  // namespace pgg::game
