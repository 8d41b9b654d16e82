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
#include <chrono>
#include <cmath>
#include <sstream>

#include "pgg/eval/eval.hpp"
#include "pgg/ltl/parser.hpp"
#include "pgg/util/hash.hpp"

namespace pgg::eval {

using ltl::Formula;

const char *
provenance_name(Provenance p)
{
    switch (p) {
    case Provenance::Original: return "original";
    case Provenance::Mutated: return "mutated";
    case Provenance::Generated: return "generated";
    }
    return "?";
}

const char *
split_name(Split s)
{
    switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
    }
    return "?";
}

const char *
family_name(Family f)
{
    switch (f) {
    case Family::Safety: return "safety";
    case Family::CoSafety: return "cosafety";
    case Family::Near: return "near";
    case Family::Parity: return "parity";
    }
    return "?";
}

Provenance
parse_provenance(const std::string &s)
{
    for (Provenance p : {Provenance::Original, Provenance::Mutated, Provenance::Generated}) {
        if (s == provenance_name(p)) return p;
    }
    throw EvalError("unknown provenance '" + s + "'");
}

Split
parse_split(const std::string &s)
{
    for (Split p : {Split::Train, Split::Validation, Split::Test}) {
        if (s == split_name(p)) return p;
    }
    throw EvalError("unknown split '" + s + "'");
}

Family
parse_family(const std::string &s)
{
    for (Family f : {Family::Safety, Family::CoSafety, Family::Near, Family::Parity}) {
        if (s == family_name(f)) return f;
    }
    throw EvalError("unknown corpus family '" + s + "'");
}

Formula
CorpusEntry::parsed() const
{
    return ltl::parse(formula);
}

ltl::Partition
CorpusEntry::partition() const
{
    ltl::Partition p;
    p.system = system;
    for (const auto &a : ltl::atoms_of(parsed())) {
        if (!system.count(a)) p.environment.insert(a);
    }
    return p;
}

std::string
CorpusEntry::id() const
{
    std::string key = formula + "\t";
    for (const auto &a : system) key += a + ",";
    return content_hash(key);
}

std::vector<CorpusEntry>
Corpus::split(Split s) const
{
    std::vector<CorpusEntry> out;
    for (const auto &e : entries) {
        if (e.split == s) out.push_back(e);
    }
    return out;
}

void
assign_splits(Corpus &c, std::uint64_t seed)
{
    const std::size_t n = c.entries.size();
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    for (std::size_t i = 0; i < n; i++) order.emplace_back(derive_seed(seed, fnv1a(c.entries[i].id())), i);
    std::sort(order.begin(), order.end());
    const auto train = static_cast<std::size_t>(std::llround(0.6 * n));
    const auto val = static_cast<std::size_t>(std::llround(0.2 * n));
    for (std::size_t k = 0; k < n; k++) {
        c.entries[order[k].second].split = k < train ? Split::Train : k < train + val ? Split::Validation : Split::Test;
    }
}

std::string
corpus_to_tsv(const Corpus &c)
{
    std::ostringstream out;
    for (const auto &e : c.entries) {
        std::string sys;
        for (const auto &a : e.system) sys += (sys.empty() ? "" : ",") + a;
        out << e.formula << '\t' << sys << '\t' << provenance_name(e.provenance) << '\t' << split_name(e.split) << '\n';
    }
    return out.str();
}

Corpus
corpus_from_tsv(const std::string &text, std::uint64_t split_seed)
{
    Corpus c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool missing_split = false;
    while (std::getline(in, line)) {
        lineno++;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (;;) {
            auto tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() < 3 || cols.size() > 4) throw EvalError("corpus line " + std::to_string(lineno) + ": expected 3 or 4 tab-separated columns");
        CorpusEntry e;
        e.formula = cols[0];
        try {
            ltl::parse(e.formula);
        } catch (const ltl::ParseError &err) {
            throw EvalError("corpus line " + std::to_string(lineno) + ": " + err.what());
        }
        std::stringstream sys(cols[1]);
        for (std::string a; std::getline(sys, a, ',');) {
            if (!a.empty()) e.system.insert(a);
        }
        e.provenance = parse_provenance(cols[2]);
        if (cols.size() == 4) {
            e.split = parse_split(cols[3]);
        } else {
            missing_split = true;
        }
        c.entries.push_back(std::move(e));
    }
    if (missing_split) assign_splits(c, split_seed);
    return c;
}

namespace {

Formula
literal(Rng &rng, const std::vector<std::string> &props)
{
    const std::string &a = rng.pick(props);
    return rng.chance(0.5) ? ltl::atom(a) : ltl::neg_atom(a);
}

// and/or/X over literals plus the family's temporal operators
Formula
part(Rng &rng, const std::vector<std::string> &props, int depth, bool cosafety, bool temporal = true)
{
    if (depth == 0 || rng.chance(0.3)) return literal(rng, props);
    auto sub = [&] { return part(rng, props, depth - 1, cosafety, temporal); };
    const int choices = temporal ? 6 : 3;
    switch (rng.below(choices)) {
    case 0: return ltl::conj(sub(), sub());
    case 1: return ltl::disj(sub(), sub());
    case 2: return ltl::next(sub());
    case 3: return cosafety ? ltl::finally(sub()) : ltl::globally(sub());
    case 4: return cosafety ? ltl::until(sub(), sub()) : ltl::weak_until(sub(), sub());
    default: return cosafety ? ltl::strong_release(sub(), sub()) : ltl::release(sub(), sub());
    }
}

bool
has_eventuality(const Formula &f)
{
    using ltl::Op;
    if (f.op() == Op::Finally || f.op() == Op::Until || f.op() == Op::StrongRelease) return true;
    for (const Formula &c : f.children()) {
        if (has_eventuality(c)) return true;
    }
    return false;
}

// G(env -> F sys)-style response goals keep the parity family realizable
// often enough to be useful.
Formula
response(Rng &rng, const CorpusParams &p, int depth)
{
    Formula trigger = part(rng, p.environment_props, depth - 1, true, false);
    Formula goal = part(rng, p.system_props, depth, true);
    if (!has_eventuality(goal)) goal = ltl::finally(goal);
    return ltl::globally(ltl::disj(ltl::nnf_negate(trigger), goal));
}

}  // namespace

Formula
random_family_formula(Family fam, Rng &rng, const CorpusParams &p)
{
    std::vector<std::string> all = p.system_props;
    all.insert(all.end(), p.environment_props.begin(), p.environment_props.end());
    const int goals = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, p.max_goals))));
    std::vector<Formula> parts;
    switch (fam) {
    case Family::Safety:
        for (int i = 0; i < goals; i++) parts.push_back(ltl::globally(part(rng, all, p.depth, false)));
        break;
    case Family::CoSafety:
        for (int i = 0; i < goals; i++) parts.push_back(part(rng, all, p.depth + 1, true));
        break;
    case Family::Near:
        for (int i = 0; i < goals; i++) parts.push_back(part(rng, all, p.depth, true));
        parts.push_back(ltl::globally(part(rng, all, p.depth, false, false)));
        break;
    case Family::Parity:
        if (rng.chance(0.3)) parts.push_back(ltl::globally(part(rng, all, 1, false, false)));
        for (int i = 0; i < goals; i++) {
            if (rng.chance(0.5)) {
                parts.push_back(response(rng, p, p.depth));
            } else {
                Formula body = part(rng, all, p.depth, true);
                if (!has_eventuality(body)) body = ltl::finally(body);
                parts.push_back(ltl::globally(body));
            }
        }
        break;
    }
    if (parts.empty()) throw EvalError("unknown corpus family");
    return ltl::simplify(ltl::conj(parts));
}

namespace {

bool
family_matches(Family fam, const Formula &f)
{
    using translation::Fragment;
    const Fragment k = translation::classify_fragment(f);
    switch (fam) {
    case Family::Safety: return k == Fragment::Safety;
    case Family::CoSafety: return k == Fragment::CoSafety;
    case Family::Near:
    case Family::Parity: {
        if (k != Fragment::GConjunction) return false;
        bool recurring = false;
        for (const Formula &c : translation::conjuncts(f)) {
            if (c.op() == ltl::Op::Globally && has_eventuality(c.child(0))) recurring = true;
        }
        return recurring == (fam == Family::Parity);
    }
    }
    return false;
}

// Empty string if accepted, else the reason.
std::string
admit(const Formula &f, const CorpusParams &p, CorpusEntry &e)
{
    const auto atoms = ltl::atoms_of(f);
    e.formula = f.to_string();
    e.system.clear();
    for (const auto &a : p.system_props) {
        if (atoms.count(a)) e.system.insert(a);
    }
    if (e.system.empty()) return "no System proposition";
    if (ltl::parse(e.formula) != f) return "text does not round-trip";
    translation::BuildOptions opts;
    opts.max_vertices = p.max_vertices;
    const auto start = std::chrono::steady_clock::now();
    translation::LabeledGame g;
    try {
        g = translation::build_game(f, e.partition(), opts);
    } catch (const translation::TranslationError &err) {
        return err.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > p.translate_budget_seconds) return "translation exceeded the time budget";
    const auto reach = game::reachable(g.game, g.game.initial());
    int decisions = 0;
    for (int v : g.system_choices()) decisions += reach[v] && g.game.out_edges(v).size() > 1;
    if (decisions < p.min_decisions) return "too few System decisions";
    if (p.realizable_only && game::zielonka_solve(g.game).winner[g.game.initial()] != game::Player::System) {
        return "unrealizable";
    }
    return "";
}

}  // namespace

Corpus
generate_corpus(const CorpusParams &p)
{
    if (p.per_family < 0) throw EvalError("per-family count must be non-negative");
    if (p.system_props.empty()) throw EvalError("corpus needs at least one System proposition");
    Corpus c;
    std::set<std::string> seen;
    for (std::size_t fi = 0; fi < p.families.size(); fi++) {
        const Family fam = p.families[fi];
        int accepted = 0;
        for (std::uint64_t attempt = 0; accepted < p.per_family && attempt < 400ULL * (p.per_family + 1); attempt++) {
            const std::uint64_t seed = derive_seed(p.seed, fi * 1000003ULL + static_cast<std::uint64_t>(fam), attempt);
            Rng rng(seed);
            const Formula f = random_family_formula(fam, rng, p);
            if (!family_matches(fam, f)) continue;
            CorpusEntry e;
            e.seed = seed;
            e.provenance = Provenance::Generated;
            if (!admit(f, p, e).empty() || !seen.insert(e.id()).second) continue;
            c.entries.push_back(e);
            accepted++;
            if (p.mutate_fraction > 0 && rng.chance(p.mutate_fraction)) {
                try {
                    const Formula m = mutate_formula(f, rng.next());
                    CorpusEntry me;
                    me.seed = seed;
                    me.provenance = Provenance::Mutated;
                    if (admit(m, p, me).empty() && seen.insert(me.id()).second) c.entries.push_back(me);
                } catch (const EvalError &) {
                }
            }
        }
    }
    assign_splits(c, p.seed);
    return c;
}

}  // namespace pgg::eval
