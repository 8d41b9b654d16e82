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

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "pgg/eval/eval.hpp"
#include "pgg/util/hash.hpp"

namespace pgg::eval {

using game::Player;
using translation::LabeledGame;

namespace {

// Runs work(i) for i in [0, n) on up to `jobs` threads.
template <typename F>
void
parallel_for(std::size_t n, int jobs, F work)
{
    const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; i++) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; t++) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) work(i);
        });
    }
    for (auto &t : pool) t.join();
}

std::string
fmt(double x)
{
    if (std::isnan(x)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

nlohmann::json
number_or_null(double x)
{
    return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x);
}

}  // namespace

std::vector<PreparedGame>
prepare_games(const std::vector<CorpusEntry> &entries, const gt::GtParams &params, int jobs,
              std::vector<std::string> *warnings)
{
    params.validate();
    std::vector<std::optional<PreparedGame>> slots(entries.size());
    std::vector<std::string> errors(entries.size());
    parallel_for(entries.size(), jobs, [&](std::size_t i) {
        try {
            PreparedGame p;
            p.entry = entries[i];
            p.game = translation::build_game(entries[i].parsed(), entries[i].partition());
            p.truth = gt::compute_ground_truth(p.game, params);
            slots[i] = std::move(p);
        } catch (const std::exception &e) {
            errors[i] = entries[i].formula + ": " + e.what();
        }
    });
    std::vector<PreparedGame> out;
    for (std::size_t i = 0; i < slots.size(); i++) {
        if (slots[i]) {
            out.push_back(std::move(*slots[i]));
        } else if (warnings) {
            warnings->push_back("skipped " + errors[i]);
        }
    }
    return out;
}

std::vector<ranker::GameRecord>
records(const std::vector<PreparedGame> &games)
{
    std::vector<ranker::GameRecord> out;
    for (const auto &p : games) out.push_back({p.entry.id(), &p.game, &p.truth});
    return out;
}

GameRow
evaluate_game(const std::string &id, const LabeledGame &g, const ranker::RankerBank *bank, std::uint64_t seed)
{
    GameRow row;
    row.id = id;
    row.formula = g.formula.to_string();
    row.vertices = g.num_vertices();
    const auto reach = game::reachable(g.game, g.game.initial());
    for (int v : g.system_choices()) row.reachable_system += reach[v];
    row.winner = game::zielonka_solve(g.game).winner[g.game.initial()];

    const ranker::RankerBank empty;
    const game::Strategy strategies[num_methods] = {
        ranker::recommend_strategy(g, bank ? *bank : empty),
        baseline_trueness(g),
        baseline_random(g, derive_seed(seed, fnv1a(id))),
    };
    for (int m = 0; m < num_methods; m++) {
        if (row.winner == Player::System) {
            row.solved[m] = immediately_solved(g, strategies[m]);
            row.distance[m] = relative_distance(g, strategies[m]);
        } else {
            row.solved[m] = false;
            row.distance[m] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return row;
}

EvalReport
evaluate(const std::vector<CorpusEntry> &entries, const ranker::RankerBank *bank, std::uint64_t seed, int jobs,
         std::vector<std::string> *warnings)
{
    EvalReport report;
    report.has_model = bank != nullptr;
    if (bank) report.bank_hash = content_hash(bank->to_json().dump());
    std::vector<std::optional<GameRow>> slots(entries.size());
    std::vector<std::string> errors(entries.size());
    parallel_for(entries.size(), jobs, [&](std::size_t i) {
        try {
            const LabeledGame g = translation::build_game(entries[i].parsed(), entries[i].partition());
            slots[i] = evaluate_game(entries[i].id(), g, bank, seed);
        } catch (const std::exception &e) {
            errors[i] = entries[i].formula + ": " + e.what();
        }
    });
    for (std::size_t i = 0; i < slots.size(); i++) {
        if (slots[i]) {
            report.rows.push_back(std::move(*slots[i]));
        } else if (warnings) {
            warnings->push_back("skipped " + errors[i]);
        }
    }
    return report;
}

double
EvalReport::solved_fraction(int method) const
{
    int wins = 0, solved = 0;
    for (const auto &r : rows) {
        if (r.winner != Player::System) continue;
        wins++;
        solved += r.solved[method];
    }
    return wins ? static_cast<double>(solved) / wins : std::numeric_limits<double>::quiet_NaN();
}

double
EvalReport::distance_geomean(int method) const
{
    double logs = 0.0;
    int n = 0;
    for (const auto &r : rows) {
        if (r.winner != Player::System) continue;
        bool any = false;
        for (bool s : r.solved) any = any || s;
        if (any || !(r.distance[method] > 0)) continue;
        logs += std::log(r.distance[method]);
        n++;
    }
    return n ? std::exp(logs / n) : std::numeric_limits<double>::quiet_NaN();
}

int
EvalReport::unsolved_by_all() const
{
    int n = 0;
    for (const auto &r : rows) {
        if (r.winner != Player::System) continue;
        bool any = false;
        for (bool s : r.solved) any = any || s;
        n += !any;
    }
    return n;
}

std::string
EvalReport::to_csv() const
{
    std::ostringstream out;
    out << "id,formula,vertices,reachable_system,winner";
    for (const char *m : method_names) out << ',' << m << "_solved," << m << "_distance";
    out << '\n';
    for (const auto &r : rows) {
        std::string formula = r.formula;
        for (std::size_t p = 0; (p = formula.find('"', p)) != std::string::npos; p += 2) formula.insert(p, "\"");
        out << r.id << ",\"" << formula << "\"," << r.vertices << ',' << r.reachable_system << ','
            << game::player_name(r.winner);
        for (int m = 0; m < num_methods; m++) out << ',' << (r.solved[m] ? 1 : 0) << ',' << fmt(r.distance[m]);
        out << '\n';
    }
    return out.str();
}

nlohmann::json
EvalReport::summary() const
{
    nlohmann::json methods = nlohmann::json::object();
    for (int m = 0; m < num_methods; m++) {
        methods[method_names[m]] = {{"solved_fraction", number_or_null(solved_fraction(m))},
                                    {"distance_geomean", number_or_null(distance_geomean(m))}};
    }
    int wins = 0;
    for (const auto &r : rows) wins += r.winner == Player::System;
    nlohmann::json j{{"games", rows.size()},
                     {"realizable", wins},
                     {"unsolved_by_all", unsolved_by_all()},
                     {"has_model", has_model},
                     {"methods", methods}};
    if (!bank_hash.empty()) j["bank_hash"] = bank_hash;
    if (!has_model) j["notice"] = "no ranker bank given; the model column uses the trueness fallback ranking";
    return j;
}

}  // namespace pgg::eval
