#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "pgg/ltl/parser.hpp"
#include "pgg/translation/translation.hpp"
#include "support/fragment_gen.hpp"
#include "support/ltl_oracle.hpp"

using namespace pgg::translation;
using pgg::game::Player;
using pgg::game::zielonka_solve;
using pgg::ltl::Formula;
using pgg::ltl::parse;
using pgg::ltl::Partition;
using pgg::ltl::Valuation;

namespace {

Partition
sys(std::set<std::string> s, std::set<std::string> e = {})
{
    return Partition{std::move(s), std::move(e)};
}

Player
initial_winner(const LabeledGame &g)
{
    return zielonka_solve(g.game).winner[g.game.initial()];
}

int
edge_for(const LabeledGame &g, int v, const Valuation &val)
{
    for (int e : g.game.out_edges(v)) {
        if (g.edge_data(e).valuation == val) return e;
    }
    return -1;
}

// Winner of the play the word induces: the environment part of each letter
// is played first, then the system part.
Player
word_play_winner(const LabeledGame &g, const oracle::Lasso &w)
{
    std::map<std::pair<std::size_t, int>, std::size_t> seen;
    std::vector<int> edges;
    int v = g.game.initial();
    std::size_t pos = 0;
    for (;;) {
        auto key = std::make_pair(pos, v);
        auto it = seen.find(key);
        if (it != seen.end() && !g.is_sink(v)) {
            std::vector<int> loop(edges.begin() + static_cast<long>(it->second), edges.end());
            return pgg::game::loop_winner(loop, g.game);
        }
        if (g.is_sink(v)) return g.vertex(v).kind == VertexKind::TTSink ? Player::System : Player::Environment;
        seen.emplace(key, edges.size());
        std::vector<std::string> env, sy;
        for (const std::string &a : w.letters[pos]) (g.partition.is_system(a) ? sy : env).push_back(a);
        int e1 = edge_for(g, v, Valuation(env));
        REQUIRE(e1 >= 0);
        edges.push_back(e1);
        int mid = g.game.edge(e1).dst;
        int e2 = edge_for(g, mid, Valuation(sy));
        REQUIRE(e2 >= 0);
        edges.push_back(e2);
        v = g.game.edge(e2).dst;
        pos = pos + 1 < w.letters.size() ? pos + 1 : w.loop_start;
    }
}

oracle::Lasso
random_word(std::mt19937_64 &rng, const std::vector<std::string> &props)
{
    return oracle::random_lasso(rng, props, 5);
}

}  // namespace

TEST_CASE("classify fragment")
{
    CHECK(classify_fragment(parse("G a")) == Fragment::Safety);
    CHECK(classify_fragment(parse("a U b")) == Fragment::CoSafety);
    CHECK(classify_fragment(parse("F c & G F c & G (r -> F g)")) == Fragment::GConjunction);
    CHECK(classify_fragment(parse("a")) == Fragment::Safety);
    CHECK(classify_fragment(parse("F G a")) == Fragment::Unsupported);
    CHECK(classify_fragment(parse("G F a | G F b")) == Fragment::Unsupported);
    CHECK(classify_fragment(parse("G (a W b) & F c")) == Fragment::Unsupported);
    CHECK(classify_fragment(parse("G a & F b")) == Fragment::GConjunction);
    CHECK(classify_fragment(parse("G (a -> X b) & X c")) == Fragment::Safety);
}

TEST_CASE("label normalization absorbs")
{
    CHECK(normalize_label(parse("F c & G F c")) == parse("G F c"));
    CHECK(normalize_label(parse("c | F c")) == parse("F c"));
    CHECK(normalize_label(parse("X (a & G a)")) == parse("X G a"));
    CHECK(normalize_label(parse("a & G b")) == parse("a & G b"));
}

TEST_CASE("safety game G a")
{
    LabeledGame g = build_game(parse("G a"), sys({"a"}));
    check_alternation(g);
    CHECK(g.num_vertices() == 3);
    CHECK(g.fragment == Fragment::Safety);
    const int s = g.system_choices().at(0);
    int good = edge_for(g, s, Valuation{"a"});
    int bad = edge_for(g, s, Valuation{});
    CHECK(g.game.edge(good).priority == 1);
    CHECK(g.game.edge(good).dst == g.game.initial());
    CHECK(g.vertex(g.game.edge(bad).dst).kind == VertexKind::FFSink);
    CHECK(initial_winner(g) == Player::System);
    const int ff = g.find_sink(VertexKind::FFSink);
    CHECK(g.game.out_edges(ff).size() == 1);
    CHECK(g.game.edge(g.game.out_edges(ff)[0]).priority == 0);
}

TEST_CASE("recurring goal G F c")
{
    LabeledGame g = build_game(parse("G F c"), sys({"c"}));
    check_alternation(g);
    CHECK(g.fragment == Fragment::GConjunction);
    REQUIRE(g.vertex(0).label.monitors.size() == 1);
    CHECK(g.vertex(0).label.monitors[0].kind == MonitorKind::Recurring);
    CHECK(g.vertex(0).label.master == parse("G F c"));
    const int s = g.system_choices().at(0);
    CHECK(g.game.edge(edge_for(g, s, Valuation{"c"})).priority == 1);
    CHECK(g.game.edge(edge_for(g, s, Valuation{})).priority == 2);
    CHECK(g.edge_data(edge_for(g, s, Valuation{"c"})).discharge_position == 0);
    CHECK(initial_winner(g) == Player::System);

    LabeledGame env = build_game(parse("G F c"), sys({}, {"c"}));
    CHECK(initial_winner(env) == Player::Environment);
}

TEST_CASE("cosafety with environment-only atom")
{
    LabeledGame g = build_game(parse("F c"), sys({}, {"c"}));
    check_alternation(g);
    CHECK(initial_winner(g) == Player::Environment);
    LabeledGame s = build_game(parse("F c"), sys({"c"}));
    CHECK(initial_winner(s) == Player::System);
    CHECK(s.find_sink(VertexKind::TTSink) >= 0);
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(build_game(parse("F G a"), sys({"a"})), TranslationError);
    CHECK_THROWS_AS(build_game(parse("G a"), sys({})), TranslationError);
    CHECK_THROWS_AS(build_game(parse("G a"), sys({"a"}, {"a"})), TranslationError);
    CHECK_THROWS_AS(complement_game(parse("G F a"), sys({"a"})), TranslationError);
    BuildOptions tiny;
    tiny.max_vertices = 2;
    CHECK_THROWS_AS(build_game(parse("G a"), sys({"a"}), tiny), TranslationError);
    try {
        build_game(parse("F G a"), sys({"a"}));
    } catch (const TranslationError &e) {
        CHECK(std::string(e.what()).find("F G a") != std::string::npos);
    }
}

TEST_CASE("complement examples")
{
    CHECK(complement_formula(parse("F c"), sys({}, {"c"})) == parse("G !c"));
    CHECK(complement_formula(parse("G a"), sys({"a"})) == parse("F X !a"));

    for (const char *text : {"G a", "a", "F a"}) {
        LabeledGame g = build_game(parse(text), sys({"a"}));
        LabeledGame c = complement_game(parse(text), sys({"a"}));
        CHECK(c.complement);
        CHECK(c.partition.environment == std::set<std::string>{"a"});
        check_alternation(c);
        CHECK(initial_winner(g) != initial_winner(c));
    }
}

TEST_CASE("the one-step delay is what makes complements dual")
{
    // the system copies the environment; without the delay the original
    // system would have to commit first in the complement game
    Formula f = parse("G (a <-> e)");
    Partition p = sys({"a"}, {"e"});
    CHECK(initial_winner(build_game(f, p)) == Player::System);
    CHECK(initial_winner(complement_game(f, p)) == Player::Environment);
    LabeledGame naive = build_game(pgg::ltl::nnf_negate(f), p.swapped());
    CHECK(initial_winner(naive) == Player::System);
}

TEST_CASE("property: alternation, determinism and json round trip")
{
    pgg::Rng rng(7);
    const std::vector<std::string> props{"a", "b", "e"};
    const Partition p = sys({"a", "b"}, {"e"});
    int built = 0;
    for (int i = 0; i < 150; i++) {
        Formula f;
        switch (i % 3) {
        case 0: f = oracle::random_fragment_part(rng, props, 3, false); break;
        case 1: f = oracle::random_fragment_part(rng, props, 3, true); break;
        default: f = oracle::random_gconjunction(rng, props, 2, 1 + i % 2); break;
        }
        LabeledGame g;
        try {
            g = build_game(f, p);
        } catch (const TranslationError &e) {
            MESSAGE("skipped " << f.to_string() << ": " << e.what());
            continue;
        }
        built++;
        check_alternation(g);
        LabeledGame again = build_game(f, p);
        REQUIRE(labeled_game_to_json(again).dump() == labeled_game_to_json(g).dump());
        LabeledGame back = labeled_game_from_json(labeled_game_to_json(g));
        REQUIRE(back.game == g.game);
        for (int v = 0; v < g.num_vertices(); v++) REQUIRE(back.vertex(v).label == g.vertex(v).label);
        REQUIRE(labeled_game_to_json(back).dump() == labeled_game_to_json(g).dump());
        for (const auto &e : g.game.edges()) REQUIRE(e.priority <= g.game.priority_bound());
    }
    CHECK(built >= 140);
}

TEST_CASE("property: plays agree with the formula on lasso words")
{
    pgg::Rng rng(11);
    std::mt19937_64 words(5);
    const std::vector<std::string> props{"a", "b", "e"};
    const Partition p = sys({"a", "b"}, {"e"});
    for (int i = 0; i < 120; i++) {
        Formula f = i % 2 ? oracle::random_fragment_part(rng, props, 3, i % 4 == 1)
                          : oracle::random_gconjunction(rng, props, 2, 1);
        LabeledGame g;
        try {
            g = build_game(f, p);
        } catch (const TranslationError &) {
            continue;
        }
        for (int k = 0; k < 30; k++) {
            oracle::Lasso w = random_word(words, props);
            bool sat = oracle::holds(f, w);
            REQUIRE_MESSAGE((word_play_winner(g, w) == Player::System) == sat, f.to_string());
        }
    }
}

TEST_CASE("property: duality of build and complement")
{
    pgg::Rng rng(23);
    const std::vector<std::string> props{"a", "b", "e", "d"};
    const Partition p = sys({"a", "b"}, {"e", "d"});
    int checked = 0;
    for (int i = 0; checked < 50 && i < 500; i++) {
        Formula f = oracle::random_fragment_part(rng, props, 3, i % 2 == 0);
        LabeledGame g, c;
        try {
            g = build_game(f, p);
            c = complement_game(f, p);
        } catch (const TranslationError &) {
            continue;
        }
        checked++;
        REQUIRE_MESSAGE(initial_winner(g) != initial_winner(c), f.to_string());
    }
    CHECK(checked == 50);
}

namespace {

// System wins a loop iff it avoids the ff sink, no finite obligation is
// pending on it and every recurring monitor completes somewhere on it.
bool
loop_should_win(const LabeledGame &g, const std::vector<int> &loop)
{
    std::set<std::string> done;
    std::set<std::string> recurring;
    for (int e : loop) {
        const int src = g.game.edge(e).src;
        const VertexData &d = g.vertex(src);
        if (d.kind == VertexKind::FFSink) return false;
        if (d.kind == VertexKind::TTSink) return true;
        for (std::size_t i = 0; i < d.label.monitors.size(); i++) {
            const Monitor &m = d.label.monitors[i];
            if (m.kind == MonitorKind::FiniteObligation) return false;
            recurring.insert(m.goal.to_string());
            const auto &steps = g.edge_data(e).steps;
            if (!steps.empty() && steps[i].completed) done.insert(m.goal.to_string());
        }
    }
    return done == recurring;
}

}  // namespace

TEST_CASE("property: monitor liveness on lassos")
{
    pgg::Rng rng(31);
    const std::vector<std::string> props{"a", "b", "e"};
    const Partition p = sys({"a", "b"}, {"e"});
    int games = 0;
    for (int i = 0; i < 200 && games < 40; i++) {
        Formula f = oracle::random_gconjunction(rng, props, 2, 1 + i % 3);
        LabeledGame g;
        try {
            g = build_game(f, p);
        } catch (const TranslationError &) {
            continue;
        }
        if (g.num_vertices() > 30) continue;
        games++;
        // random closed walks
        pgg::Rng walk(static_cast<std::uint64_t>(i));
        for (int k = 0; k < 400; k++) {
            int start = static_cast<int>(walk.below(static_cast<std::uint64_t>(g.num_vertices())));
            std::vector<int> path;
            int v = start;
            for (int step = 0; step < 40; step++) {
                int e = walk.pick(g.game.out_edges(v));
                path.push_back(e);
                v = g.game.edge(e).dst;
                if (v == start) {
                    REQUIRE_MESSAGE((pgg::game::loop_winner(path, g.game) == Player::System) == loop_should_win(g, path),
                                    f.to_string());
                }
            }
        }
    }
    CHECK(games >= 20);
}
