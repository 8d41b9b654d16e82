#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "pgg/game/io.hpp"
#include "pgg/game/parity_game.hpp"
#include "pgg/util/random.hpp"
#include "support/game_oracle.hpp"

using namespace pgg::game;

namespace {

ParityGame
single(Player owner, int prio)
{
    ParityGame g;
    g.add_vertex(owner);
    g.add_edge(0, 0, prio);
    return g;
}

Strategy
random_system_strategy(const ParityGame &g, pgg::Rng &rng)
{
    Strategy s(Player::System, g.num_vertices());
    for (int v = 0; v < g.num_vertices(); v++) {
        if (g.owner(v) == Player::System) s[v] = rng.pick(g.out_edges(v));
    }
    return s;
}

void
check_strategies(const ParityGame &g, const SolveResult &r)
{
    std::vector<Player> sw = solve_restricted(g, r.system);
    std::vector<Player> ew = solve_restricted(g, r.environment);
    for (int v = 0; v < g.num_vertices(); v++) {
        if (r.winner[v] == Player::System) {
            if (g.owner(v) == Player::System) REQUIRE(r.system.defined(v));
            REQUIRE(sw[v] == Player::System);
        } else {
            if (g.owner(v) == Player::Environment) REQUIRE(r.environment.defined(v));
            REQUIRE(ew[v] == Player::Environment);
        }
    }
}

}  // namespace

TEST_CASE("play winner")
{
    ParityGame g;
    for (int i = 0; i < 3; i++) g.add_vertex(Player::System);
    g.add_edge(0, 1, 3);
    g.add_edge(1, 1, 3);
    g.add_edge(1, 2, 2);
    g.add_edge(2, 1, 1);
    g.add_edge(2, 2, 2);
    CHECK(play_winner(Lasso{{0}, {1}}, g) == Player::System);
    CHECK(play_winner(Lasso{{0, 1}, {2}}, g) == Player::Environment);
    CHECK(play_winner(Lasso{{0}, {1, 2}}, g) == Player::System);
    CHECK_THROWS_AS(play_winner(Lasso{{0}, {}}, g), GameError);
    CHECK_THROWS_AS(play_winner(Lasso{{2}, {0}}, g), GameError);
}

TEST_CASE("five-vertex example")
{
    ParityGame g = oracle::five_vertex_game();
    SolveResult z = zielonka_solve(g);
    for (int v = 0; v < 5; v++) CHECK(z.winner[v] == Player::System);
    check_strategies(g, z);

    Strategy s = oracle::five_vertex_system_strategy(g);
    CHECK(one_player_check(g, s));
    SolveResult si = strategy_iteration(g, s, SwitchRule::LosingOnly);
    CHECK(si.region(Player::System).size() == 5);
    CHECK(si.rounds == 0);

    Strategy bad = s;
    bad[0] = g.find_edge(0, 0);
    CHECK_FALSE(one_player_check(g, bad));
    SolveResult fixed = strategy_iteration(g, bad);
    CHECK(fixed.rounds >= 1);
    CHECK(one_player_check(g, fixed.system));

    Strategy partial(Player::System, 5);
    partial[0] = g.find_edge(0, 2);
    CHECK_THROWS_AS(one_player_check(g, partial), GameError);
    CHECK_THROWS_AS(strategy_iteration(g, partial), GameError);

    // infinitely-often priorities of the play under both strategies
    Strategy e = oracle::five_vertex_environment_strategy(g);
    std::vector<int> path{g.initial()};
    std::vector<int> seen_at(5, -1), edges;
    int v = g.initial();
    while (seen_at[v] < 0) {
        seen_at[v] = static_cast<int>(edges.size());
        int ed = g.owner(v) == Player::System ? s[v] : e[v];
        edges.push_back(ed);
        v = g.edge(ed).dst;
    }
    std::set<int> inf;
    for (std::size_t i = seen_at[v]; i < edges.size(); i++) inf.insert(g.edge(edges[i]).priority);
    CHECK(inf == std::set<int>{3});
}

TEST_CASE("single vertex games")
{
    CHECK(zielonka_solve(single(Player::System, 2)).winner[0] == Player::Environment);
    CHECK(zielonka_solve(single(Player::System, 1)).winner[0] == Player::System);
    CHECK(zielonka_solve(single(Player::Environment, 0)).winner[0] == Player::Environment);
    ParityGame g = single(Player::System, 2);
    Strategy s(Player::System, 1);
    s[0] = 0;
    CHECK(strategy_iteration(g, s).winner[0] == Player::Environment);
    CHECK_FALSE(one_player_check(g, s));
    CHECK(one_player_check(single(Player::System, 1), s));
}

TEST_CASE("scc decomposition")
{
    ParityGame two;
    two.add_vertex(Player::System);
    two.add_vertex(Player::System);
    two.add_edge(0, 1, 0);
    two.add_edge(0, 0, 0);
    two.add_edge(1, 1, 0);
    CHECK(scc_decompose(two) == std::vector<std::vector<int>>{{1}, {0}});

    ParityGame ring;
    for (int i = 0; i < 4; i++) ring.add_vertex(Player::Environment);
    for (int i = 0; i < 4; i++) ring.add_edge(i, (i + 1) % 4, 0);
    CHECK(scc_decompose(ring).size() == 1);

    CHECK(scc_decompose(oracle::five_vertex_game()) == std::vector<std::vector<int>>{{4}, {3}, {1, 2}, {0}});
}

TEST_CASE("property: scc order respects edges")
{
    for (std::uint64_t seed = 0; seed < 100; seed++) {
        RandomGameParams p;
        p.vertices = 12;
        p.max_out = 2;
        ParityGame g = random_game(p, seed);
        auto comps = scc_decompose(g);
        std::vector<int> pos(g.num_vertices(), -1);
        for (std::size_t i = 0; i < comps.size(); i++)
            for (int v : comps[i]) {
                REQUIRE(pos[v] < 0);
                pos[v] = static_cast<int>(i);
            }
        for (int v = 0; v < g.num_vertices(); v++) REQUIRE(pos[v] >= 0);
        for (const Edge &e : g.edges()) {
            if (pos[e.src] != pos[e.dst]) REQUIRE(pos[e.dst] < pos[e.src]);
        }
    }
}

TEST_CASE("property: zielonka matches brute force and regions partition")
{
    for (std::uint64_t seed = 0; seed < 150; seed++) {
        RandomGameParams p;
        p.vertices = 1 + static_cast<int>(seed % 8);
        p.edge_priorities = seed % 2 == 0;
        ParityGame g = random_game(p, seed);
        SolveResult z = zielonka_solve(g);
        std::vector<bool> brute = oracle::brute_system_region(g);
        for (int v = 0; v < g.num_vertices(); v++) {
            REQUIRE_MESSAGE((z.winner[v] == Player::System) == brute[v], "seed " << seed << " vertex " << v);
        }
        REQUIRE(z.region(Player::System).size() + z.region(Player::Environment).size() == static_cast<std::size_t>(g.num_vertices()));
        check_strategies(g, z);
    }
}

TEST_CASE("property: strategy iteration agrees with zielonka")
{
    pgg::Rng rng(99);
    for (std::uint64_t seed = 0; seed < 200; seed++) {
        RandomGameParams p;
        p.vertices = 2 + static_cast<int>(seed % 9);
        p.max_priority = 2 + static_cast<int>(seed % 6);
        p.edge_priorities = seed % 3 == 0;
        ParityGame g = random_game(p, 1000 + seed);
        SolveResult z = zielonka_solve(g);
        for (int k = 0; k < 10; k++) {
            Strategy init = random_system_strategy(g, rng);
            for (SwitchRule rule : {SwitchRule::AllProfitable, SwitchRule::LosingOnly}) {
                SolveResult si = strategy_iteration(g, init, rule);
                REQUIRE_MESSAGE(si.winner == z.winner, "seed " << seed);
                check_strategies(g, si);
            }
        }
        // a winning start needs no improvement
        SolveResult again = strategy_iteration(g, complete_strategy(g, z.system), SwitchRule::LosingOnly);
        CHECK(again.winner == z.winner);
        if (z.region(Player::Environment).empty()) CHECK(again.rounds == 0);
    }
}

TEST_CASE("pgsolver import and export")
{
    ParityGame g = import_pgsolver("parity 1; 0 3 0 0;");
    REQUIRE(g.num_vertices() == 1);
    CHECK(g.owner(0) == Player::System);
    REQUIRE(g.num_edges() == 1);
    CHECK(g.edge(0).priority == 3);
    CHECK(g.edge(0).dst == 0);

    CHECK_THROWS_AS(import_pgsolver("parity 1; 0 3 0 5;"), GameError);
    CHECK_THROWS_AS(import_pgsolver("parit 1; 0 3 0 0;"), GameError);
    CHECK_THROWS_AS(import_pgsolver("parity x; 0 3 0 0;"), GameError);
    CHECK_THROWS_AS(import_pgsolver("parity 1; 0 3 0;"), GameError);
    CHECK_THROWS_AS(import_pgsolver("parity 1; 0 3 0 0"), GameError);

    ParityGame named = import_pgsolver("parity 2;\nstart 1;\n0 2 1 1,2 \"a;b\";\n1 1 0 0;\n2 0 0 2;\n");
    CHECK(named.num_vertices() == 3);
    CHECK(named.initial() == 1);
    CHECK(named.owner(0) == Player::Environment);
    CHECK(named.out_edges(0).size() == 2);

    for (std::uint64_t seed = 0; seed < 100; seed++) {
        RandomGameParams p;
        p.vertices = 1 + static_cast<int>(seed % 12);
        ParityGame r = random_game(p, seed);
        std::vector<std::string> warnings;
        ParityGame back = import_pgsolver(export_pgsolver(r, &warnings));
        CHECK(warnings.empty());
        REQUIRE(back == r);
    }

    RandomGameParams mixed;
    mixed.edge_priorities = true;
    mixed.min_out = 3;
    std::vector<std::string> warnings;
    export_pgsolver(random_game(mixed, 3), &warnings);
    CHECK_FALSE(warnings.empty());
}

TEST_CASE("json round trip")
{
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        RandomGameParams p;
        p.edge_priorities = true;
        ParityGame g = random_game(p, seed);
        ParityGame back = game_from_json(game_to_json(g));
        CHECK(back == g);
        CHECK(back.priority_bound() == g.priority_bound());
    }
    CHECK_THROWS_AS(game_from_json(nlohmann::json{{"format", "other"}}), GameError);
}

TEST_CASE("random games are seeded")
{
    RandomGameParams p;
    CHECK(random_game(p, 5) == random_game(p, 5));
    CHECK_FALSE(random_game(p, 5) == random_game(p, 6));
}
