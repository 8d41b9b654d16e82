#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pgg/ltl/measures.hpp"
#include "pgg/ltl/parser.hpp"
#include "support/ltl_oracle.hpp"

using namespace pgg::ltl;

TEST_CASE("trueness examples")
{
    CHECK(trueness(parse("G a")) == 0.5);
    CHECK(trueness(ff()) == 0.0);
    CHECK(trueness(tt()) == 1.0);
    CHECK(trueness(parse("a & G b")) == 0.25);
    CHECK(trueness(parse("a | !a")) == 1.0);
    CHECK(trueness(parse("G a | (G a & b)")) == 0.5);
}

TEST_CASE("trueness cap")
{
    std::vector<Formula> parts;
    for (int i = 0; i < 26; i++) parts.push_back(atom("p" + std::to_string(i)));
    Formula big = disj(parts);
    CHECK_THROWS_AS(trueness(big), TooManyVariables);
    try {
        trueness(big);
    } catch (const TooManyVariables &e) {
        CHECK(std::string(e.what()).find("too many propositional variables") != std::string::npos);
    }
    auto est = trueness_or_estimate(big);
    CHECK_FALSE(est.exact);
    CHECK(est.value > 0.99);
    // 24 variables is still exact
    parts.resize(24);
    CHECK(trueness(conj(parts)) == std::ldexp(1.0, -24));
}

TEST_CASE("property: trueness equals brute-force enumeration")
{
    std::mt19937_64 rng(23);
    const std::vector<std::string> props{"a", "b", "c", "d", "e"};
    for (int i = 0; i < 300; i++) {
        Formula f = to_nnf(oracle::random_formula(rng, props, 5));
        if (propositionalize(f).size() > 10) continue;
        REQUIRE_MESSAGE(trueness(f) == oracle::brute_trueness(f), f.to_string());
    }
    // more than six variables exercises the block path
    Formula wide = parse("(a | b | c) & (d | e | f) & (g | h) & G i");
    CHECK(trueness(wide) == oracle::brute_trueness(wide));
}

TEST_CASE("property: af keeps trueness in range")
{
    std::mt19937_64 rng(29);
    const std::vector<std::string> props{"a", "b", "c", "d"};
    for (int i = 0; i < 200; i++) {
        Formula f = to_nnf(oracle::random_formula(rng, props, 4));
        for (const Valuation &v : all_valuations(props)) {
            double t = trueness(af(f, v));
            CHECK(t >= 0.0);
            CHECK(t <= 1.0);
        }
    }
}

TEST_CASE("obligation formula: every rule")
{
    Formula p = parse("p1 & q1");  // symbolic arguments
    Formula q = parse("p2 | q2");
    Formula a = atom("a");
    CHECK(obligation_formula(tt()).is_true());
    CHECK(obligation_formula(ff()).is_false());
    CHECK(obligation_formula(a) == a);
    CHECK(obligation_formula(neg_atom("a")) == neg_atom("a"));
    CHECK(obligation_formula(conj(globally(p), finally(q))) == conj(p, q));
    CHECK(obligation_formula(disj(globally(p), finally(q))) == disj(p, q));
    CHECK(obligation_formula(next(p)) == p);
    CHECK(obligation_formula(finally(p)) == p);
    CHECK(obligation_formula(globally(p)) == p);
    CHECK(obligation_formula(until(p, q)) == q);
    CHECK(obligation_formula(release(p, q)) == q);
    CHECK(obligation_formula(weak_until(p, q)) == disj(p, q));
    CHECK(obligation_formula(strong_release(p, q)) == conj(p, q));
    CHECK(obligation_formula(parse("a U b")) == atom("b"));
    CHECK(obligation_formula(parse("G F c")) == atom("c"));
    CHECK(obligation_formula(parse("a W b")) == parse("a | b"));
}

TEST_CASE("system control")
{
    Partition p{{"a"}, {"e"}};
    CHECK(system_control(atom("a"), p) == 1.0);
    CHECK(system_control(atom("e"), p) == 0.0);
    CHECK(system_control(parse("a & e"), p) == 0.5);
    CHECK(system_control(parse("G !a"), p) == 1.0);
    CHECK(system_control(tt(), p) == 0.5);
    CHECK(system_control(parse("a U (a & e)"), p) == doctest::Approx(0.75));
    CHECK_THROWS(system_control(atom("z"), p));

    CHECK(system_control_prop(parse("a & e"), p) == 0.5);
    CHECK(system_control_prop(parse("G a"), p) == 1.0);
    CHECK(system_control_prop(tt(), p) == 0.5);
    CHECK(system_control_prop(parse("a & X a & e"), p) == 0.5);
}

TEST_CASE("syntactic metrics")
{
    auto m = syntactic_metrics(parse("a & b & G c"));
    CHECK(m.conjuncts == 3);
    CHECK(m.disjuncts == 1);
    m = syntactic_metrics(parse("G a"));
    CHECK(m.conjuncts == 1);
    CHECK(m.temporal_ops == 1);
    CHECK(m.height == 2);
    m = syntactic_metrics(parse("(a U b) | F c"));
    CHECK(m.disjuncts == 2);
    CHECK(m.temporal_ops == 2);
    CHECK(m.height == 3);
    m = syntactic_metrics(tt());
    CHECK(m.height == 1);
    CHECK(m.temporal_ops == 0);
}
