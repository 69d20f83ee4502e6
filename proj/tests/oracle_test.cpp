#include <gtest/gtest.h>

#include <random>

#include "fcwf/error.hpp"
#include "fcwf/oracle.hpp"
#include "fcwf/scc.hpp"
#include "support.hpp"

using namespace fcwf;
using namespace fcwf::test;

TEST(Explore, FirstFigureIsUnbounded) {
    NetDocument doc = fixture("fig1");
    BoundednessVerdict v = explore(doc.net, *doc.initial_marking);
    ASSERT_EQ(v.outcome, Boundedness::unbounded);
    EXPECT_EQ(sequence_names(doc.net, v.path), (std::vector<std::string>{"t2", "t1", "t3"}));
    EXPECT_EQ(v.dominated_index, 0u);
    Effect e = sequence_effect(doc.net, v.pumping());
    EXPECT_EQ(e, (Effect{0, 0, 0, 0, 1}));
}

TEST(Explore, BoundedNets) {
    NetDocument c = fixture("cycle1");
    BoundednessVerdict v = explore(c.net, *c.initial_marking);
    ASSERT_EQ(v.outcome, Boundedness::bounded);
    EXPECT_EQ(v.graph.states.size(), 1u);
    EXPECT_EQ(v.graph.edges.size(), 1u);
    Net f = fixture_net("fcchoice");
    EXPECT_EQ(explore(f, Marking(3, 1)).outcome, Boundedness::bounded);
    EXPECT_EQ(explore(f, Marking(3, 1), 2).outcome, Boundedness::cap_exceeded);
}

TEST(Explore, EdgesReplayAndWitnessesPump) {
    std::mt19937_64 rng(41);
    int unbounded = 0;
    for (int i = 0; i < 150; ++i) {
        Net n = random_net(rng, 1 + i % 5, 1 + i % 4, 0.35);
        Marking m = random_marking(rng, n.place_count(), 1);
        BoundednessVerdict v = explore(n, m, 5000);
        for (const auto &e : v.graph.edges)
            ASSERT_EQ(fire(n, v.graph.states[e.from], e.transition), v.graph.states[e.to]);
        if (v.outcome == Boundedness::unbounded) {
            ++unbounded;
            Marking cur = fire_sequence(n, m, v.path);
            FiringSequence pump = v.pumping();
            for (int round = 0; round < 3; ++round) {
                Marking next = fire_sequence(n, cur, pump);
                ASSERT_TRUE(next.covers(cur));
                ASSERT_NE(next, cur);
                cur = next;
            }
        }
    }
    EXPECT_GT(unbounded, 10);
}

TEST(Liveness, Fixtures) {
    NetDocument c = fixture("cycle1");
    auto v = explore(c.net, *c.initial_marking);
    EXPECT_EQ(liveness(c.net, v.graph), (std::vector<TransitionLiveness>{TransitionLiveness::live}));

    Net f = fixture_net("fcchoice");
    auto g = explore(f, Marking(3, 1)).graph;
    EXPECT_TRUE(all_live(liveness(f, g)));
    EXPECT_FALSE(find_dl_marking(f, g));

    Net n = fixture_net("fig3");
    auto h = explore(n, Marking(7, 1)).graph;
    auto dl = find_dl_marking(n, h);
    ASSERT_TRUE(dl);
    EXPECT_TRUE(h.find(Marking{0, 0, 0, 0, 4, 4, 0}));
    auto zero = explore(c.net, Marking{0}).graph;
    EXPECT_EQ(find_dl_marking(c.net, zero), (std::optional<Marking>{Marking{0}}));
    EXPECT_EQ(liveness(c.net, zero)[0], TransitionLiveness::dead);
}

TEST(Liveness, FirstFigureTruncated) {
    // The first figure is unbounded; after the dead marking nothing fires.
    NetDocument doc = fixture("fig1");
    Marking dead = fire_sequence(doc.net, *doc.initial_marking, to_sequence(doc.net, {"t2", "t1", "t3", "t2", "t1", "t4"}));
    BoundednessVerdict v = explore(doc.net, dead);
    ASSERT_EQ(v.outcome, Boundedness::bounded);
    for (auto l : liveness(doc.net, v.graph))
        EXPECT_EQ(l, TransitionLiveness::dead);
}

TEST(Liveness, NeedsCompleteGraph) {
    NetDocument doc = fixture("fig1");
    BoundednessVerdict v = explore(doc.net, *doc.initial_marking);
    try {
        liveness(doc.net, v.graph);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::incomplete_graph);
    }
}

TEST(Liveness, DefinitionCheckOnRandomNets) {
    // Live at the root iff every reachable state reaches a state enabling t.
    std::mt19937_64 rng(43);
    for (int i = 0; i < 150; ++i) {
        Net n = random_net(rng, 1 + i % 5, 1 + i % 4, 0.35);
        BoundednessVerdict v = explore(n, random_marking(rng, n.place_count(), 1), 3000);
        if (v.outcome != Boundedness::bounded)
            continue;
        const auto &g = v.graph;
        std::size_t k = g.states.size();
        std::vector<std::vector<char>> r(k, std::vector<char>(k, 0));
        for (std::size_t a = 0; a < k; ++a)
            r[a][a] = 1;
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t a = 0; a < k; ++a)
                for (const auto &e : g.edges)
                    if (r[a][e.from] && !r[a][e.to])
                        r[a][e.to] = changed = true;
        }
        auto verdicts = liveness(n, g);
        for (Index t = 0; t < n.transition_count(); ++t) {
            std::vector<char> en(k, 0);
            for (const auto &e : g.edges)
                if (e.transition == t)
                    en[e.from] = 1;
            bool any = std::find(en.begin(), en.end(), 1) != en.end();
            bool live = true;
            for (std::size_t a = 0; a < k; ++a) {
                bool reaches = false;
                for (std::size_t b = 0; b < k; ++b)
                    reaches |= r[a][b] && en[b];
                live &= reaches;
            }
            auto expect = live ? TransitionLiveness::live : any ? TransitionLiveness::neither : TransitionLiveness::dead;
            ASSERT_EQ(verdicts[t], expect);
        }
    }
}

TEST(OracleWf, Fixtures) {
    EXPECT_EQ(oracle_well_formed(fixture_net("fcchoice")), OracleAnswer::yes);
    EXPECT_EQ(oracle_well_formed(fixture_net("fig3")), OracleAnswer::no);
    EXPECT_EQ(oracle_well_formed(fixture_net("cycle1")), OracleAnswer::yes);
    EXPECT_EQ(oracle_well_formed_exhaustive(fixture_net("fcchoice")), OracleAnswer::yes);
    EXPECT_EQ(oracle_well_formed_exhaustive(fixture_net("fig3")), OracleAnswer::no);
    EXPECT_THROW(oracle_well_formed(fixture_net("fig1_split")), Error);
}

TEST(OracleWf, ExhaustiveModeAgreesOnSmallNets) {
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 4, 2);
        if (n.place_count() > 7)
            continue;
        OracleAnswer a = oracle_well_formed(n, 100000);
        OracleAnswer b = oracle_well_formed_exhaustive(n, 5000);
        if (a == OracleAnswer::inconclusive || b == OracleAnswer::inconclusive)
            continue;
        EXPECT_EQ(a, b) << "seed " << seed;
        ++compared;
    }
    EXPECT_GT(compared, 20);
}

TEST(Brute, SemiComponents) {
    Net c = fixture_net("cycle1");
    auto only = enumerate_semi_t_brute(c);
    ASSERT_EQ(only.size(), 1u);
    EXPECT_EQ(only[0].nodes, NodeSet::all_of(c));

    Net f = fixture_net("fcchoice");
    auto two = enumerate_semi_t_brute(f);
    ASSERT_EQ(two.size(), 2u);
    for (const auto &x : two)
        EXPECT_TRUE(x.kind.is_full());

    Net n = fixture_net("fig3");
    std::set<NameSet> found;
    for (const auto &x : enumerate_semi_t_brute(n))
        found.insert(names_of(n, x.nodes));
    EXPECT_TRUE(found.count({"s1", "s2", "s3", "s6", "s7", "t1", "t3", "t5", "t7"}));
    EXPECT_TRUE(found.count({"s1", "s2", "s3", "s4", "s5", "t1", "t2", "t4", "t6"}));
    EXPECT_TRUE(found.count({"s1", "s2", "s3", "s4", "s7", "t1", "t2", "t5", "t6", "t7"}));
}

TEST(Brute, SemiSMatchesDualOfSemiT) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 7, 3);
        std::set<NameSet> s_side, via_dual;
        for (const auto &x : enumerate_semi_s_brute(n))
            s_side.insert(names_of(n, x.nodes));
        Net d = reverse_dual(n);
        for (const auto &x : enumerate_semi_t_brute(d))
            via_dual.insert(names_of(d, x.nodes));
        EXPECT_EQ(s_side, via_dual);
    }
}

TEST(Brute, CapIsEnforced) {
    Net n = fixture_net("fig3");
    EXPECT_THROW(enumerate_semi_t_brute(n, 3), Error);
    EXPECT_EQ(enumerate_semi_t_brute(n, 4).size(), 4u);
}

TEST(Generator, ShapeAndDeterminism) {
    Net one = random_fc_net(0, 1, 1);
    EXPECT_EQ(one.place_count(), 1u);
    EXPECT_EQ(one.transition_count(), 1u);
    EXPECT_EQ(one.arc_count(), 2u);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 12, 1 + seed % 4);
        ASSERT_TRUE(is_free_choice(n));
        ASSERT_TRUE(is_strongly_connected(n));
        ASSERT_EQ(n, random_fc_net(seed, 1 + seed % 12, 1 + seed % 4));
    }
}

TEST(Generator, ProducesBothVerdicts) {
    int yes = 0, no = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto a = oracle_well_formed(random_fc_net(seed, 1 + seed % 6, 1 + seed % 3), 200000);
        yes += a == OracleAnswer::yes;
        no += a == OracleAnswer::no;
    }
    EXPECT_GT(yes, 5);
    EXPECT_GT(no, 5);
}
