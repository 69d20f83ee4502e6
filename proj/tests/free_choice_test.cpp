#include <gtest/gtest.h>

#include <random>

#include "fcwf/error.hpp"
#include "fcwf/free_choice.hpp"
#include "fcwf/oracle.hpp"
#include "fcwf/scc.hpp"
#include "support.hpp"

using namespace fcwf;
using namespace fcwf::test;

namespace {

std::set<NameSet> cluster_sets(const Net &n) {
    ClusterPartition p = clusters(n);
    std::set<NameSet> out;
    for (std::size_t c = 0; c < p.size(); ++c)
        out.insert(names_of(n, p.nodes(n, c)));
    return out;
}

} // namespace

TEST(FreeChoice, Recognition) {
    EXPECT_TRUE(is_free_choice(fixture_net("fig3")));
    EXPECT_FALSE(is_free_choice(fixture_net("fig1")));
    EXPECT_TRUE(is_free_choice(fixture_net("cycle1")));
    EXPECT_TRUE(is_free_choice(fixture_net("fig2net")));
    EXPECT_THROW(clusters(fixture_net("fig1")), Error);
}

TEST(FreeChoice, RecognitionAgreesWithPairwiseCheck) {
    std::mt19937_64 rng(11);
    int positives = 0;
    for (int i = 0; i < 400; ++i) {
        Net n = random_net(rng, 1 + i % 5, 1 + i % 4, 0.3);
        bool fc = is_free_choice(n);
        ASSERT_EQ(fc, ref::free_choice_pairwise(n));
        positives += fc;
    }
    EXPECT_GT(positives, 20);
}

TEST(FreeChoice, ThirdFigureClusters) {
    Net n = fixture_net("fig3");
    EXPECT_EQ(cluster_sets(n), (std::set<NameSet>{{"s1", "t1"},
                                                  {"s2", "t2", "t3"},
                                                  {"s3", "t4", "t5"},
                                                  {"s4", "s5", "t6"},
                                                  {"s6", "s7", "t7"}}));
    EXPECT_EQ(cluster_sets(fixture_net("cycle1")), (std::set<NameSet>{{"s", "t"}}));
    EXPECT_EQ(clusters(fixture_net("fig2net")).size(), 5u);
}

TEST(FreeChoice, SinkPlacesAndSourceTransitionsShareClusters) {
    Net n = make_net({"a", "b", "c"}, {"u", "v", "w"}, {{"u", "a"}, {"v", "b"}, {"c", "w"}});
    EXPECT_EQ(cluster_sets(n), (std::set<NameSet>{{"a", "b"}, {"u", "v"}, {"c", "w"}}));
}

TEST(FreeChoice, PartitionInvariantsOnRandomNets) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 8, 1 + seed % 4);
        ClusterPartition p = clusters(n);
        std::vector<int> seen(n.node_count(), 0);
        for (std::size_t c = 0; c < p.size(); ++c) {
            for (Index s : p.places[c]) {
                ++seen[s];
                auto post = n.place_post(s);
                std::vector<Index> a(post.begin(), post.end()), b = p.transitions[c];
                std::sort(b.begin(), b.end());
                EXPECT_EQ(a, b);
            }
            for (Index t : p.transitions[c]) {
                ++seen[n.place_count() + t];
                auto pre = n.transition_pre(t);
                std::vector<Index> a(pre.begin(), pre.end()), b = p.places[c];
                std::sort(b.begin(), b.end());
                EXPECT_EQ(a, b);
            }
        }
        for (int k : seen)
            EXPECT_EQ(k, 1);
    }
}

TEST(FreeChoice, SubnetsStayFreeChoice) {
    std::mt19937_64 rng(5);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 7, 3);
        for (int k = 0; k < 10; ++k) {
            NodeSet sub = NodeSet::none_of(n);
            for (std::size_t g = 0; g < n.node_count(); ++g)
                if (rng() % 2)
                    sub.insert(n.from_graph_index(g));
            EXPECT_TRUE(is_free_choice(induced_subnet(n, sub)));
            EXPECT_TRUE(is_free_choice(n, sub));
        }
    }
}

TEST(FreeChoice, ClusterEnablingIsAllOrNone) {
    std::mt19937_64 rng(9);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 9, 3);
        ClusterPartition p = clusters(n);
        for (int k = 0; k < 10; ++k) {
            Marking m = random_marking(rng, n.place_count(), 1);
            for (std::size_t c = 0; c < p.size(); ++c) {
                if (p.transitions[c].empty())
                    continue;
                bool first = enabled(n, m, p.transitions[c].front());
                for (Index t : p.transitions[c])
                    EXPECT_EQ(enabled(n, m, t), first);
            }
        }
    }
}

TEST(FreeChoice, ReverseDualClusters) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 8, 3);
        EXPECT_EQ(cluster_sets(n), cluster_sets(reverse_dual(n)));
    }
}

TEST(Allocation, SubnetOfThirdFigure) {
    Net n = fixture_net("fig3");
    Net sub = allocation_subnet(n, make_allocation(n, {"t1", "t3", "t5", "t6", "t7"}));
    EXPECT_EQ(sub.place_count(), 7u);
    EXPECT_EQ(sub.transition_count(), 5u);
    auto post_s2 = postset(sub, {NodeKind::place, "s2"});
    auto post_s3 = postset(sub, {NodeKind::place, "s3"});
    EXPECT_EQ(post_s2, (std::vector<NodeId>{{NodeKind::transition, "t3"}}));
    EXPECT_EQ(post_s3, (std::vector<NodeId>{{NodeKind::transition, "t5"}}));
    for (Index s = 0; s < sub.place_count(); ++s)
        EXPECT_EQ(sub.place_post(s).size(), 1u);
    Net c = fixture_net("cycle1");
    EXPECT_EQ(allocation_subnet(c, make_allocation(c, {"t"})), c);
}

TEST(Allocation, Validation) {
    Net n = fixture_net("fig3");
    EXPECT_THROW(make_allocation(n, {"t1", "t2", "t3", "t5", "t6", "t7"}), Error);
    try {
        make_allocation(n, {"t1", "t2", "t4"});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_allocation);
    }
    Net sink = make_net({"a", "b"}, {"u"}, {{"a", "u"}, {"u", "b"}});
    try {
        allocation_subnet(sink, Allocation{{0}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::cluster_without_transition);
    }
}

TEST(Allocation, DirectedOnThirdFigure) {
    Net n = fixture_net("fig3");
    auto chosen = [&](std::vector<std::string> targets) {
        std::vector<Index> idx;
        for (auto &t : targets)
            idx.push_back(n.transition(t));
        Allocation a = directed_allocation(n, idx);
        std::set<std::string> out;
        for (Index t : a.choice)
            out.insert(n.transition_name(t));
        return out;
    };
    EXPECT_EQ(chosen({"t7"}), (std::set<std::string>{"t1", "t3", "t5", "t6", "t7"}));
    EXPECT_EQ(chosen({"t4"}), (std::set<std::string>{"t1", "t2", "t4", "t6", "t7"}));
    Net c = fixture_net("cycle1");
    const Index t0[] = {0};
    EXPECT_EQ(directed_allocation(c, t0).choice, (std::vector<Index>{0}));
}

TEST(Allocation, DirectedPreconditions) {
    const Index t0[] = {0};
    try {
        directed_allocation(fixture_net("fig1"), t0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::not_free_choice);
    }
    try {
        directed_allocation(fixture_net("fig1_split"), t0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::not_strongly_connected);
    }
    EXPECT_THROW(directed_allocation(fixture_net("fig3"), std::span<const Index>{}), Error);
}

TEST(Allocation, DirectedReachesTargets) {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        Net n = random_fc_net(seed, 1 + seed % 10, 1 + seed % 4);
        std::vector<Index> targets;
        for (Index t = 0; t < n.transition_count(); ++t)
            if (rng() % 3 == 0)
                targets.push_back(t);
        if (targets.empty())
            targets.push_back(static_cast<Index>(rng() % n.transition_count()));
        Allocation a = directed_allocation(n, targets);
        ClusterPartition p = clusters(n);
        NodeSet sub = allocation_nodes(n, p, a);
        auto r = ref::reachability(n, sub);
        for (std::size_t g = 0; g < n.node_count(); ++g) {
            if (!sub.contains(n.from_graph_index(g)))
                continue;
            bool hits = false;
            for (Index t : targets)
                hits |= r[g][n.place_count() + t] != 0;
            ASSERT_TRUE(hits) << "seed " << seed;
        }
        if (targets.size() == 1) {
            SccDecomposition d = scc(n, sub);
            EXPECT_EQ(std::count(d.is_bottom.begin(), d.is_bottom.end(), true), 1);
        }
    }
}

TEST(PlaceAllocation, SecondFigureSubnet) {
    Net n = fixture_net("fig2net");
    Net sub = place_allocation_subnet(n, make_place_allocation(n, {"s11", "s21", "s31", "s42", "s51"}));
    EXPECT_EQ(sub.place_count(), 5u);
    EXPECT_EQ(sub.transition_count(), n.transition_count());
    for (Index t = 0; t < sub.transition_count(); ++t)
        EXPECT_EQ(sub.transition_pre(t).size(), 1u);
    Net c = fixture_net("cycle1");
    EXPECT_EQ(place_allocation_subnet(c, make_place_allocation(c, {"s"})), c);
}

TEST(PlaceAllocation, CoDirectedFromPlace) {
    Net n = fixture_net("fig3");
    const Index sources[] = {n.place("s1")};
    PlaceAllocation b = co_directed_place_allocation(n, sources);
    NodeSet sub = place_allocation_nodes(n, clusters(n), b);
    SccDecomposition d = scc(n, sub);
    EXPECT_EQ(std::count(d.is_top.begin(), d.is_top.end(), true), 1);
    // Every node of N_beta is reachable from s1.
    auto r = ref::reachability(n, sub);
    for (std::size_t g = 0; g < n.node_count(); ++g)
        if (sub.contains(n.from_graph_index(g)))
            EXPECT_TRUE(r[n.place("s1")][g]);
}
