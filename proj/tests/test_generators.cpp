#include <gtest/gtest.h>

#include "regspec/regspec.hpp"

using namespace regspec;

TEST(Generators, FamilyShapes) {
    const Graph c = cycle_graph(17);
    EXPECT_EQ(c.order(), 17u);
    EXPECT_EQ(regularity(c), 2u);
    EXPECT_EQ(girth(c), 17u);

    const Graph k = complete_graph(6);
    EXPECT_EQ(k.edge_count(), 15u);

    const Graph kb = complete_bipartite_graph(3, 3);
    EXPECT_EQ(regularity(kb), 3u);
    EXPECT_TRUE(is_bipartite(kb).bipartite);

    const Graph q = hypercube_graph(5);
    EXPECT_EQ(q.order(), 32u);
    EXPECT_EQ(regularity(q), 5u);
    EXPECT_EQ(girth(q), 4u);

    const Graph p = petersen_graph();
    EXPECT_EQ(p.edge_count(), 15u);
    EXPECT_EQ(girth(p), 5u);
    EXPECT_EQ(oddgirth(p), 5u);
}

TEST(Generators, InvalidParameters) {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::IoError;
    };
    EXPECT_EQ(kind_of([] { cycle_graph(2); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { complete_bipartite_graph(2, 3); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { random_regular(7, 3, 1); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { random_regular(3, 3, 1); }), ErrorKind::InvalidParams);
    EXPECT_EQ(kind_of([] { random_regular(100, 20, 1, 3); }), ErrorKind::GenerationFailed);
    EXPECT_EQ(kind_of([] { generate("dodecahedron:n=20"); }), ErrorKind::InvalidParams);
}

TEST(Generators, RandomRegularIsSimpleRegularAndSeeded) {
    for (std::size_t k : {3, 4, 5})
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const std::size_t n = 100 * seed;
            const Graph g = random_regular(n, k, seed);
            EXPECT_EQ(g.order(), n);
            EXPECT_EQ(regularity(g), k);
            EXPECT_EQ(g, random_regular(n, k, seed));
        }
    EXPECT_NE(random_regular(100, 3, 1), random_regular(100, 3, 2));
}

TEST(Generators, RandomRegularFileIsStable) {
    EXPECT_EQ(format_graph(random_regular(100, 3, 7)), format_graph(random_regular(100, 3, 7)));
}

TEST(Generators, LineGraph) {
    const Graph l = line_graph(petersen_graph());
    EXPECT_EQ(l.order(), 15u);
    EXPECT_EQ(regularity(l), 4u);
    EXPECT_EQ(oddgirth(l), 3u);
    // K4 has 6 edges, each meeting 4 others.
    EXPECT_EQ(regularity(line_graph(complete_graph(4))), 4u);
}

TEST(Generators, BipartiteDouble) {
    const Graph d = bipartite_double(cycle_graph(5));
    EXPECT_EQ(d.order(), 10u);
    EXPECT_EQ(regularity(d), 2u);
    EXPECT_TRUE(is_bipartite(d).bipartite);
    EXPECT_EQ(connected_components(d).count, 1u);
    EXPECT_EQ(connected_components(bipartite_double(cycle_graph(4))).count, 2u);
    EXPECT_TRUE(d.adjacent(0, 6));
    EXPECT_FALSE(d.adjacent(0, 1));
}

TEST(Generators, SpecStrings) {
    const auto spec = parse_family_spec("random_regular:n=100,k=3,seed=7");
    EXPECT_EQ(spec.family, Family::random_regular);
    EXPECT_EQ(to_string(spec), "random_regular:n=100,k=3,seed=7");
    EXPECT_EQ(generate(spec), random_regular(100, 3, 7));
    EXPECT_EQ(generate("random_regular:n=100,k=3", 7), random_regular(100, 3, 7));
    const auto path = std::filesystem::temp_directory_path() / "regspec_gen_source.txt";
    write_graph(petersen_graph(), path);
    EXPECT_EQ(generate("line_of:" + path.string()), line_graph(petersen_graph()));
    EXPECT_EQ(generate("double_of:" + path.string()), bipartite_double(petersen_graph()));
    std::filesystem::remove(path);
    EXPECT_EQ(generate("hypercube:d=3"), hypercube_graph(3));
    EXPECT_EQ(generate("complete_bipartite:a=2,b=2"), complete_bipartite_graph(2, 2));
}

TEST(Generators, SplitMixBelowIsInRange) {
    SplitMix64 rng(5);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 7000; ++i) ++hist[rng.below(7)];
    for (int h : hist) EXPECT_GT(h, 800);
}
