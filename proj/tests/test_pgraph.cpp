#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qemb/pgraph.hpp"

using namespace qemb;
using namespace qemb::pgraph;
using emb::Embedding;
using quat::EichlerOrder;
using quat::QuatAlgebra;
using quat::QuatElem;

namespace {

QuatElem qe(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    QuatElem r;
    r.x = {a, b, c, d};
    return r;
}

EichlerOrder order_ex61() {
    QuatAlgebra alg(Rat(7), Rat(5));
    return EichlerOrder(alg,
                        {qe(1, 0, 0, 0), qe(0, 1, 0, 0), qe(Rat(1, 2), 0, Rat(1, 2), 0),
                         qe(0, Rat(1, 2), 0, Rat(1, 2))},
                        Int(1));
}

EichlerOrder order_max14() {
    QuatAlgebra alg(Rat(7), Rat(-1));
    return EichlerOrder(alg,
                        {qe(1, 0, 0, 0), qe(0, 1, 0, 0), qe(0, 0, 1, 0),
                         qe(Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2))},
                        Int(1));
}

void check_read_Tp(const HeckeGraph& g) {
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        if (g.vertices[v].level >= g.max_level) continue;
        hecke::EmbSum base;
        base.add(g.vertices[v].cls, Rat(1));
        CHECK(read_Tp(g, v) == hecke_T(*g.order, g.p, base));
    }
}

}  // namespace

TEST_CASE("inert shape: disc 5, p = 3") {
    EichlerOrder o = order_ex61();
    Embedding p1 = emb::make_embedding(o, qe(0, 0, -1, 0));
    HeckeGraph g = build_graph(o, p1, Int(3), 3);
    CHECK(validate_shape(g).ok());
    CHECK(g.level_vertices(0).size() == 1);
    CHECK(!g.loop);
    CHECK(!g.double_edge);
    // e_1 = 2, so (3+1)/2 = 2 level-1 vertices; m = 1, chains afterwards
    CHECK(g.level_vertices(1).size() == 2);
    CHECK(g.level_vertices(2).size() == 2);
    CHECK(g.level_vertices(3).size() == 2);
    check_read_Tp(g);
}

TEST_CASE("inert shape: disc 5, p = 2, level-1 merge") {
    EichlerOrder o = order_ex61();
    Embedding p1 = emb::make_embedding(o, qe(0, 0, -1, 0));
    HeckeGraph g = build_graph(o, p1, Int(2), 3);
    CHECK(validate_shape(g).ok());
    // e_1 = 3: all three norm-2 conjugates merge into one level-1 vertex;
    // U_3 = 8 so m = 3 and levels 1..2 branch by p = 2
    CHECK(g.level_vertices(0).size() == 1);
    CHECK(g.level_vertices(1).size() == 1);
    CHECK(g.level_vertices(2).size() == 2);
    CHECK(g.level_vertices(3).size() == 4);
    check_read_Tp(g);
}

TEST_CASE("ramified principal shape: disc 13, p = 13, directed loop") {
    EichlerOrder o = order_ex61();
    auto p13 = find_embedding(o, qnum::Discriminant(Int(13)), 64);
    REQUIRE(p13.has_value());
    HeckeGraph g = build_graph(o, *p13, Int(13), 1);
    CHECK(validate_shape(g).ok());
    CHECK(g.level_vertices(0).size() == 1);
    REQUIRE(g.loop.has_value());
    CHECK(g.loop_directed);
    check_read_Tp(g);
}

TEST_CASE("ramified non-principal shape: disc 12, p = 2, two vertices") {
    EichlerOrder o = order_ex61();
    Embedding p2 = emb::make_embedding(o, qe(0, -1, -8, 3));
    HeckeGraph g = build_graph(o, p2, Int(2), 3);
    CHECK(validate_shape(g).ok());
    auto l0 = g.level_vertices(0);
    REQUIRE(l0.size() == 2);
    CHECK(!g.loop);
    CHECK(g.edge_multiplicity(l0[0], l0[1]) == 1);
    // e_1 = 2: one up-edge each; m = 2: level-1 vertices split into p = 2
    CHECK(g.level_vertices(1).size() == 2);
    CHECK(g.level_vertices(2).size() == 4);
    CHECK(g.level_vertices(3).size() == 4);
    check_read_Tp(g);
}

TEST_CASE("split singleton shape: disc 17, p = 2, undirected loop") {
    EichlerOrder o = order_ex61();
    Embedding p17 = emb::make_embedding(o, qe(0, 1, 3, 1));
    HeckeGraph g = build_graph(o, p17, Int(2), 2);
    CHECK(validate_shape(g).ok());
    CHECK(g.level_vertices(0).size() == 1);
    REQUIRE(g.loop.has_value());
    CHECK(!g.loop_directed);
    CHECK(!g.double_edge);
    check_read_Tp(g);
}

TEST_CASE("split pair shape: disc 21, p = 5, double edge") {
    EichlerOrder o = order_max14();
    auto p21 = find_embedding(o, qnum::Discriminant(Int(21)), 64);
    REQUIRE(p21.has_value());
    REQUIRE(qnum::prime_form_order(qnum::Discriminant(Int(21)), Int(5)) == 2);
    HeckeGraph g = build_graph(o, *p21, Int(5), 1);
    CHECK(validate_shape(g).ok());
    auto l0 = g.level_vertices(0);
    REQUIRE(l0.size() == 2);
    CHECK(g.edge_multiplicity(l0[0], l0[1]) == 2);
    REQUIRE(g.double_edge.has_value());
    CHECK(!g.loop);
    check_read_Tp(g);
}

TEST_CASE("split cycle shape: disc 229, p = 3, three level-0 vertices") {
    EichlerOrder o = order_max14();
    REQUIRE(qnum::kronecker(Int(229), Int(3)) == 1);
    REQUIRE(qnum::prime_form_order(qnum::Discriminant(Int(229)), Int(3)) == 3);
    auto p229 = find_embedding(o, qnum::Discriminant(Int(229)), 64);
    REQUIRE(p229.has_value());
    HeckeGraph g = build_graph(o, *p229, Int(3), 1);
    CHECK(validate_shape(g).ok());
    auto l0 = g.level_vertices(0);
    REQUIRE(l0.size() == 3);
    CHECK(!g.loop);
    CHECK(!g.double_edge);
    for (size_t v : l0) {
        unsigned deg = 0;
        for (size_t u : l0)
            if (u != v) deg += g.edge_multiplicity(v, u);
        CHECK(deg == 2);
    }
    check_read_Tp(g);
}

TEST_CASE("negative control: deleting an edge is reported") {
    EichlerOrder o = order_ex61();
    Embedding p1 = emb::make_embedding(o, qe(0, 0, -1, 0));
    HeckeGraph g = build_graph(o, p1, Int(3), 2);
    REQUIRE(validate_shape(g).ok());
    REQUIRE(!g.edges.empty());
    g.edges.pop_back();
    CHECK(!validate_shape(g).ok());
}

TEST_CASE("build_graph rejections") {
    EichlerOrder o = order_ex61();
    Embedding p1 = emb::make_embedding(o, qe(0, 0, -1, 0));
    CHECK_THROWS_AS(build_graph(o, p1, Int(5), 1), Error);  // 5 | disc
    CHECK_THROWS_AS(build_graph(o, p1, Int(7), 1), Error);  // 7 | disc
    // disc 20 = 2^2 * 5 is not 2-fundamental
    Embedding p20 = emb::conjugate(p1, theta(o, Int(2)).reps[0]);
    CHECK(p20.D.value() == 20);
    CHECK_THROWS_AS(build_graph(o, p20, Int(2), 1), Error);
    // but it is 3-fundamental, so p = 3 is fine
    CHECK(validate_shape(build_graph(o, p20, Int(3), 1)).ok());
}

TEST_CASE("DOT rendering") {
    EichlerOrder o = order_ex61();
    Embedding p2 = emb::make_embedding(o, qe(0, -1, -8, 3));
    HeckeGraph g = build_graph(o, p2, Int(2), 1);
    std::string dot = graph_to_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("L0_0") != std::string::npos);
    CHECK(dot.find("L0_1") != std::string::npos);
    CHECK(dot.find("L1_0") != std::string::npos);
    CHECK(dot.find("D=12") != std::string::npos);
    CHECK(dot.find("D=48") != std::string::npos);
    CHECK(dot.find("rank=same") != std::string::npos);

    // loop case emits exactly one self-edge, directed for the ramified loop
    auto p13 = find_embedding(o, qnum::Discriminant(Int(13)), 64);
    REQUIRE(p13.has_value());
    std::string ldot = graph_to_dot(build_graph(o, *p13, Int(13), 1));
    size_t self = 0, pos = 0;
    while ((pos = ldot.find("L0_0 -> L0_0", pos)) != std::string::npos) {
        ++self;
        pos += 1;
    }
    CHECK(self == 1);

    // max_level 0: single-node graph still renders
    std::string sdot = graph_to_dot(build_graph(o, p2, Int(3), 0));
    CHECK(sdot.find("L0_0") != std::string::npos);
}
