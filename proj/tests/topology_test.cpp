#include "doctest.h"
#include "util.hpp"
#include "bcast/topology.hpp"

using namespace bcast;

static void check_graph(const Topology& g) {
  for (VertexId v = 0; v < g.size(); ++v) {
    CHECK_FALSE(g.adjacent(v, v));
    CHECK(std::is_sorted(g.neighbors(v).begin(), g.neighbors(v).end()));
    for (auto u : g.neighbors(v)) CHECK(g.adjacent(u, v));
  }
}

TEST_CASE("families") {
  auto l = make_line(3);
  CHECK(l.num_edges() == 2);
  CHECK(l.adjacent(l.vertex("v1"), l.vertex("v2")));
  CHECK(l.adjacent(l.vertex("v2"), l.vertex("v3")));
  CHECK_FALSE(l.adjacent(l.vertex("v1"), l.vertex("v3")));
  auto c = make_clique(3);
  CHECK(c.num_edges() == 3);
  auto s = make_star(4);
  CHECK(s.size() == 5);
  CHECK(s.name(0) == kEpsilon);
  CHECK(s.neighbors(0).size() == 4);
  for (auto* g : {&l, &c, &s}) check_graph(*g);
  CHECK_THROWS(make_line(0));
}

TEST_CASE("tree literals") {
  auto g = parse_topology("tree:{ε,1,2,11}");
  CHECK(g.size() == 4);
  CHECK(g.adjacent(g.vertex("1"), g.vertex("11")));
  CHECK(g.adjacent(g.vertex(kEpsilon), g.vertex("2")));
  CHECK(g.spec == "tree:{ε,1,11,2}");
  CHECK_THROWS_AS(parse_topology("tree:{ε,11}"), Error);
  CHECK_THROWS_AS(parse_topology("tree:{1}"), Error);
  CHECK_THROWS_AS(parse_topology("tree:ε,1"), Error);
  CHECK_THROWS_AS(parse_topology("ring:3"), Error);
  auto wide = make_tree({{}, {12}, {12, 1}});
  CHECK(wide.g.name(1) == "12");
  CHECK(wide.g.name(2) == "12.1");
  check_graph(g);
}

TEST_CASE("edge files") {
  auto g = parse_edge_file("# triangle\nedge a b\nedge b c\nedge c a\nvertex d\n");
  CHECK(g.size() == 4);
  CHECK(g.num_edges() == 3);
  CHECK_THROWS_AS(parse_edge_file("edge a a\n"), Error);
  CHECK_THROWS_AS(parse_edge_file("edge a\n"), Error);
}

static void check_unfolding(const Topology& g, const Unfolding& u, VertexId vf, std::size_t n) {
  const auto& t = u.tree;
  CHECK(u.lambda[0] == vf);
  for (VertexId x = 0; x < t.g.size(); ++x) {
    CHECK(t.words[x].size() <= n);
    if (t.words[x].size() < n) {
      std::vector<VertexId> img;
      for (auto y : t.g.neighbors(x)) img.push_back(u.lambda[y]);
      std::sort(img.begin(), img.end());
      CHECK(std::adjacent_find(img.begin(), img.end()) == img.end());
      CHECK(img == g.neighbors(u.lambda[x]));
    }
  }
}

TEST_CASE("unfold clique") {
  auto g = make_clique(3);
  auto u = unfold_to_tree(g, 0, 2);
  // root's two children each get the one neighbour that is not their parent's image
  CHECK(u.tree.g.size() == 5);
  CHECK(u.tree.g.spec == "tree:{ε,1,11,2,21}");
  std::vector<std::string> img;
  for (auto v : u.lambda) img.push_back(g.name(v));
  CHECK(img == std::vector<std::string>{"v1", "v2", "v3", "v3", "v2"});
  check_unfolding(g, u, 0, 2);
}

TEST_CASE("unfold line") {
  auto g = make_line(2);
  auto u = unfold_to_tree(g, 0, 3);
  CHECK(u.tree.g.size() == 2);
  CHECK(u.lambda == std::vector<VertexId>{0, 1});
  check_unfolding(g, u, 0, 3);

  auto u0 = unfold_to_tree(make_clique(4), 2, 0);
  CHECK(u0.tree.g.size() == 1);
  CHECK(u0.lambda == std::vector<VertexId>{2});

  auto g5 = make_line(5);
  for (VertexId v = 0; v < 5; ++v)
    for (std::size_t n = 0; n <= 5; ++n) check_unfolding(g5, unfold_to_tree(g5, v, n), v, n);
  auto c4 = make_clique(4);
  for (std::size_t n = 0; n <= 3; ++n) check_unfolding(c4, unfold_to_tree(c4, 1, n), 1, n);
}
