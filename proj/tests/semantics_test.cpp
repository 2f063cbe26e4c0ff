#include "doctest.h"
#include "gen.hpp"
#include "util.hpp"
#include "bcast/semantics.hpp"

#include <set>

using namespace bcast;

namespace {

Execution sample_run(const Protocol& p, const Topology& g) {
  auto tr = [&](const char* s, Kind k, const char* m, const char* d) {
    return *p.find_transition({p.state(s), k, k == Kind::Tau ? none : p.msg(m), p.state(d)});
  };
  auto v = [&](const char* n) { return g.vertex(n); };
  Execution e{initial_labels(p, g), {}};
  e.steps.push_back({v("v1"), tr("qin", Kind::Send, "b", "q4"),
                     {{v("v2"), tr("qin", Kind::Recv, "b", "q1")}, {v("v3"), tr("qin", Kind::Recv, "b", "q1")}}});
  e.steps.push_back({v("v2"), tr("q1", Kind::Send, "a", "qin"), {{v("v3"), tr("q1", Kind::Recv, "a", "q2")}}});
  e.steps.push_back({v("v3"), tr("q2", Kind::Send, "c", "q3"), {{v("v1"), tr("q4", Kind::Recv, "c", "q5")}}});
  return e;
}

std::vector<std::string> names(const Protocol& p, const Labels& c) {
  std::vector<std::string> r;
  for (auto q : c) r.push_back(p.state_name(q));
  return r;
}

// Reference: every (vertex, transition, per-neighbour option) tuple, filtered by the step definition.
std::set<std::pair<std::string, Labels>> naive_successors(const Protocol& p, const Topology& g, const Labels& c) {
  std::set<std::pair<std::string, Labels>> out;
  for (VertexId v = 0; v < g.size(); ++v)
    for (std::uint32_t ti = 0; ti < p.transitions().size(); ++ti) {
      const auto& t = p.transition(ti);
      if (t.src != c[v] || t.kind == Kind::Recv) continue;
      // option per vertex: index into all transitions, or none to stay
      std::vector<std::vector<std::uint32_t>> opts(g.size());
      for (VertexId u = 0; u < g.size(); ++u) {
        opts[u].push_back(none);
        if (u == v) continue;
        for (std::uint32_t ri = 0; ri < p.transitions().size(); ++ri) opts[u].push_back(ri);
      }
      std::vector<std::size_t> pos(g.size(), 0);
      while (true) {
        bool ok = true;
        Labels n = c;
        n[v] = t.dst;
        std::string key = std::to_string(v) + ":" + std::to_string(ti);
        for (VertexId u = 0; u < g.size() && ok; ++u) {
          if (u == v) continue;
          auto o = opts[u][pos[u]];
          bool must = t.kind == Kind::Send && g.adjacent(u, v) && p.receives(c[u], t.msg);
          if (o == none) {
            ok = !must;
            continue;
          }
          const auto& r = p.transition(o);
          ok = must && r.kind == Kind::Recv && r.msg == t.msg && r.src == c[u];
          n[u] = r.dst;
          key += "," + std::to_string(u) + ":" + std::to_string(o);
        }
        if (ok) out.insert({key, n});
        std::size_t i = 0;
        for (; i < g.size(); ++i) {
          if (++pos[i] < opts[i].size()) break;
          pos[i] = 0;
        }
        if (i == g.size()) break;
      }
    }
  return out;
}

}  // namespace

TEST_CASE("sample_run first step") {
  auto p = load("p.bp");
  auto g = make_clique(3);
  auto succ = successors(p, g, initial_labels(p, g));
  bool found = false;
  for (auto& [s, c] : succ)
    if (s.v == 0 && p.show(p.transition(s.t)) == "(qin,!!b,q4)") {
      CHECK(names(p, c) == std::vector<std::string>{"q4", "q1", "q1"});
      found = true;
    }
  CHECK(found);
}

TEST_CASE("successor corner cases") {
  auto dead = parse_protocol("protocol D\nmessages m\nstates qin x\ninit qin\ntrans x !!m x\n");
  auto g = make_line(2);
  CHECK(successors(dead, g, initial_labels(dead, g)).empty());

  auto two = parse_protocol(
      "protocol T\nmessages m\nstates qin s x y\ninit qin\ntrans s !!m s\ntrans qin ?m x\ntrans qin ?m y\n");
  Labels c{two.state("s"), two.init()};
  CHECK(successors(two, g, c).size() == 2);
  CHECK_THROWS_AS(successors(two, make_star(3), {two.state("s"), 0, 0, 0}, 7), Error);
}

TEST_CASE("successors match the naive definition") {
  gen::Rng r(0);
  for (int it = 0; it < 150; ++it) {
    auto p = gen::random_protocol(r, 2 + gen::pick(r, 4), 1 + gen::pick(r, 2), 3 + gen::pick(r, 8));
    std::vector<Topology> gs{make_line(3), make_clique(3), make_star(2), make_line(4)};
    for (const auto& g : gs) {
      Labels c(g.size());
      for (auto& q : c) q = static_cast<StateId>(gen::pick(r, p.num_states()));
      auto naive = naive_successors(p, g, c);
      std::set<std::pair<std::string, Labels>> ours;
      for (auto& [s, n] : successors(p, g, c)) {
        std::string key = std::to_string(s.v) + ":" + std::to_string(s.t);
        for (auto& [u, ri] : s.recv) key += "," + std::to_string(u) + ":" + std::to_string(ri);
        ours.insert({key, n});
        CHECK(apply_step(p, g, c, s) == n);
      }
      CHECK(ours == naive);
    }
  }
}

TEST_CASE("replay sample_run") {
  auto p = load("p.bp");
  auto g = make_clique(3);
  auto e = sample_run(p, g);
  CHECK(names(p, replay(p, g, e)) == std::vector<std::string>{"q5", "qin", "q3"});
  CHECK(replay(p, g, Execution{initial_labels(p, g), {}}) == initial_labels(p, g));
  auto bad = e;
  bad.steps.erase(bad.steps.begin() + 1);
  try {
    replay(p, g, bad);
    FAIL("replay accepted an illegal step");
  } catch (const ReplayError& err) {
    CHECK(err.index == 1);
  }
  auto missing = e;
  missing.steps[0].recv.pop_back();
  CHECK_THROWS_AS(replay(p, g, missing), ReplayError);
}

TEST_CASE("brute force") {
  auto p = load("p.bp");
  auto r = brute_force_cover(p, p.state("q5"), make_clique(3));
  REQUIRE(r.answer == Answer::Coverable);
  CHECK(r.witness.steps.size() == 3);
  CHECK(replay(p, r.topo, r.witness)[r.vertex] == p.state("q5"));
  CHECK(verdict_line(r) == "COVERABLE vertex=v1 len=3");

  auto q0 = brute_force_cover(p, p.init(), make_line(3));
  CHECK(q0.answer == Answer::Coverable);
  CHECK(q0.witness.steps.empty());

  auto iso = parse_protocol("protocol I\nmessages m\nstates qin a z\ninit qin\ntrans qin !!m a\ntrans a ?m qin\n");
  auto no = brute_force_cover(iso, iso.state("z"), make_line(3));
  CHECK(no.answer == Answer::NotCoverable);
  CHECK(verdict_line(no) == "NOT_COVERABLE");
}

TEST_CASE("depth bound and budget give unknown") {
  auto p = load("p.bp");
  SearchOptions o;
  o.max_depth = 2;
  auto r = brute_force_cover(p, p.state("q5"), make_clique(3), o);
  CHECK(r.answer == Answer::Unknown);
  o.max_depth = 3;
  CHECK(brute_force_cover(p, p.state("q5"), make_clique(3), o).answer == Answer::Coverable);
  SearchOptions b;
  b.max_configs = 3;
  CHECK(brute_force_cover(p, p.state("q5"), make_clique(3), b).answer == Answer::Unknown);
  // bounded but exhausted is still a definite no
  auto iso = parse_protocol("protocol I\nmessages m\nstates qin a z\ninit qin\ntrans qin !!m a\n");
  SearchOptions d;
  d.max_depth = 5;
  CHECK(brute_force_cover(iso, iso.state("z"), make_line(2), d).answer == Answer::NotCoverable);
}

TEST_CASE("families") {
  auto pp = load("p_prime.bp");
  auto r = brute_force_cover_family(pp, pp.state("q5"), "lines:3");
  REQUIRE(r.answer == Answer::Coverable);
  CHECK(r.topo.spec == "line:3");
  CHECK(brute_force_cover_family(pp, pp.state("q5"), "lines:2").answer == Answer::Unknown);
  CHECK(brute_force_cover_family(pp, pp.init(), "lines:3").topo.spec == "line:1");

  auto pb = load("pbar.bp");
  CHECK(brute_force_cover_family(pb, pb.state("q3"), "lines:4").answer == Answer::Unknown);
  CHECK(brute_force_cover_family(pb, pb.state("q3"), "stars:3").answer == Answer::Unknown);
  CHECK(brute_force_cover_family(pb, pb.state("q3"), "trees:2,2,5").answer == Answer::Unknown);
  CHECK_THROWS_AS(enumerate_family("rings:3"), Error);
}

TEST_CASE("tree enumeration") {
  // unlabelled rooted trees by node count: 1, 1, 2, 4, 9
  auto count = [](std::size_t m) {
    std::size_t c = 0;
    for (auto& ws : enumerate_trees(m, m, m))
      if (ws.size() == m) ++c;
    return c;
  };
  CHECK(count(1) == 1);
  CHECK(count(2) == 1);
  CHECK(count(3) == 2);
  CHECK(count(4) == 4);
  CHECK(count(5) == 9);
  for (auto& ws : enumerate_trees(2, 2, 6)) {
    auto t = make_tree(ws);
    CHECK(t.g.size() <= 6);
    CHECK(t.g.max_degree() <= 3);
  }
}

TEST_CASE("explore finds minimal witnesses") {
  auto p = load("p.bp");
  auto g = make_clique(3);
  auto cv = explore(p, g, initial_labels(p, g));
  CHECK(cv.complete);
  for (StateId q = 0; q < p.num_states(); ++q) {
    auto r = brute_force_cover(p, q, g);
    CHECK(cv.covered[q] == (r.answer == Answer::Coverable));
    if (cv.covered[q]) {
      CHECK(cv.witness[q].steps.size() == r.witness.steps.size());
      CHECK(replay(p, g, cv.witness[q])[cv.vertex[q]] == q);
    }
  }
}

TEST_CASE("trace round trip") {
  auto p = load("p.bp");
  auto g = make_clique(3);
  auto e = sample_run(p, g);
  auto text = write_trace(p, g, e);
  CHECK(text.rfind("topology clique:3\nstep v=v1 t=qin|!!b|q4 recv=v2:qin|?b|q1,v3:qin|?b|q1\n", 0) == 0);
  auto [g2, e2] = read_trace(p, text);
  CHECK(g2.spec == "clique:3");
  CHECK(e2.steps == e.steps);
  CHECK(e2.initial == e.initial);
  CHECK_THROWS_AS(read_trace(p, "topology clique:3\nstep v=v9 t=qin|!!b|q4 recv=\n"), Error);

  Execution odd{{p.state("q1"), p.init(), p.init()}, {}};
  auto [g3, e3] = read_trace(p, write_trace(p, g, odd));
  CHECK(e3.initial == odd.initial);
}

TEST_CASE("lift sample_run onto the unfolding") {
  auto p = load("p.bp");
  auto g = make_clique(3);
  auto e = sample_run(p, g);
  auto u = unfold_to_tree(g, 0, e.steps.size());
  auto lifted = lift_execution(p, g, e, u);
  CHECK(replay(p, u.tree.g, lifted)[0] == p.state("q5"));

  Execution empty{initial_labels(p, g), {}};
  auto u0 = unfold_to_tree(g, 0, 0);
  auto l0 = lift_execution(p, g, empty, u0);
  CHECK(l0.steps.empty());
  CHECK(replay(p, u0.tree.g, l0)[0] == p.init());
}

TEST_CASE("lift random executions") {
  gen::Rng r(7);
  int lifted = 0;
  for (int it = 0; it < 200; ++it) {
    auto p = gen::random_protocol(r, 3 + gen::pick(r, 3), 2, 6 + gen::pick(r, 6));
    std::vector<Topology> gs{make_line(3), make_clique(3), make_clique(4)};
    const auto& g = gs[gen::pick(r, gs.size())];
    Execution e{initial_labels(p, g), {}};
    Labels c = e.initial;
    for (int k = 0; k < 4; ++k) {
      auto s = successors(p, g, c);
      if (s.empty()) break;
      auto& [st, n] = s[gen::pick(r, s.size())];
      e.steps.push_back(st);
      c = n;
    }
    for (VertexId vf = 0; vf < g.size(); ++vf) {
      auto u = unfold_to_tree(g, vf, e.steps.size());
      auto l = lift_execution(p, g, e, u);
      CHECK(replay(p, u.tree.g, l)[0] == c[vf]);
      ++lifted;
    }
  }
  CHECK(lifted > 0);
}

TEST_CASE("adding leaves never loses coverage on stars") {
  gen::Rng r(3);
  for (int it = 0; it < 40; ++it) {
    auto p = gen::random_pb_protocol(r, 1, 4, 2, 7);
    for (StateId q = 0; q < p.num_states(); ++q) {
      bool before = false;
      for (std::size_t n = 0; n <= 3; ++n) {
        bool now = brute_force_cover(p, q, make_star(n)).answer == Answer::Coverable;
        CHECK((!before || now));
        before = now;
      }
    }
  }
}
