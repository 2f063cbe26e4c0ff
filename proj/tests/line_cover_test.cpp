#include "doctest.h"
#include "gen.hpp"
#include "util.hpp"
#include "bcast/line_cover.hpp"

#include <set>

using namespace bcast;

TEST_CASE("pair fixpoint") {
  auto p = load("p_prime.bp");
  auto s = compute_S(p);
  auto q = [&](const char* n) { return p.state(n); };
  CHECK(s.has(q("qin"), q("qin")));
  CHECK(s.has(q("q1"), q("q4")));
  auto h = compute_H(s, *infer_phase_partition(p));
  CHECK(std::find(h.begin(), h.end(), q("qin")) != h.end());
  CHECK(std::find(h.begin(), h.end(), q("q1")) != h.end());
  CHECK(s.rounds <= p.num_states() * p.num_states());

  auto e = parse_protocol("protocol E\nmessages\nstates qin\ninit qin\n");
  auto se = compute_S(e);
  CHECK(se.size() == 1);
  CHECK(compute_H(se, *infer_phase_partition(e)) == std::vector<StateId>{0});
}

TEST_CASE("pair fixpoint by hand") {
  // qin !!a x, qin ?a y, y tau z
  auto p = parse_protocol(
      "protocol H\nmessages a\nstates qin x y z\ninit qin\ntrans qin !!a x\ntrans qin ?a y\ntrans y tau z\n");
  auto s = compute_S(p);
  std::set<std::pair<std::string, std::string>> got;
  for (StateId a = 0; a < s.n; ++a)
    for (StateId b = 0; b < s.n; ++b)
      if (s.has(a, b)) got.insert({p.state_name(a), p.state_name(b)});
  // (y,x) matched send/receive, (z,x) tau, (qin,y) reset, (qin,z) tau; a silent send is blocked since qin receives a
  std::set<std::pair<std::string, std::string>> want{{"qin", "qin"}, {"y", "x"}, {"z", "x"}, {"qin", "y"}, {"qin", "z"}};
  CHECK(got == want);
}

TEST_CASE("fixpoint grows monotonically") {
  gen::Rng r(11);
  for (int it = 0; it < 50; ++it) {
    auto p = gen::random_pb_protocol(r, 2, 5, 3, 8);
    PairSet s{p.num_states(), std::vector<char>(p.num_states() * p.num_states(), 0), 0};
    s.in[p.init() * s.n + p.init()] = 1;
    std::size_t rounds = 0;
    while (true) {
      auto nx = pair_step(p, s);
      for (std::size_t i = 0; i < s.in.size(); ++i) CHECK((!s.in[i] || nx.in[i]));
      if (nx.in == s.in) break;
      s = nx;
      ++rounds;
    }
    CHECK(rounds <= p.num_states() * p.num_states());
    CHECK(rounds == compute_S(p).rounds);
    auto pp = infer_phase_partition(p);
    REQUIRE(pp);
    CHECK_NOTHROW(compute_H(s, *pp));
  }
}

TEST_CASE("cover lines") {
  auto p = load("p_prime.bp");
  auto r = cover_lines(p, p.state("q5"));
  REQUIRE(r.answer == Answer::Coverable);
  CHECK(r.info.rfind("pair=", 0) == 0);
  CHECK(replay(p, r.topo, r.witness)[r.vertex] == p.state("q5"));

  CHECK(cover_lines(p, p.init()).answer == Answer::Coverable);
  CHECK(cover_lines(p, p.init()).info == "pair=qin,qin");

  auto dead = parse_protocol(
      "protocol Pd\nmessages a b c\nstates qin q1 q2 q3 q4 q5 q_dead\ninit qin\n"
      "trans qin !!a q4\ntrans qin !!b q4\ntrans q4 ?c q5\ntrans qin ?b q1\ntrans q1 ?a q2\n"
      "trans q2 !!c q3\ntrans q3 ?a q5\n");
  CHECK(cover_lines(dead, dead.state("q_dead")).answer == Answer::NotCoverable);

  auto full = load("p.bp");
  CHECK_THROWS_AS(cover_lines(full, full.state("q5")), Error);
}
