#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"
#include "util.hpp"
#include "bcast/star_cover.hpp"

using namespace bcast;

TEST_CASE("broadcast prints") {
  auto p = load("pstar.bp");
  auto pp = require_phase_bound(p, 1);
  auto g = make_star(3);
  auto b = bprint(g, initial_labels(p, g), pp);
  REQUIRE(b);
  CHECK(show(p, *b) == "(qin,{qin})");
  auto one = make_star(0);
  CHECK(show(p, *bprint(one, initial_labels(p, one), pp)) == "(qin,{})");

  auto g4 = make_star(4);
  auto q = [&](const char* n) { return p.state(n); };
  Labels c1{q("q1"), q("qin"), q("q5"), q("q1"), q("q2")};
  Labels c2{q("q1"), q("qin"), q("q1"), q("q1"), q("q2")};
  CHECK(show(p, *bprint(g4, c1, pp)) == "(q1,{qin,q1,q2})");
  CHECK(*bprint(g4, c1, pp) == *bprint(g4, c2, pp));
  Labels off{q("q5"), q("qin"), q("qin"), q("qin"), q("qin")};
  CHECK_FALSE(bprint(g4, off, pp));
  CHECK_THROWS_AS(bprint(make_line(3), Labels(3, p.init()), pp), Error);
}

TEST_CASE("print successor rules") {
  auto p = parse_protocol(
      "protocol S\nmessages m\nstates qin a u x\ninit qin\ntrans qin tau a\ntrans a !!m a\ntrans u ?m x\n");
  auto q = [&](const char* n) { return p.state(n); };
  auto s = print_successors({q("qin"), {q("u")}}, p);
  CHECK(std::find(s.begin(), s.end(), BroadcastPrint{q("a"), {q("u")}}) != s.end());
  auto s2 = print_successors({q("a"), {q("u")}}, p);
  CHECK(std::find(s2.begin(), s2.end(), BroadcastPrint{q("a"), {}}) != s2.end());
}

TEST_CASE("print successors match stars") {
  gen::Rng r(5);
  for (int it = 0; it < 30; ++it) {
    auto p = gen::random_pb_protocol(r, 1, 4, 2, 7);
    auto pp = require_phase_bound(p, 1);
    for (auto& pr : oracle::all_prints(p, pp)) CHECK(print_successors(pr, p) == oracle::star_print_successors(p, pp, pr, 3));
  }
}

TEST_CASE("reachable prints") {
  auto e = parse_protocol("protocol E\nmessages\nstates qin\ninit qin\n");
  auto g = reachable_prints(e);
  CHECK(g.prints.size() == 2);

  auto p = load("pstar.bp");
  auto pp = require_phase_bound(p, 1);
  auto rp = reachable_prints(p);
  auto q = [&](const char* n) { return p.state(n); };
  CHECK(rp.index.count({q("q1"), {q("qin"), q("q1"), q("q2")}}));
  std::size_t qb = 0;
  for (StateId s = 0; s < p.num_states(); ++s) qb += pp.in_qb(s);
  CHECK(rp.prints.size() <= qb << qb);
  // every reachable print is the print of a reachable star configuration
  auto seen = oracle::star_reachable_prints(p, pp, 4);
  std::set<BroadcastPrint> ours(rp.prints.begin(), rp.prints.end());
  CHECK(ours == seen);
}

TEST_CASE("reachable prints agree with stars") {
  gen::Rng r(9);
  for (int it = 0; it < 25; ++it) {
    auto p = gen::random_pb_protocol(r, 1, 4, 2, 6);
    auto pp = require_phase_bound(p, 1);
    auto rp = reachable_prints(p);
    std::set<BroadcastPrint> ours(rp.prints.begin(), rp.prints.end());
    CHECK(ours == oracle::star_reachable_prints(p, pp, 4));
  }
}

TEST_CASE("vass from print shape") {
  auto e = parse_protocol("protocol E\nmessages\nstates qin a\ninit qin\n");
  auto pp = require_phase_bound(e, 1);
  auto pv = vass_from_print(e, pp, 1, {0, {0}});
  CHECK(pv.v.num_states() == 2 + 0 + 1);
  CHECK(pv.v.transitions().size() == 2);

  auto p = load("pstar.bp");
  auto pp5 = require_phase_bound(p, 1);
  auto v5 = vass_from_print(p, pp5, p.state("q4"), {p.init(), {}});
  CHECK(v5.v.num_states() == p.num_states() * (1 + p.transitions().size()) + 1);
}

TEST_CASE("one shared backward pass equals a reachability query per print") {
  gen::Rng r(13);
  for (int it = 0; it < 20; ++it) {
    auto p = gen::random_pb_protocol(r, 1, 4, 2, 7);
    auto pp = require_phase_bound(p, 1);
    auto rp = reachable_prints(p);
    for (StateId t = 0; t < p.num_states(); ++t) {
      bool any = false;
      for (auto& pr : rp.prints) {
        auto pv = vass_from_print(p, pp, t, pr);
        auto res = vass_control_reach(pv.v, pv.init, pv.goal);
        REQUIRE(res.answer != Reach::Unknown);
        if (res.answer == Reach::Yes) {
          any = true;
          auto end = vass_replay(pv.v, pv.init, res.path);
          REQUIRE(end);
          CHECK(end->state == pv.goal);
        }
      }
      auto c = cover_1pb(p, t);
      CHECK((c.answer == Answer::Coverable) == any);
    }
  }
}

TEST_CASE("cover 1pb witnesses") {
  auto p = load("pstar.bp");
  for (StateId t = 0; t < p.num_states(); ++t) {
    auto r = cover_1pb(p, t);
    auto b = brute_force_cover_family(p, t, "stars:4");
    if (b.answer == Answer::Coverable) CHECK(r.answer == Answer::Coverable);
    if (r.answer == Answer::Coverable) CHECK(replay(p, r.topo, r.witness)[0] == t);
  }
  CHECK(cover_1pb(p, p.init()).answer == Answer::Coverable);
  CHECK(cover_1pb(p, p.init()).witness.steps.empty());
  CHECK_THROWS_AS(cover_1pb(load("p_prime.bp"), 0), Error);
}

TEST_CASE("cover 1pb against stars on random protocols") {
  gen::Rng r(17);
  for (int it = 0; it < 60; ++it) {
    auto p = gen::random_pb_protocol(r, 1, 4 + gen::pick(r, 2), 2, 8);
    for (StateId t = 0; t < p.num_states(); ++t) {
      auto c = cover_1pb(p, t);
      REQUIRE(c.answer != Answer::Unknown);
      if (c.answer == Answer::Coverable) {
        auto end = replay(p, c.topo, c.witness);
        CHECK(end[0] == t);
      }
      auto b = brute_force_cover_family(p, t, "stars:4");
      if (b.answer == Answer::Coverable) CHECK(c.answer == Answer::Coverable);
    }
  }
}

TEST_CASE("pbar one-unfolding never covers q3") {
  auto u = k_unfold(load("pbar.bp"), 1);
  for (const char* n : {"q3^0", "q3^b,1", "q3^r,1"}) CHECK(cover_1pb(u, u.state(n)).answer == Answer::NotCoverable);
}

TEST_CASE("vass to protocol") {
  auto yes = parse_vass(slurp(std::string(DATA_DIR) + "/yes.vass"));
  auto no = parse_vass(slurp(std::string(DATA_DIR) + "/no.vass"));
  for (auto* v : {&yes, &no}) {
    std::uint32_t target = 0;
    auto p = protocol_from_vass(*v, v->init(), v->state("sf"), &target);
    CHECK(p.num_states() == v->num_states() + 2 * v->num_counters() + 2);
    auto pp = infer_phase_partition(p);
    REQUIRE(pp);
    CHECK(pp->k <= 1);
    VassConfig c{v->init(), std::vector<std::uint64_t>(v->num_counters(), 0)};
    auto want = vass_control_reach(*v, c, v->state("sf")).answer == Reach::Yes;
    CHECK(want == (v == &yes));
    auto got = cover_1pb(p, target);
    CHECK((got.answer == Answer::Coverable) == want);
    if (want) CHECK(replay(p, got.topo, got.witness)[0] == target);
  }
}
