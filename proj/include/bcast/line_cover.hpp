#pragma once

#include <string>
#include <vector>

#include "protocol.hpp"
#include "semantics.hpp"

namespace bcast {

struct PairSet {
  std::size_t n = 0;
  std::vector<char> in;    // n*n
  std::size_t rounds = 0;  // iterations until the fixpoint
  bool has(StateId a, StateId b) const { return in[a * n + b]; }
  std::size_t size() const { return static_cast<std::size_t>(std::count(in.begin(), in.end(), 1)); }
};

// One round S_i -> S_{i+1}; reads only from cur.
inline PairSet pair_step(const Protocol& p, const PairSet& cur) {
  PairSet nx = cur;
  const std::size_t n = cur.n;
  auto add = [&](StateId a, StateId b) { nx.in[a * n + b] = 1; };
  for (StateId a = 0; a < n; ++a)
    for (StateId b = 0; b < n; ++b) {
      if (!cur.has(a, b)) continue;
      add(p.init(), a);
      for (auto ti : p.out(a))
        if (p.transition(ti).kind == Kind::Tau) add(p.transition(ti).dst, b);
      for (auto ti : p.out(b)) {
        const auto& t = p.transition(ti);
        if (t.kind == Kind::Tau) add(a, t.dst);
        if (t.kind != Kind::Send) continue;
        if (!p.receives(a, t.msg)) add(a, t.dst);
        for (auto ri : p.receptions(a, t.msg)) add(p.transition(ri).dst, t.dst);
      }
    }
  return nx;
}

inline PairSet compute_S(const Protocol& p) {
  PairSet s{p.num_states(), std::vector<char>(p.num_states() * p.num_states(), 0), 0};
  s.in[p.init() * s.n + p.init()] = 1;
  while (true) {
    auto nx = pair_step(p, s);
    if (nx.in == s.in) return s;
    nx.rounds = s.rounds + 1;
    s = std::move(nx);
  }
}

inline std::vector<StateId> compute_H(const PairSet& s, const PhasePartition& pp) {
  std::vector<StateId> h;
  for (StateId a = 0; a < s.n; ++a)
    for (StateId b = 0; b < s.n; ++b)
      if (s.has(a, b)) {
        h.push_back(a);
        break;
      }
  for (auto q : h) {
    auto l = pp.label[q];
    if (!(l.i == 0 || (l.i == 1 && l.r))) throw Error("internal: H contains a state outside Q0 and Q1r");
  }
  return h;
}

inline PhasePartition require_phase_bound(const Protocol& p, unsigned kmax) {
  auto pp = infer_phase_partition(p);
  if (!pp || pp->k > kmax)
    throw Error("protocol is not " + std::to_string(kmax) + "-phase-bounded" +
                (pp ? " (k=" + std::to_string(pp->k) + ")" : ""));
  return *pp;
}

// Cover over all lines for protocols with k <= 2: explore the five-vertex line from each
// (q1, qin, qin, qin, q2) with q1, q2 in H, accepting the target at any vertex.
inline CoverVerdict cover_lines(const Protocol& p, StateId target, const SearchOptions& opt = {}) {
  auto pp = require_phase_bound(p, 2);
  auto h = compute_H(compute_S(p), pp);
  Topology g5 = make_line(5);
  CoverVerdict last;
  last.answer = Answer::NotCoverable;
  last.topo = g5;
  bool unknown = false;
  for (auto q1 : h)
    for (auto q2 : h) {
      Labels init{q1, p.init(), p.init(), p.init(), q2};
      auto r = cover_from(p, {target}, g5, init, opt);
      if (r.answer == Answer::Coverable) {
        r.info = "pair=" + p.state_name(q1) + "," + p.state_name(q2);
        return r;
      }
      if (r.answer == Answer::Unknown) unknown = true;
    }
  if (unknown) last.answer = Answer::Unknown;
  return last;
}

}  // namespace bcast
