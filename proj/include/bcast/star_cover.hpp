#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "line_cover.hpp"
#include "protocol.hpp"
#include "semantics.hpp"
#include "vass.hpp"

namespace bcast {

struct BroadcastPrint {
  StateId root = 0;
  std::vector<StateId> leaves;  // sorted, each in Qb
  auto operator<=>(const BroadcastPrint&) const = default;
};

inline std::string show(const Protocol& p, const BroadcastPrint& b) {
  std::string r = "(" + p.state_name(b.root) + ",{";
  for (std::size_t i = 0; i < b.leaves.size(); ++i) r += (i ? "," : "") + p.state_name(b.leaves[i]);
  return r + "})";
}

inline bool is_star(const Topology& g) {
  for (VertexId v = 1; v < g.size(); ++v)
    if (g.neighbors(v).size() != 1 || g.neighbors(v)[0] != 0) return false;
  return g.size() == 0 || g.neighbors(0).size() + 1 == g.size();
}

// nullopt when the root has left Qb
inline std::optional<BroadcastPrint> bprint(const Topology& g, const Labels& c, const PhasePartition& pp) {
  if (!is_star(g)) throw Error("broadcast print needs a star topology");
  if (!pp.in_qb(c[0])) return std::nullopt;
  BroadcastPrint b{c[0], {}};
  for (VertexId v = 1; v < g.size(); ++v)
    if (pp.in_qb(c[v])) b.leaves.push_back(c[v]);
  std::sort(b.leaves.begin(), b.leaves.end());
  b.leaves.erase(std::unique(b.leaves.begin(), b.leaves.end()), b.leaves.end());
  return b;
}

enum class MoveKind : std::uint8_t { RootTau, RootSend, Leaf };

struct PrintMove {
  MoveKind kind;
  std::uint32_t t;
  bool keep = true;  // Leaf: some leaves stay in the source state
};

namespace detail {

inline std::vector<StateId> with(std::vector<StateId> s, StateId q) {
  auto it = std::lower_bound(s.begin(), s.end(), q);
  if (it == s.end() || *it != q) s.insert(it, q);
  return s;
}
inline std::vector<StateId> without(std::vector<StateId> s, StateId q) {
  s.erase(std::remove(s.begin(), s.end(), q), s.end());
  return s;
}

}  // namespace detail

inline std::vector<std::pair<PrintMove, BroadcastPrint>> print_moves(const BroadcastPrint& pr, const Protocol& p) {
  std::vector<std::pair<PrintMove, BroadcastPrint>> out;
  for (auto ti : p.out(pr.root)) {
    const auto& t = p.transition(ti);
    if (t.kind == Kind::Tau) out.push_back({{MoveKind::RootTau, ti}, {t.dst, pr.leaves}});
    if (t.kind == Kind::Send) {
      BroadcastPrint n{t.dst, {}};
      for (auto q : pr.leaves)
        if (!p.receives(q, t.msg)) n.leaves.push_back(q);
      out.push_back({{MoveKind::RootSend, ti}, n});
    }
  }
  for (auto q : pr.leaves)
    for (auto ti : p.out(q)) {
      const auto& t = p.transition(ti);
      if (t.kind == Kind::Recv) continue;
      if (t.kind == Kind::Send && p.receives(pr.root, t.msg)) continue;
      out.push_back({{MoveKind::Leaf, ti, true}, {pr.root, detail::with(pr.leaves, t.dst)}});
      out.push_back({{MoveKind::Leaf, ti, false}, {pr.root, detail::with(detail::without(pr.leaves, q), t.dst)}});
    }
  return out;
}

inline std::vector<BroadcastPrint> print_successors(const BroadcastPrint& pr, const Protocol& p) {
  std::set<BroadcastPrint> s;
  for (auto& [m, n] : print_moves(pr, p)) s.insert(n);
  return {s.begin(), s.end()};
}

struct PrintGraph {
  std::vector<BroadcastPrint> prints;  // discovery order
  std::vector<std::uint32_t> parent;   // none for the two initial prints
  std::vector<PrintMove> move;         // move from parent
  std::map<BroadcastPrint, std::uint32_t> index;
  bool complete = true;
};

inline PrintGraph reachable_prints(const Protocol& p, std::size_t budget = 1u << 20) {
  PrintGraph g;
  auto add = [&](const BroadcastPrint& b, std::uint32_t par, PrintMove mv) {
    if (g.index.count(b)) return;
    g.index.emplace(b, static_cast<std::uint32_t>(g.prints.size()));
    g.prints.push_back(b);
    g.parent.push_back(par);
    g.move.push_back(mv);
  };
  add({p.init(), {}}, none, {});
  add({p.init(), {p.init()}}, none, {});
  for (std::uint32_t i = 0; i < g.prints.size(); ++i) {
    if (g.prints.size() >= budget) {
      g.complete = false;
      break;
    }
    auto cur = g.prints[i];
    for (auto& [m, n] : print_moves(cur, p)) add(n, i, m);
  }
  return g;
}

// ---- VASS for the phase after the last b-configuration

namespace tag {
enum : std::uint8_t { Pump = 1, Enter, RootTau, LeafTau, LeafSendRecv, LeafSendSilent, Settle };
inline std::uint64_t make(std::uint8_t k, std::uint32_t d = 0, std::uint32_t r = 0) {
  return k | (std::uint64_t(d) << 8) | (std::uint64_t(r) << 36);
}
inline std::uint8_t kind(std::uint64_t t) { return t & 0xff; }
inline std::uint32_t delta(std::uint64_t t) { return (t >> 8) & 0xfffffff; }
inline std::uint32_t recv(std::uint64_t t) { return static_cast<std::uint32_t>(t >> 36); }
}  // namespace tag

struct PrintVass {
  Vass v;
  VassConfig init;
  std::uint32_t goal = 0;
  std::uint32_t s_in = 0;
  std::vector<std::uint32_t> counter;  // protocol state -> counter, none outside Qb
  std::vector<StateId> counter_state;
};

inline PrintVass vass_from_print(const Protocol& p, const PhasePartition& pp, StateId target, const BroadcastPrint& pr) {
  PrintVass r;
  auto& v = r.v;
  v.name = p.name + "_vass";
  const auto nq = static_cast<StateId>(p.num_states());
  const auto nd = static_cast<std::uint32_t>(p.transitions().size());
  r.counter.assign(nq, none);
  for (StateId q = 0; q < nq; ++q)
    if (pp.in_qb(q)) {
      r.counter[q] = v.add_counter(p.state_name(q));
      r.counter_state.push_back(q);
    }
  for (StateId q = 0; q < nq; ++q) v.add_state(p.state_name(q));
  auto pair = [&](StateId q, std::uint32_t d) { return nq + q * nd + d; };
  for (StateId q = 0; q < nq; ++q)
    for (std::uint32_t d = 0; d < nd; ++d) v.add_state("(" + p.state_name(q) + "," + std::to_string(d) + ")");
  std::string sin = "s_in";
  while (v.find_state(sin)) sin += "'";
  r.s_in = v.add_state(sin);
  v.set_init(r.s_in);
  auto add = [&](std::uint32_t s, VOp op, std::uint32_t x, std::uint32_t d, std::uint64_t tg) {
    v.add_transition({s, op, x, d, tg});
  };
  for (auto q : pr.leaves) add(r.s_in, VOp::Inc, r.counter.at(q), r.s_in, tag::make(tag::Pump));
  add(r.s_in, VOp::Skip, 0, pr.root, tag::make(tag::Enter));
  std::vector<char> settled(std::size_t(nq) * nd, 0);
  auto leaf = [&](StateId from, std::uint32_t d, StateId to, std::uint64_t tg) {
    const auto& t = p.transition(d);
    if (r.counter[t.src] == none || r.counter[t.dst] == none) return;
    add(from, VOp::Dec, r.counter[t.src], pair(to, d), tg);
    if (!settled[to * nd + d]) {
      settled[to * nd + d] = 1;
      add(pair(to, d), VOp::Inc, r.counter[t.dst], to, tag::make(tag::Settle, d));
    }
  };
  for (std::uint32_t d = 0; d < nd; ++d) {
    const auto& t = p.transition(d);
    if (t.kind == Kind::Tau) {
      add(t.src, VOp::Skip, 0, t.dst, tag::make(tag::RootTau, d));
      for (StateId q = 0; q < nq; ++q) leaf(q, d, q, tag::make(tag::LeafTau, d));
    } else if (t.kind == Kind::Send) {
      for (StateId q = 0; q < nq; ++q) {
        if (!p.receives(q, t.msg)) {
          leaf(q, d, q, tag::make(tag::LeafSendSilent, d));
          continue;
        }
        for (auto ri : p.receptions(q, t.msg)) leaf(q, d, p.transition(ri).dst, tag::make(tag::LeafSendRecv, d, ri));
      }
    }
  }
  r.init = {r.s_in, std::vector<std::uint64_t>(v.num_counters(), 0)};
  r.goal = target;
  return r;
}

// ---- Cover for 1-phase-bounded protocols

namespace detail {

inline Step broadcast_step(const Protocol& p, const Topology& g, const Labels& c, VertexId v, std::uint32_t ti,
                           std::uint32_t forced_root = none) {
  Step s{v, ti, {}};
  const auto& t = p.transition(ti);
  if (t.kind == Kind::Send)
    for (auto u : g.neighbors(v))
      if (p.receives(c[u], t.msg)) s.recv.emplace_back(u, u == 0 && forced_root != none ? forced_root : p.receptions(c[u], t.msg)[0]);
  return s;
}

}  // namespace detail

struct Cover1pbOptions {
  std::size_t print_budget = 1u << 20;
  std::size_t vass_budget = 1u << 20;
};

inline CoverVerdict cover_1pb(const Protocol& p, StateId target, const Cover1pbOptions& opt = {}) {
  auto pp = require_phase_bound(p, 1);
  auto graph = reachable_prints(p, opt.print_budget);
  // the VASS part is the same for every print; only the s_in pumping differs
  auto core = vass_from_print(p, pp, target, {p.init(), {}});
  Backward back(core.v, core.goal, opt.vass_budget);

  std::vector<std::uint32_t> order(graph.prints.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return graph.prints[a] < graph.prints[b]; });

  CoverVerdict res;
  for (auto pi : order) {
    const auto& pr = graph.prints[pi];
    std::vector<std::uint64_t> nu(core.v.num_counters(), 0);
    for (auto q : pr.leaves) nu[core.counter[q]] = ~std::uint64_t{0} >> 1;
    auto hit = back.covered(pr.root, nu);
    if (!hit) continue;

    // demand per state walking the print path backwards
    const auto& need = back.elem(*hit).need;
    std::vector<std::uint64_t> demand(p.num_states(), 0);
    for (std::size_t x = 0; x < need.size(); ++x) demand[core.counter_state[x]] = need[x];
    std::vector<std::uint32_t> chain;
    for (auto i = pi; i != none; i = graph.parent[i]) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    std::vector<std::vector<std::uint64_t>> after(chain.size());
    after.back() = demand;
    for (std::size_t k = chain.size() - 1; k > 0; --k) {
      auto d = after[k];
      const auto& mv = graph.move[chain[k]];
      if (mv.kind == MoveKind::Leaf) {
        const auto& t = p.transition(mv.t);
        if (t.src != t.dst) {
          d[t.src] += d[t.dst];
          d[t.dst] = 0;
        }
      }
      after[k - 1] = d;
    }
    std::size_t leaves = after[0][p.init()];
    TreeTopology star = make_star_tree(leaves);
    const auto& g = star.g;
    Execution e{initial_labels(p, g), {}};
    Labels c = e.initial;
    auto push = [&](Step s) {
      c = apply_step(p, g, c, s, e.steps.size());
      e.steps.push_back(std::move(s));
    };
    auto leaves_in = [&](StateId q, std::uint64_t n) {
      std::vector<VertexId> r;
      for (VertexId v = 1; v < g.size() && r.size() < n; ++v)
        if (c[v] == q) r.push_back(v);
      if (r.size() < n) throw Error("internal: not enough leaves in " + p.state_name(q));
      return r;
    };
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const auto& mv = graph.move[chain[k]];
      const auto& t = p.transition(mv.t);
      if (mv.kind != MoveKind::Leaf) {
        push(detail::broadcast_step(p, g, c, 0, mv.t));
      } else if (t.src != t.dst) {
        for (auto v : leaves_in(t.src, after[k][t.dst])) push(detail::broadcast_step(p, g, c, v, mv.t));
      }
    }
    for (auto ti : back.path_from(*hit)) {
      auto tg = core.v.transitions()[ti].tag;
      auto d = tag::delta(tg);
      switch (tag::kind(tg)) {
        case tag::RootTau: push(detail::broadcast_step(p, g, c, 0, d)); break;
        case tag::LeafTau:
        case tag::LeafSendSilent:
          push(detail::broadcast_step(p, g, c, leaves_in(p.transition(d).src, 1)[0], d));
          break;
        case tag::LeafSendRecv:
          push(detail::broadcast_step(p, g, c, leaves_in(p.transition(d).src, 1)[0], d, tag::recv(tg)));
          break;
        default: break;
      }
    }
    if (c[0] != target) throw Error("internal: star witness does not reach the target");
    res.answer = Answer::Coverable;
    res.topo = g;
    res.witness = std::move(e);
    res.vertex = 0;
    res.info = "print=" + show(p, pr);
    return res;
  }
  res.answer = graph.complete && back.complete() ? Answer::NotCoverable : Answer::Unknown;
  if (!graph.complete) res.info = "print budget exhausted";
  else if (!back.complete()) res.info = "vass budget exhausted";
  return res;
}

// ---- VASS -> protocol

inline Protocol protocol_from_vass(const Vass& v, std::uint32_t s_in, std::uint32_t s_f, std::uint32_t* target = nullptr) {
  Protocol p;
  p.name = v.name + "_proto";
  const bool counters = v.num_counters() > 0;
  if (counters) p.add_message("start");
  for (auto& x : v.counters()) {
    p.add_message("inc_" + x);
    p.add_message("dec_" + x);
  }
  p.set_init(p.add_state("qin"));
  p.add_state("err");
  for (auto& s : v.states()) p.add_state("s_" + s);
  for (auto& x : v.counters()) {
    p.add_state("c_" + x + "_0");
    p.add_state("c_" + x + "_1");
  }
  auto S = [&](std::uint32_t s) { return "s_" + v.states()[s]; };
  if (!counters) p.add("qin", Kind::Tau, "", S(s_in));
  for (auto& x : v.counters()) {
    p.add("qin", Kind::Send, "start", "c_" + x + "_0");
    p.add("c_" + x + "_0", Kind::Send, "inc_" + x, "c_" + x + "_1");
    p.add("c_" + x + "_1", Kind::Send, "dec_" + x, "c_" + x + "_0");
  }
  if (counters) p.add("qin", Kind::Recv, "start", S(s_in));
  for (auto& x : v.counters()) {
    p.add("qin", Kind::Recv, "inc_" + x, "err");
    p.add("qin", Kind::Recv, "dec_" + x, "err");
  }
  for (const auto& t : v.transitions()) {
    if (t.op == VOp::Skip) {
      if (!p.find_transition({p.state(S(t.src)), Kind::Tau, none, p.state(S(t.dst))})) p.add(S(t.src), Kind::Tau, "", S(t.dst));
      continue;
    }
    auto m = (t.op == VOp::Inc ? "inc_" : "dec_") + v.counters()[t.x];
    if (!p.find_transition({p.state(S(t.src)), Kind::Recv, p.msg(m), p.state(S(t.dst))})) p.add(S(t.src), Kind::Recv, m, S(t.dst));
  }
  for (std::uint32_t s = 0; s < v.num_states(); ++s)
    for (std::uint32_t x = 0; x < v.num_counters(); ++x)
      for (VOp op : {VOp::Inc, VOp::Dec}) {
        bool has = false;
        for (const auto& t : v.transitions()) has |= t.src == s && t.op == op && t.x == x;
        if (!has) p.add(S(s), Kind::Recv, (op == VOp::Inc ? "inc_" : "dec_") + v.counters()[x], "err");
      }
  if (target) *target = p.state(S(s_f));
  return p;
}

}  // namespace bcast
