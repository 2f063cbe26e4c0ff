#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "protocol.hpp"
#include "semantics.hpp"
#include "topology.hpp"

namespace bcast {

enum class MOp : std::uint8_t { Inc, Dec, Test0 };

struct MTrans {
  std::uint32_t src = 0;
  MOp op = MOp::Inc;
  std::uint32_t x = 0;  // 0 for x1, 1 for x2
  std::uint32_t dst = 0;
};

struct MinskyMachine {
  std::string name = "M";
  std::vector<std::string> locs;
  std::vector<MTrans> trans;
  std::uint32_t init = 0, final = 0;

  std::uint32_t loc(const std::string& l) {
    for (std::uint32_t i = 0; i < locs.size(); ++i)
      if (locs[i] == l) return i;
    if (!is_ident(l)) throw Error("bad location name '" + l + "'");
    locs.push_back(l);
    return static_cast<std::uint32_t>(locs.size() - 1);
  }
};

inline const char* op_name(MOp o) { return o == MOp::Inc ? "inc" : o == MOp::Dec ? "dec" : "test0"; }

inline MinskyMachine parse_minsky(std::string_view src) {
  MinskyMachine m;
  bool have_name = false;
  std::optional<Token> init, final;
  std::vector<const Line*> trans;
  auto lines = tokenize(src);
  for (const auto& l : lines) {
    const auto& kw = l.toks[0].text;
    if (kw == "minsky" && l.toks.size() == 2 && !have_name) {
      m.name = l.toks[1].text;
      have_name = true;
    } else if (kw == "init" && l.toks.size() == 2 && !init) {
      init = l.toks[1];
    } else if (kw == "final" && l.toks.size() == 2 && !final) {
      final = l.toks[1];
    } else if (kw == "trans" && l.toks.size() == 5) {
      trans.push_back(&l);
    } else {
      throw Error("unexpected line '" + kw + "'", l.no, l.toks[0].col);
    }
  }
  if (!have_name) throw Error("missing minsky header");
  if (!init) throw Error("missing init");
  if (!final) throw Error("missing final");
  auto loc = [&](const Token& t, std::size_t no) {
    try {
      return m.loc(t.text);
    } catch (const Error& e) {
      throw Error(e.what(), no, t.col);
    }
  };
  for (const auto& l : lines)
    if (l.toks[0].text == "init") m.init = loc(l.toks[1], l.no);
  for (const auto& l : lines)
    if (l.toks[0].text == "final") m.final = loc(l.toks[1], l.no);
  for (const Line* l : trans) {
    const auto& t = l->toks;
    MTrans tr;
    tr.src = loc(t[1], l->no);
    if (t[2].text == "inc") tr.op = MOp::Inc;
    else if (t[2].text == "dec") tr.op = MOp::Dec;
    else if (t[2].text == "test0") tr.op = MOp::Test0;
    else throw Error("bad operation '" + t[2].text + "'", l->no, t[2].col);
    if (t[3].text == "x1") tr.x = 0;
    else if (t[3].text == "x2") tr.x = 1;
    else throw Error("counter must be x1 or x2", l->no, t[3].col);
    tr.dst = loc(t[4], l->no);
    m.trans.push_back(tr);
  }
  return m;
}

inline std::string print_minsky(const MinskyMachine& m) {
  std::string r = "minsky " + m.name + "\ninit " + m.locs[m.init] + "\nfinal " + m.locs[m.final] + "\n";
  for (const auto& t : m.trans)
    r += "trans " + m.locs[t.src] + " " + op_name(t.op) + " x" + std::to_string(t.x + 1) + " " + m.locs[t.dst] + "\n";
  return r;
}

struct MinskyConfig {
  std::uint32_t loc = 0;
  std::array<std::uint64_t, 2> x{0, 0};
  friend bool operator==(const MinskyConfig&, const MinskyConfig&) = default;
};

using MinskyRun = std::vector<std::uint32_t>;  // transition indices

struct MinskyError : Error {
  std::size_t index;
  MinskyError(std::size_t i, const std::string& why) : Error("illegal step " + std::to_string(i) + ": " + why), index(i) {}
};

inline MinskyConfig minsky_step(const MinskyMachine& m, const MinskyConfig& c, std::uint32_t ti, std::size_t idx = 0) {
  if (ti >= m.trans.size()) throw MinskyError(idx, "no such transition");
  const auto& t = m.trans[ti];
  if (t.src != c.loc) throw MinskyError(idx, "machine is in " + m.locs[c.loc] + ", not " + m.locs[t.src]);
  MinskyConfig n = c;
  n.loc = t.dst;
  if (t.op == MOp::Inc) ++n.x[t.x];
  if (t.op == MOp::Dec) {
    if (c.x[t.x] == 0) throw MinskyError(idx, "dec on x" + std::to_string(t.x + 1) + "=0");
    --n.x[t.x];
  }
  if (t.op == MOp::Test0 && c.x[t.x] != 0) throw MinskyError(idx, "test0 on x" + std::to_string(t.x + 1) + "!=0");
  return n;
}

inline MinskyConfig simulate_minsky(const MinskyMachine& m, const MinskyRun& run) {
  MinskyConfig c{m.init, {0, 0}};
  for (std::size_t i = 0; i < run.size(); ++i) c = minsky_step(m, c, run[i], i);
  return c;
}

// Shortest run reaching (final,0,0) with counters kept <= bound.
inline std::optional<MinskyRun> find_halting_run(const MinskyMachine& m, std::uint64_t bound) {
  using Key = std::array<std::uint64_t, 3>;
  std::map<Key, std::pair<Key, std::uint32_t>> par;
  Key s{m.init, 0, 0};
  par[s] = {s, none};
  std::queue<Key> q;
  q.push(s);
  while (!q.empty()) {
    Key k = q.front();
    q.pop();
    if (k == Key{m.final, 0, 0}) {
      MinskyRun r;
      for (; par[k].second != none; k = par[k].first) r.push_back(par[k].second);
      return MinskyRun(r.rbegin(), r.rend());
    }
    for (std::uint32_t ti = 0; ti < m.trans.size(); ++ti) {
      MinskyConfig c{static_cast<std::uint32_t>(k[0]), {k[1], k[2]}};
      try {
        c = minsky_step(m, c, ti);
      } catch (const MinskyError&) {
        continue;
      }
      if (c.x[0] > bound || c.x[1] > bound) continue;
      Key n{c.loc, c.x[0], c.x[1]};
      if (par.count(n)) continue;
      par[n] = {k, ti};
      q.push(n);
    }
  }
  return std::nullopt;
}

// ---- reduction

namespace minsky {

inline const std::array<const char*, 5> kOps = {"test", "inc", "dec", "d_inc", "d_dec"};
inline std::string xn(std::uint32_t x) { return "x" + std::to_string(x + 1); }
inline std::string op(const std::string& o, std::uint32_t x) { return o + "_" + xn(x); }
inline std::string sup(const std::string& s, unsigned i) { return s + "_" + std::to_string(i); }
inline std::string ov(const std::string& s) { return "ov_" + s; }
inline unsigned up(unsigned i) { return (i + 1) % 3; }
inline unsigned down(unsigned i) { return (i + 2) % 3; }
inline std::string num(unsigned i) { return "n" + std::to_string(i); }
inline std::string loc(const MinskyMachine& m, std::uint32_t l) { return "loc_" + m.locs[l]; }
inline std::string frown(unsigned i) { return "frown_" + std::to_string(i) + "_r"; }
inline std::string relay(const std::string& o, int hold, unsigned i) {
  return hold < 0 ? sup("r_" + o, i) : sup("r_" + o + "_h" + xn(hold), i);
}

// all operation names of one copy, e.g. inc_x1
inline std::vector<std::string> ops() {
  std::vector<std::string> r;
  for (std::uint32_t x = 0; x < 2; ++x)
    for (auto o : kOps) r.push_back(op(o, x));
  return r;
}

}  // namespace minsky

inline Protocol protocol_from_minsky(const MinskyMachine& m) {
  using namespace minsky;
  Protocol p;
  p.name = "Minsky_" + m.name;
  for (auto s : {"done", "n0", "n1", "n2", "dollar"}) p.add_message(s);
  for (unsigned i = 0; i < 3; ++i)
    for (auto& o : ops()) p.add_message(sup(o, i));
  for (unsigned i = 0; i < 3; ++i)
    for (auto& o : ops()) p.add_message(ov(sup(o, i)));

  auto st = [&](const std::string& s) { return p.find_state(s) ? *p.find_state(s) : p.add_state(s); };
  auto snd = [&](const std::string& a, const std::string& msg, const std::string& b) {
    p.add_transition({st(a), Kind::Send, p.msg(msg), st(b)});
  };
  auto rcv = [&](const std::string& a, const std::string& msg, const std::string& b) {
    p.add_transition({st(a), Kind::Recv, p.msg(msg), st(b)});
  };
  // a receives every message outside keep (and never dollar) into the sink
  auto sink = [&](const std::string& a, const std::vector<std::string>& keep, unsigned f) {
    for (const auto& msg : p.messages()) {
      if (msg == "dollar" || std::find(keep.begin(), keep.end(), msg) != keep.end()) continue;
      rcv(a, msg, frown(f));
    }
  };
  auto nums = [&](const std::string& a, unsigned f) {
    for (unsigned i = 0; i < 3; ++i) rcv(a, num(i), frown(f));
  };

  p.set_init(st("qin"));
  st("q1");
  st("q2");
  for (unsigned i = 0; i < 3; ++i) {
    st(sup("q1", i));
    st(sup("q2", i));
    st(sup("q3", i));
  }
  st("q1_tail");
  st("q2_tail");
  for (std::uint32_t l = 0; l < m.locs.size(); ++l) st(loc(m, l));
  for (std::uint32_t j = 0; j < m.trans.size(); ++j) st(sup("qt", j));
  st("qf_M");
  std::vector<std::string> kept;  // OK^1, ignored by the head
  for (auto& o : ops()) kept.push_back(ov(sup(o, 1)));

  // initialization
  snd("qin", "n0", "q1");
  rcv("q1", "n1", "q2");
  snd("q2", "dollar", loc(m, m.init));
  sink("q1", {"n1"}, 2);
  sink("q2", {}, 2);
  for (unsigned i = 0; i < 3; ++i) {
    rcv("qin", num(down(i)), sup("q1", i));
    snd(sup("q1", i), num(i), sup("q2", i));
    rcv(sup("q2", i), num(up(i)), sup("q3", i));
    snd(sup("q3", i), "dollar", sup("z", i));
    sink(sup("q1", i), {}, 1);
    sink(sup("q2", i), {num(up(i))}, 3);
    sink(sup("q3", i), {}, 3);
  }
  rcv("qin", "n1", "q1_tail");
  snd("q1_tail", "n2", "q2_tail");
  rcv("q2_tail", "dollar", "q_tail");
  sink("q1_tail", {}, 1);
  sink("q2_tail", {}, 3);

  // head: the machine itself
  for (std::uint32_t l = 0; l < m.locs.size(); ++l) sink(loc(m, l), kept, 4);
  for (std::uint32_t j = 0; j < m.trans.size(); ++j) {
    const auto& t = m.trans[j];
    std::string o = t.op == MOp::Inc ? "inc" : t.op == MOp::Dec ? "dec" : "test";
    std::string qt = sup("qt", j);
    snd(loc(m, t.src), sup(op(o, t.x), 0), qt);
    snd(qt, ov(sup(op(o, t.x), 0)), loc(m, t.dst));
    if (t.op == MOp::Test0) sink(qt, {sup(op(o, t.x), 1)}, 4);
    else sink(qt, {sup(op(o, t.x), 1), sup(op("d_" + o, t.x), 1)}, 4);
  }
  snd(loc(m, m.final), "done", "qf_M");
  nums("qf_M", 4);

  // counter processes, one copy per residue
  for (unsigned i = 0; i < 3; ++i) {
    unsigned pv = down(i), nx = up(i);
    std::vector<std::string> quiet;  // OP^{i-1} and OK^{i+1}
    for (auto& o : ops()) {
      quiet.push_back(sup(o, pv));
      quiet.push_back(ov(sup(o, nx)));
    }
    std::string z = sup("z", i);
    for (std::uint32_t x = 0; x < 2; ++x) {
      std::string h = sup(xn(x), i), qi = sup("qinc_" + xn(x), i), qd = sup("qdec_" + xn(x), i);
      snd(z, sup(op("inc", x), i), qi);
      snd(qi, ov(sup(op("d_inc", x), i)), h);
      snd(h, sup(op("dec", x), i), qd);
      snd(qd, ov(sup(op("d_dec", x), i)), z);
      sink(qi, {ov(sup(op("inc", x), pv)), sup(op("d_inc", x), nx)}, 5);
      sink(qd, {ov(sup(op("dec", x), pv)), sup(op("d_dec", x), nx)}, 5);
    }
    for (auto& o : ops()) {
      snd(z, sup(o, i), relay(o, -1, i));
      snd(relay(o, -1, i), ov(sup(o, i)), z);
      sink(relay(o, -1, i), {ov(sup(o, pv)), sup(o, nx)}, 5);
    }
    for (std::uint32_t x = 0; x < 2; ++x) {
      std::string h = sup(xn(x), i);
      for (auto& o : ops()) {
        if (o == op("test", x)) continue;
        snd(h, sup(o, i), relay(o, static_cast<int>(x), i));
        snd(relay(o, static_cast<int>(x), i), ov(sup(o, i)), h);
        sink(relay(o, static_cast<int>(x), i), {ov(sup(o, pv)), sup(o, nx)}, 5);
      }
      auto hq = quiet;
      hq.erase(std::find(hq.begin(), hq.end(), sup(op("test", x), pv)));
      sink(h, hq, 5);
    }
    auto zq = quiet;
    zq.push_back("done");
    sink(z, zq, 5);
    rcv(z, "done", sup("d", i));
    snd(sup("d", i), "done", sup("d'", i));
    sink(sup("d", i), {}, 5);
    nums(sup("d'", i), 6);
  }

  // tail
  rcv("q_tail", "done", "qf");
  nums("q_tail", 3);
  for (std::uint32_t x = 0; x < 2; ++x) {
    rcv("q_tail", sup(op("inc", x), 1), frown(3));
    rcv("q_tail", sup(op("dec", x), 1), frown(3));
    for (auto o : {"d_inc", "d_dec", "test"}) {
      std::string w = "t_" + op(o, x);
      rcv("q_tail", sup(op(o, x), 1), w);
      rcv(w, ov(sup(op(o, x), 1)), "q_tail");
      sink(w, {ov(sup(op(o, x), 1))}, 3);
    }
  }
  nums("qf", 3);
  return p;
}

inline std::uint64_t line_parameter(const MinskyMachine& m, const MinskyRun& run) {
  MinskyConfig c{m.init, {0, 0}};
  std::uint64_t mx = 0;
  for (std::size_t i = 0; i < run.size(); ++i) {
    c = minsky_step(m, c, run[i], i);
    mx = std::max(mx, c.x[0] + c.x[1]);
  }
  std::uint64_t k = mx + 1;
  while (k % 3 != 1) ++k;
  return k;
}

struct HaltingWitness {
  Topology topo;
  Execution exec;
  VertexId tail = 0;
  std::uint64_t m = 0;
};

// Execution on the line v1..v(m+2): v1 runs the machine, the middle vertices hold counter units,
// the last vertex ends in qf.
inline HaltingWitness build_halting_witness(const MinskyMachine& m, const MinskyRun& run) {
  using namespace minsky;
  auto end = simulate_minsky(m, run);
  if (!(end == MinskyConfig{m.final, {0, 0}})) throw Error("run does not halt in (" + m.locs[m.final] + ",0,0)");
  const Protocol p = protocol_from_minsky(m);
  const std::uint64_t mm = line_parameter(m, run);
  const std::size_t n = mm + 2, tail = n - 1;
  HaltingWitness w{make_line(n), {}, static_cast<VertexId>(tail), mm};
  Labels cur = initial_labels(p, w.topo);
  w.exec.initial = cur;
  std::vector<char> is_frown(p.num_states(), 0);
  for (unsigned i = 1; i <= 6; ++i)
    if (auto q = p.find_state(frown(i))) is_frown[*q] = 1;

  auto fire = [&](VertexId v, const std::string& msg, const std::string& dst) {
    Transition want{cur[v], Kind::Send, p.msg(msg), p.state(dst)};
    auto ti = p.find_transition(want);
    if (!ti) throw Error("internal: no transition " + p.show(want));
    Step s{v, *ti, {}};
    for (auto u : w.topo.neighbors(v)) {
      if (!p.receives(cur[u], want.msg)) continue;
      std::vector<std::uint32_t> ok;
      for (auto ri : p.receptions(cur[u], want.msg))
        if (!is_frown[p.transition(ri).dst]) ok.push_back(ri);
      if (ok.empty()) throw Error("internal: " + w.topo.name(u) + " would fail on " + msg);
      std::uint32_t pick = ok[0];
      for (auto ri : ok)
        if ((u == tail) == (p.state_name(p.transition(ri).dst) == "q1_tail")) pick = ri;
      s.recv.emplace_back(u, pick);
    }
    cur = apply_step(p, w.topo, cur, s, w.exec.steps.size());
    w.exec.steps.push_back(std::move(s));
  };
  auto b = [](std::size_t j) { return static_cast<unsigned>(j % 3); };

  fire(0, "n0", "q1");
  for (std::size_t j = 1; j <= mm; ++j) fire(j, num(b(j)), sup("q2", b(j)));
  fire(tail, "n2", "q2_tail");
  fire(0, "dollar", loc(m, m.init));
  for (std::size_t j = 1; j <= mm; ++j) fire(j, "dollar", sup("z", b(j)));

  std::vector<int> hold(n, -1);
  for (std::size_t k = 0; k < run.size(); ++k) {
    const auto& t = m.trans[run[k]];
    std::string o = t.op == MOp::Inc ? "inc" : t.op == MOp::Dec ? "dec" : "test";
    std::size_t f = mm + 1;
    for (std::size_t j = 1; j <= mm && f > mm; ++j)
      if ((t.op == MOp::Inc && hold[j] < 0) || (t.op == MOp::Dec && hold[j] == static_cast<int>(t.x))) f = j;
    if (t.op != MOp::Test0 && f > mm) throw Error("internal: no process for step " + std::to_string(k));
    // what v_j relays, and where it returns to
    auto relayed = [&](std::size_t j) { return t.op == MOp::Test0 || j < f ? op(o, t.x) : op("d_" + o, t.x); };
    auto first = [&](std::size_t j) {
      unsigned i = b(j);
      if (j == f) fire(j, sup(op(o, t.x), i), sup((t.op == MOp::Inc ? "qinc_" : "qdec_") + xn(t.x), i));
      else fire(j, sup(relayed(j), i), relay(relayed(j), hold[j], i));
    };
    auto ack = [&](std::size_t j) {
      unsigned i = b(j);
      if (j == 0) {
        fire(0, ov(sup(op(o, t.x), 0)), loc(m, t.dst));
      } else if (j == f) {
        hold[j] = t.op == MOp::Inc ? static_cast<int>(t.x) : -1;
        fire(j, ov(sup(op("d_" + o, t.x), i)), hold[j] < 0 ? sup("z", i) : sup(xn(t.x), i));
      } else {
        fire(j, ov(sup(relayed(j), i)), hold[j] < 0 ? sup("z", i) : sup(xn(hold[j]), i));
      }
    };
    fire(0, sup(op(o, t.x), 0), sup("qt", run[k]));
    for (std::size_t j = 1; j <= mm; ++j) {
      first(j);
      ack(j - 1);
    }
    ack(mm);
  }

  fire(0, "done", "qf_M");
  for (std::size_t j = 1; j <= mm; ++j) fire(j, "done", sup("d'", b(j)));
  if (p.state_name(cur[tail]) != "qf") throw Error("internal: tail did not reach qf");
  return w;
}

}  // namespace bcast
