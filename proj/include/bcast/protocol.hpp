#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "text.hpp"

namespace bcast {

using StateId = std::uint32_t;
using MsgId = std::uint32_t;
inline constexpr std::uint32_t none = ~0u;

enum class Kind : std::uint8_t { Send, Recv, Tau };

struct Transition {
  StateId src = 0;
  Kind kind = Kind::Tau;
  MsgId msg = none;
  StateId dst = 0;
  friend bool operator==(const Transition&, const Transition&) = default;
};

class Protocol {
 public:
  std::string name = "P";

  StateId add_state(const std::string& s) {
    if (!is_ident(s)) throw Error("bad state name '" + s + "'");
    if (state_ix_.count(s)) throw Error("duplicate state '" + s + "'");
    StateId id = static_cast<StateId>(states_.size());
    states_.push_back(s);
    state_ix_.emplace(s, id);
    out_.emplace_back();
    recv_.emplace_back(messages_.size());
    return id;
  }

  MsgId add_message(const std::string& m) {
    if (!is_ident(m)) throw Error("bad message name '" + m + "'");
    if (msg_ix_.count(m)) throw Error("duplicate message '" + m + "'");
    MsgId id = static_cast<MsgId>(messages_.size());
    messages_.push_back(m);
    msg_ix_.emplace(m, id);
    for (auto& r : recv_) r.emplace_back();
    return id;
  }

  void set_init(StateId q) {
    if (q >= states_.size()) throw Error("init is not a state");
    init_ = q;
  }

  std::uint32_t add_transition(const Transition& t) {
    if (t.src >= states_.size() || t.dst >= states_.size()) throw Error("transition endpoint is not a state");
    if (t.kind == Kind::Tau ? t.msg != none : t.msg >= messages_.size()) throw Error("bad transition message");
    for (auto i : out_[t.src])
      if (trans_[i] == t) throw Error("duplicate transition " + show(t));
    auto id = static_cast<std::uint32_t>(trans_.size());
    trans_.push_back(t);
    out_[t.src].push_back(id);
    if (t.kind == Kind::Recv) recv_[t.src][t.msg].push_back(id);
    return id;
  }

  std::uint32_t add(const std::string& src, Kind k, const std::string& m, const std::string& dst) {
    return add_transition({state(src), k, k == Kind::Tau ? none : msg(m), state(dst)});
  }

  StateId state(const std::string& s) const {
    auto it = state_ix_.find(s);
    if (it == state_ix_.end()) throw Error("unknown state '" + s + "'");
    return it->second;
  }
  MsgId msg(const std::string& m) const {
    auto it = msg_ix_.find(m);
    if (it == msg_ix_.end()) throw Error("unknown message '" + m + "'");
    return it->second;
  }
  std::optional<StateId> find_state(const std::string& s) const {
    auto it = state_ix_.find(s);
    if (it == state_ix_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::uint32_t> find_transition(const Transition& t) const {
    if (t.src >= states_.size()) return std::nullopt;
    for (auto i : out_[t.src])
      if (trans_[i] == t) return i;
    return std::nullopt;
  }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_messages() const { return messages_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& messages() const { return messages_; }
  const std::vector<Transition>& transitions() const { return trans_; }
  const Transition& transition(std::uint32_t i) const { return trans_[i]; }
  StateId init() const { return init_; }
  bool has_init() const { return init_ != none; }
  const std::string& state_name(StateId q) const { return states_[q]; }
  const std::string& msg_name(MsgId m) const { return messages_[m]; }

  const std::vector<std::uint32_t>& out(StateId q) const { return out_[q]; }
  // reception transitions (q, ?m, .)
  const std::vector<std::uint32_t>& receptions(StateId q, MsgId m) const { return recv_[q][m]; }
  bool receives(StateId q, MsgId m) const { return !recv_[q][m].empty(); }

  // R(q)
  std::vector<MsgId> receive_set(StateId q) const {
    std::vector<MsgId> r;
    for (MsgId m = 0; m < messages_.size(); ++m)
      if (receives(q, m)) r.push_back(m);
    return r;
  }

  std::string action(const Transition& t) const {
    switch (t.kind) {
      case Kind::Send: return "!!" + messages_[t.msg];
      case Kind::Recv: return "?" + messages_[t.msg];
      default: return "tau";
    }
  }
  std::string show(const Transition& t) const {
    return "(" + states_[t.src] + "," + action(t) + "," + states_[t.dst] + ")";
  }

  friend bool operator==(const Protocol& a, const Protocol& b) {
    return a.name == b.name && a.states_ == b.states_ && a.messages_ == b.messages_ && a.init_ == b.init_ &&
           a.trans_ == b.trans_;
  }

 private:
  std::vector<std::string> states_, messages_;
  std::unordered_map<std::string, StateId> state_ix_;
  std::unordered_map<std::string, MsgId> msg_ix_;
  StateId init_ = none;
  std::vector<Transition> trans_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::vector<std::uint32_t>>> recv_;
};

inline Protocol parse_protocol(std::string_view src) {
  Protocol p;
  auto lines = tokenize(src);
  bool have_name = false;
  const Token* init = nullptr;
  std::size_t init_line = 0;
  std::vector<const Line*> trans;
  auto fail = [](const std::string& m, const Line& l, const Token& t) { throw Error(m, l.no, t.col); };
  for (const auto& l : lines) {
    const auto& kw = l.toks[0].text;
    try {
      if (kw == "protocol") {
        if (have_name) fail("duplicate protocol header", l, l.toks[0]);
        if (l.toks.size() != 2) fail("expected: protocol <name>", l, l.toks[0]);
        p.name = l.toks[1].text;
        have_name = true;
      } else if (kw == "messages") {
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
          try {
            p.add_message(l.toks[i].text);
          } catch (const Error& e) {
            fail(e.what(), l, l.toks[i]);
          }
        }
      } else if (kw == "states") {
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
          try {
            p.add_state(l.toks[i].text);
          } catch (const Error& e) {
            fail(e.what(), l, l.toks[i]);
          }
        }
      } else if (kw == "init") {
        if (init) fail("duplicate init", l, l.toks[0]);
        if (l.toks.size() != 2) fail("expected: init <state>", l, l.toks[0]);
        init = &l.toks[1];
        init_line = l.no;
      } else if (kw == "trans") {
        if (l.toks.size() != 4) fail("expected: trans <src> <action> <dst>", l, l.toks[0]);
        trans.push_back(&l);
      } else {
        fail("unknown keyword '" + kw + "'", l, l.toks[0]);
      }
    } catch (const Error& e) {
      if (e.line) throw;
      throw Error(e.what(), l.no, l.toks[0].col);
    }
  }
  if (!have_name) throw Error("missing protocol header");
  if (!init) throw Error("missing init");
  if (!p.find_state(init->text)) throw Error("unknown state '" + init->text + "'", init_line, init->col);
  p.set_init(p.state(init->text));
  for (const Line* l : trans) {
    const auto& t = l->toks;
    auto st = [&](const Token& tok) {
      auto q = p.find_state(tok.text);
      if (!q) throw Error("unknown state '" + tok.text + "'", l->no, tok.col);
      return *q;
    };
    Transition tr;
    tr.src = st(t[1]);
    tr.dst = st(t[3]);
    std::string a = t[2].text, m;
    if (a == "tau") {
      tr.kind = Kind::Tau;
    } else if (a.rfind("!!", 0) == 0) {
      tr.kind = Kind::Send;
      m = a.substr(2);
    } else if (a.rfind("?", 0) == 0) {
      tr.kind = Kind::Recv;
      m = a.substr(1);
    } else {
      throw Error("bad action '" + a + "'", l->no, t[2].col);
    }
    if (tr.kind != Kind::Tau) {
      try {
        tr.msg = p.msg(m);
      } catch (const Error& e) {
        throw Error(e.what(), l->no, t[2].col);
      }
    }
    try {
      p.add_transition(tr);
    } catch (const Error& e) {
      throw Error(e.what(), l->no, t[0].col);
    }
  }
  return p;
}

inline std::string print_protocol(const Protocol& p) {
  std::ostringstream os;
  os << "protocol " << p.name << "\n";
  os << "messages";
  for (const auto& m : p.messages()) os << ' ' << m;
  os << "\nstates";
  for (const auto& s : p.states()) os << ' ' << s;
  os << "\ninit " << p.state_name(p.init()) << "\n";
  for (const auto& t : p.transitions())
    os << "trans " << p.state_name(t.src) << ' ' << p.action(t) << ' ' << p.state_name(t.dst) << "\n";
  return os.str();
}

// ---- phases

struct Phase {
  std::uint8_t i = 0;  // 0 is Q0
  bool r = false;      // reception class when i > 0
  friend bool operator==(const Phase&, const Phase&) = default;
};

inline std::string show(Phase ph) {
  if (ph.i == 0) return "Q0";
  return "Q" + std::to_string(ph.i) + (ph.r ? "r" : "b");
}

struct PhasePartition {
  unsigned k = 0;
  std::vector<Phase> label;
  // Q0 u Q1b
  bool in_qb(StateId q) const { return label[q].i == 0 || (label[q].i == 1 && !label[q].r); }
};

// Which of the six definitional clauses (1-based) the transition satisfies, 0 if none.
inline int clause_of(const Transition& t, const PhasePartition& pp) {
  Phase a = pp.label[t.src], b = pp.label[t.dst];
  unsigned k = pp.k;
  auto is_b = [](Phase p, unsigned i) { return p.i == i && (i == 0 || !p.r); };
  auto is_r = [](Phase p, unsigned i) { return p.i == i && (i == 0 || p.r); };
  if (t.kind == Kind::Tau) return a == b ? 1 : 0;
  if (t.kind == Kind::Send) {
    if (a.i >= 1 && !a.r && a == b) return 2;
    for (unsigned i = 0; i < k; ++i)
      if (is_r(a, i) && is_b(b, i + 1)) return 5;
    return 0;
  }
  if (a.i >= 1 && a.r && a == b) return 3;
  for (unsigned i = 0; i < k; ++i)
    if (is_b(a, i) && is_r(b, i + 1)) return 4;
  if (is_b(a, k) && is_r(b, k)) return 6;
  return 0;
}

inline bool satisfies(const Protocol& p, const PhasePartition& pp, std::string* why = nullptr) {
  if (pp.label.size() != p.num_states() || pp.label[p.init()].i != 0) {
    if (why) *why = "init not in Q0";
    return false;
  }
  for (auto ph : pp.label)
    if (ph.i > pp.k) {
      if (why) *why = "label beyond k";
      return false;
    }
  for (const auto& t : p.transitions())
    if (!clause_of(t, pp)) {
      if (why) *why = "transition " + p.show(t) + " fits no clause";
      return false;
    }
  return true;
}

namespace detail {

inline std::optional<Phase> forced(Phase a, Kind kd, unsigned k) {
  if (kd == Kind::Tau) return a;
  if (kd == Kind::Send) {
    if (a.i == 0) return k >= 1 ? std::optional<Phase>(Phase{1, false}) : std::nullopt;
    if (!a.r) return a;
    if (a.i + 1u > k) return std::nullopt;
    return Phase{static_cast<std::uint8_t>(a.i + 1), false};
  }
  if (a.i == 0) return k >= 1 ? Phase{1, true} : Phase{0, false};
  if (a.r) return a;
  if (a.i < k) return Phase{static_cast<std::uint8_t>(a.i + 1), true};
  return Phase{static_cast<std::uint8_t>(k), true};
}

// Forward propagation from seed; false on conflict. Newly labelled states are appended to touched.
inline bool propagate(const Protocol& p, unsigned k, StateId seed, Phase ph, std::vector<std::optional<Phase>>& lab,
                      std::vector<StateId>& touched) {
  if (lab[seed]) return *lab[seed] == ph;
  lab[seed] = ph;
  touched.push_back(seed);
  std::vector<StateId> work{seed};
  while (!work.empty()) {
    StateId q = work.back();
    work.pop_back();
    for (auto ti : p.out(q)) {
      const auto& t = p.transition(ti);
      auto f = forced(*lab[q], t.kind, k);
      if (!f) return false;
      if (lab[t.dst]) {
        if (!(*lab[t.dst] == *f)) return false;
        continue;
      }
      lab[t.dst] = *f;
      touched.push_back(t.dst);
      work.push_back(t.dst);
    }
  }
  return true;
}

}  // namespace detail

namespace detail {

// Labels the states not reachable from qin. Seeds are tried with Qk^r first; a seed whose
// candidates all conflict backtracks into earlier seeds. budget bounds the number of attempts.
inline bool place_rest(const Protocol& p, unsigned k, std::vector<std::optional<Phase>>& lab, std::size_t& budget) {
  const std::size_t n = p.num_states();
  std::vector<char> has_pred(n, 0);
  for (const auto& t : p.transitions())
    if (!lab[t.src]) has_pred[t.dst] = 1;
  StateId seed = none;
  for (StateId q = 0; q < n && seed == none; ++q)
    if (!lab[q] && !has_pred[q]) seed = q;
  for (StateId q = 0; q < n && seed == none; ++q)
    if (!lab[q]) seed = q;
  if (seed == none) return true;
  std::vector<Phase> cands;
  cands.push_back(k ? Phase{static_cast<std::uint8_t>(k), true} : Phase{});
  if (k) cands.push_back(Phase{});
  for (unsigned i = 1; i <= k; ++i) {
    cands.push_back(Phase{static_cast<std::uint8_t>(i), false});
    if (i < k) cands.push_back(Phase{static_cast<std::uint8_t>(i), true});
  }
  std::vector<StateId> touched;
  for (auto c : cands) {
    if (budget == 0) return false;
    --budget;
    touched.clear();
    if (propagate(p, k, seed, c, lab, touched) && place_rest(p, k, lab, budget)) return true;
    for (auto q : touched) lab[q].reset();
  }
  return false;
}

}  // namespace detail

inline std::optional<PhasePartition> infer_phase_partition(const Protocol& p) {
  const std::size_t n = p.num_states();
  for (unsigned k = 0; k <= n + 1; ++k) {
    std::vector<std::optional<Phase>> lab(n);
    std::vector<StateId> touched;
    if (!detail::propagate(p, k, p.init(), Phase{}, lab, touched)) continue;
    std::size_t budget = 100000;
    if (!detail::place_rest(p, k, lab, budget)) continue;
    PhasePartition pp{k, {}};
    for (auto& l : lab) pp.label.push_back(*l);
    return pp;
  }
  return std::nullopt;
}

// ---- k-unfolding

inline std::string copy_name(const std::string& q, char pol, unsigned j) {
  if (j == 0) return q + "^0";
  return q + "^" + pol + "," + std::to_string(j);
}

inline Protocol k_unfold(const Protocol& p, unsigned k) {
  if (k < 1) throw Error("k_unfold needs k >= 1");
  Protocol u;
  u.name = p.name + "_" + std::to_string(k);
  for (const auto& m : p.messages()) u.add_message(m);
  const auto n = static_cast<StateId>(p.num_states());
  for (const auto& q : p.states()) u.add_state(copy_name(q, 'b', 0));
  for (unsigned j = 1; j <= k; ++j) {
    for (const auto& q : p.states()) u.add_state(copy_name(q, 'b', j));
    for (const auto& q : p.states()) u.add_state(copy_name(q, 'r', j));
  }
  // index of q^{b,j} / q^{r,j}; j == 0 collapses to q^0
  auto b = [&](StateId q, unsigned j) { return j == 0 ? q : n + (2 * (j - 1)) * n + q; };
  auto r = [&](StateId q, unsigned j) { return j == 0 ? q : n + (2 * (j - 1) + 1) * n + q; };
  u.set_init(p.init());
  for (const auto& t : p.transitions()) {
    auto add = [&](StateId s, StateId d) { u.add_transition({s, t.kind, t.msg, d}); };
    switch (t.kind) {
      case Kind::Tau:
        add(t.src, t.dst);
        for (unsigned j = 1; j <= k; ++j) add(r(t.src, j), r(t.dst, j));
        for (unsigned j = 1; j <= k; ++j) add(b(t.src, j), b(t.dst, j));
        break;
      case Kind::Recv:
        for (unsigned j = 1; j <= k; ++j) add(r(t.src, j), r(t.dst, j));
        for (unsigned j = 0; j < k; ++j) add(b(t.src, j), r(t.dst, j + 1));
        add(b(t.src, k), r(t.dst, k));
        break;
      case Kind::Send:
        for (unsigned j = 1; j <= k; ++j) add(b(t.src, j), b(t.dst, j));
        for (unsigned j = 0; j < k; ++j) add(r(t.src, j), b(t.dst, j + 1));
        break;
    }
  }
  return u;
}

}  // namespace bcast
