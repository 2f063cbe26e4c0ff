#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "text.hpp"

namespace bcast {

enum class VOp : std::uint8_t { Inc, Dec, Skip };

struct VTrans {
  std::uint32_t src = 0;
  VOp op = VOp::Skip;
  std::uint32_t x = 0;  // counter, unused for skip
  std::uint32_t dst = 0;
  std::uint64_t tag = 0;  // opaque, set by generators
};

class Vass {
 public:
  std::string name = "V";

  std::uint32_t add_state(const std::string& s) {
    if (state_ix_.count(s)) throw Error("duplicate state '" + s + "'");
    state_ix_.emplace(s, states_.size());
    states_.push_back(s);
    into_.emplace_back();
    return static_cast<std::uint32_t>(states_.size() - 1);
  }
  std::uint32_t add_counter(const std::string& x) {
    if (counter_ix_.count(x)) throw Error("duplicate counter '" + x + "'");
    counter_ix_.emplace(x, counters_.size());
    counters_.push_back(x);
    return static_cast<std::uint32_t>(counters_.size() - 1);
  }
  std::uint32_t add_transition(const VTrans& t) {
    if (t.src >= states_.size() || t.dst >= states_.size()) throw Error("transition endpoint is not a state");
    if (t.op != VOp::Skip && t.x >= counters_.size()) throw Error("transition counter out of range");
    trans_.push_back(t);
    into_[t.dst].push_back(static_cast<std::uint32_t>(trans_.size() - 1));
    return static_cast<std::uint32_t>(trans_.size() - 1);
  }
  void set_init(std::uint32_t s) { init_ = s; }

  std::uint32_t state(const std::string& s) const {
    auto it = state_ix_.find(s);
    if (it == state_ix_.end()) throw Error("unknown state '" + s + "'");
    return static_cast<std::uint32_t>(it->second);
  }
  std::uint32_t counter(const std::string& x) const {
    auto it = counter_ix_.find(x);
    if (it == counter_ix_.end()) throw Error("unknown counter '" + x + "'");
    return static_cast<std::uint32_t>(it->second);
  }
  std::optional<std::uint32_t> find_state(const std::string& s) const {
    auto it = state_ix_.find(s);
    if (it == state_ix_.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it->second);
  }

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_counters() const { return counters_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& counters() const { return counters_; }
  const std::vector<VTrans>& transitions() const { return trans_; }
  const std::vector<std::uint32_t>& into(std::uint32_t s) const { return into_[s]; }
  std::uint32_t init() const { return init_; }

  std::string op_name(const VTrans& t) const {
    if (t.op == VOp::Skip) return "skip";
    return counters_[t.x] + (t.op == VOp::Inc ? "++" : "--");
  }

 private:
  std::vector<std::string> states_, counters_;
  std::unordered_map<std::string, std::size_t> state_ix_, counter_ix_;
  std::vector<VTrans> trans_;
  std::vector<std::vector<std::uint32_t>> into_;
  std::uint32_t init_ = 0;
};

inline Vass parse_vass(std::string_view src) {
  Vass v;
  bool have_name = false, have_init = false;
  std::vector<const Line*> trans;
  auto lines = tokenize(src);
  std::string init;
  std::size_t init_line = 0, init_col = 0;
  for (const auto& l : lines) {
    const auto& kw = l.toks[0].text;
    try {
      if (kw == "vass" && l.toks.size() == 2 && !have_name) {
        v.name = l.toks[1].text;
        have_name = true;
      } else if (kw == "counters") {
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
          if (!is_ident(l.toks[i].text)) throw Error("bad counter name", l.no, l.toks[i].col);
          v.add_counter(l.toks[i].text);
        }
      } else if (kw == "states") {
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
          if (!is_ident(l.toks[i].text)) throw Error("bad state name", l.no, l.toks[i].col);
          v.add_state(l.toks[i].text);
        }
      } else if (kw == "init" && l.toks.size() == 2 && !have_init) {
        init = l.toks[1].text;
        init_line = l.no;
        init_col = l.toks[1].col;
        have_init = true;
      } else if (kw == "trans" && l.toks.size() == 4) {
        trans.push_back(&l);
      } else {
        throw Error("unexpected line '" + kw + "'");
      }
    } catch (const Error& e) {
      if (e.line) throw;
      throw Error(e.what(), l.no, l.toks[0].col);
    }
  }
  if (!have_name) throw Error("missing vass header");
  if (!have_init) throw Error("missing init");
  if (!v.find_state(init)) throw Error("unknown state '" + init + "'", init_line, init_col);
  v.set_init(v.state(init));
  for (const Line* l : trans) {
    const auto& t = l->toks;
    VTrans tr;
    auto st = [&](const Token& tok) {
      if (auto s = v.find_state(tok.text)) return *s;
      throw Error("unknown state '" + tok.text + "'", l->no, tok.col);
    };
    tr.src = st(t[1]);
    tr.dst = st(t[3]);
    const auto& a = t[2].text;
    if (a == "skip") {
      tr.op = VOp::Skip;
    } else if (a.size() > 2 && (a.ends_with("++") || a.ends_with("--"))) {
      tr.op = a.ends_with("++") ? VOp::Inc : VOp::Dec;
      try {
        tr.x = v.counter(a.substr(0, a.size() - 2));
      } catch (const Error& e) {
        throw Error(e.what(), l->no, t[2].col);
      }
    } else {
      throw Error("bad operation '" + a + "'", l->no, t[2].col);
    }
    v.add_transition(tr);
  }
  return v;
}

inline std::string print_vass(const Vass& v) {
  std::string r = "vass " + v.name + "\ncounters";
  for (auto& x : v.counters()) r += " " + x;
  r += "\nstates";
  for (auto& s : v.states()) r += " " + s;
  r += "\ninit " + v.states()[v.init()] + "\n";
  for (auto& t : v.transitions()) r += "trans " + v.states()[t.src] + " " + v.op_name(t) + " " + v.states()[t.dst] + "\n";
  return r;
}

struct VassConfig {
  std::uint32_t state = 0;
  std::vector<std::uint64_t> nu;
  friend bool operator==(const VassConfig&, const VassConfig&) = default;
};

inline std::optional<VassConfig> vass_step(const Vass& v, const VassConfig& c, std::uint32_t ti) {
  const auto& t = v.transitions()[ti];
  if (t.src != c.state) return std::nullopt;
  VassConfig n = c;
  n.state = t.dst;
  if (t.op == VOp::Inc) ++n.nu[t.x];
  if (t.op == VOp::Dec) {
    if (n.nu[t.x] == 0) return std::nullopt;
    --n.nu[t.x];
  }
  return n;
}

// Replays a path; nullopt if some step is disabled.
inline std::optional<VassConfig> vass_replay(const Vass& v, VassConfig c, const std::vector<std::uint32_t>& path) {
  for (auto ti : path) {
    auto n = vass_step(v, c, ti);
    if (!n) return std::nullopt;
    c = std::move(*n);
  }
  return c;
}

// Backward coverability: minimal elements of the set of configurations that can reach goal.
// Each element remembers a transition and the element it leads into, which yields a forward witness.
class Backward {
 public:
  struct Elem {
    std::uint32_t state;
    std::vector<std::uint32_t> need;
    std::uint32_t via;   // transition index, none for the goal
    std::uint32_t next;  // element index
    bool active = true;
  };

  Backward(const Vass& v, std::uint32_t goal, std::size_t budget = 1u << 20) : by_state_(v.num_states()) {
    add({goal, std::vector<std::uint32_t>(v.num_counters(), 0), ~0u, ~0u});
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (!elems_[i].active) continue;
      if (elems_.size() > budget) {
        complete_ = false;
        return;
      }
      for (auto ti : v.into(elems_[i].state)) {
        const auto& t = v.transitions()[ti];
        auto need = elems_[i].need;
        if (t.op == VOp::Inc && need[t.x] > 0) --need[t.x];
        if (t.op == VOp::Dec) ++need[t.x];
        add({t.src, std::move(need), ti, static_cast<std::uint32_t>(i)});
      }
    }
  }

  bool complete() const { return complete_; }

  // Active minimal element covered by (s, nu), if any.
  std::optional<std::uint32_t> covered(std::uint32_t s, const std::vector<std::uint64_t>& nu) const {
    for (auto i : by_state_[s]) {
      const auto& e = elems_[i];
      if (!e.active) continue;
      bool le = true;
      for (std::size_t x = 0; x < nu.size() && le; ++x) le = e.need[x] <= nu[x];
      if (le) return i;
    }
    return std::nullopt;
  }

  const Elem& elem(std::uint32_t i) const { return elems_[i]; }
  const std::vector<std::uint32_t>& at(std::uint32_t s) const { return by_state_[s]; }

  std::vector<std::uint32_t> path_from(std::uint32_t i) const {
    std::vector<std::uint32_t> p;
    for (; elems_[i].next != ~0u; i = elems_[i].next) p.push_back(elems_[i].via);
    return p;
  }

 private:
  void add(Elem e) {
    auto& list = by_state_[e.state];
    for (auto i : list) {
      if (!elems_[i].active) continue;
      bool le = true;
      for (std::size_t x = 0; x < e.need.size() && le; ++x) le = elems_[i].need[x] <= e.need[x];
      if (le) return;
    }
    for (auto i : list) {
      if (!elems_[i].active) continue;
      bool ge = true;
      for (std::size_t x = 0; x < e.need.size() && ge; ++x) ge = elems_[i].need[x] >= e.need[x];
      if (ge) elems_[i].active = false;
    }
    list.push_back(static_cast<std::uint32_t>(elems_.size()));
    elems_.push_back(std::move(e));
  }

  std::vector<Elem> elems_;
  std::vector<std::vector<std::uint32_t>> by_state_;
  bool complete_ = true;
};

enum class Reach { Yes, No, Unknown };

struct ReachResult {
  Reach answer = Reach::Unknown;
  std::vector<std::uint32_t> path;  // transitions from init, on Yes
};

inline ReachResult vass_control_reach(const Vass& v, const VassConfig& init, std::uint32_t goal,
                                      std::size_t budget = 1u << 20) {
  Backward b(v, goal, budget);
  ReachResult r;
  if (auto e = b.covered(init.state, init.nu)) {
    r.answer = Reach::Yes;
    r.path = b.path_from(*e);
  } else {
    r.answer = b.complete() ? Reach::No : Reach::Unknown;
  }
  return r;
}

}  // namespace bcast
