#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "protocol.hpp"
#include "topology.hpp"

namespace bcast {

using Labels = std::vector<StateId>;

struct Step {
  VertexId v = 0;
  std::uint32_t t = 0;                                  // transition index
  std::vector<std::pair<VertexId, std::uint32_t>> recv;  // receiver -> reception transition, sorted by vertex
  friend bool operator==(const Step&, const Step&) = default;
};

struct Execution {
  Labels initial;
  std::vector<Step> steps;
};

inline Labels initial_labels(const Protocol& p, const Topology& g) { return Labels(g.size(), p.init()); }

struct ReplayError : Error {
  std::size_t index;
  ReplayError(std::size_t i, const std::string& why) : Error("illegal step " + std::to_string(i) + ": " + why), index(i) {}
};

// Enumerates all successors of cur. f(v, t, receivers, choice, child) where choice[i] is the reception
// transition taken by receivers[i]. Returns false if one broadcast would exceed cap successors.
template <class T, class F>
bool expand(const Protocol& p, const Topology& g, const T* cur, T* child, std::size_t cap, F&& f) {
  const std::size_t n = g.size();
  std::vector<VertexId> rcv;
  std::vector<std::uint32_t> choice, pos;
  for (VertexId v = 0; v < n; ++v) {
    for (auto ti : p.out(cur[v])) {
      const Transition& t = p.transition(ti);
      if (t.kind == Kind::Recv) continue;
      std::copy(cur, cur + n, child);
      child[v] = static_cast<T>(t.dst);
      rcv.clear();
      if (t.kind == Kind::Tau) {
        choice.clear();
        f(v, ti, rcv, choice, static_cast<const T*>(child));
        continue;
      }
      std::size_t count = 1;
      for (auto u : g.neighbors(v))
        if (p.receives(cur[u], t.msg)) {
          rcv.push_back(u);
          count *= p.receptions(cur[u], t.msg).size();
          if (count > cap) return false;
        }
      pos.assign(rcv.size(), 0);
      choice.assign(rcv.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < rcv.size(); ++i) {
          choice[i] = p.receptions(cur[rcv[i]], t.msg)[pos[i]];
          child[rcv[i]] = static_cast<T>(p.transition(choice[i]).dst);
        }
        f(v, ti, rcv, choice, static_cast<const T*>(child));
        std::size_t i = 0;
        for (; i < rcv.size(); ++i) {
          if (++pos[i] < p.receptions(cur[rcv[i]], t.msg).size()) break;
          pos[i] = 0;
        }
        if (i == rcv.size()) break;
      }
    }
  }
  return true;
}

inline Step make_step(VertexId v, std::uint32_t t, const std::vector<VertexId>& rcv,
                      const std::vector<std::uint32_t>& choice) {
  Step s{v, t, {}};
  for (std::size_t i = 0; i < rcv.size(); ++i) s.recv.emplace_back(rcv[i], choice[i]);
  return s;
}

inline std::vector<std::pair<Step, Labels>> successors(const Protocol& p, const Topology& g, const Labels& c,
                                                       std::size_t cap = ~std::size_t{0}) {
  std::vector<std::pair<Step, Labels>> out;
  Labels buf(c.size());
  bool ok = expand<StateId>(p, g, c.data(), buf.data(), cap, [&](VertexId v, std::uint32_t t, const auto& rcv,
                                                                 const auto& choice, const StateId* ch) {
    out.emplace_back(make_step(v, t, rcv, choice), Labels(ch, ch + c.size()));
  });
  if (!ok) throw Error("successor cap exceeded");
  return out;
}

// Applies one step after checking it against the step relation.
inline Labels apply_step(const Protocol& p, const Topology& g, const Labels& c, const Step& s, std::size_t idx = 0) {
  if (s.v >= g.size()) throw ReplayError(idx, "no such vertex");
  if (s.t >= p.transitions().size()) throw ReplayError(idx, "no such transition");
  const Transition& t = p.transition(s.t);
  if (c[s.v] != t.src)
    throw ReplayError(idx, "vertex " + g.name(s.v) + " is in " + p.state_name(c[s.v]) + ", not " + p.state_name(t.src));
  if (t.kind == Kind::Recv) throw ReplayError(idx, "a reception cannot be a step");
  Labels n = c;
  n[s.v] = t.dst;
  if (t.kind == Kind::Tau) {
    if (!s.recv.empty()) throw ReplayError(idx, "internal step with receivers");
    return n;
  }
  std::size_t j = 0;
  for (auto u : g.neighbors(s.v)) {
    if (!p.receives(c[u], t.msg)) continue;
    if (j >= s.recv.size() || s.recv[j].first != u)
      throw ReplayError(idx, "neighbor " + g.name(u) + " must receive " + p.msg_name(t.msg));
    const Transition& r = p.transition(s.recv[j].second);
    if (r.kind != Kind::Recv || r.msg != t.msg || r.src != c[u])
      throw ReplayError(idx, "bad reception at " + g.name(u));
    n[u] = r.dst;
    ++j;
  }
  if (j != s.recv.size()) throw ReplayError(idx, "receiver that cannot receive or is not a neighbor");
  return n;
}

inline Labels replay(const Protocol& p, const Topology& g, const Execution& e) {
  if (e.initial.size() != g.size()) throw ReplayError(0, "initial configuration does not match topology");
  for (auto q : e.initial)
    if (q >= p.num_states()) throw ReplayError(0, "initial label out of range");
  Labels c = e.initial;
  for (std::size_t i = 0; i < e.steps.size(); ++i) c = apply_step(p, g, c, e.steps[i], i);
  return c;
}

// ---- exhaustive search

enum class Answer { Coverable, NotCoverable, Unknown };

struct CoverVerdict {
  Answer answer = Answer::Unknown;
  Topology topo;
  Execution witness;
  VertexId vertex = 0;
  std::string info;
  std::size_t explored = 0;
};

struct SearchOptions {
  std::optional<std::size_t> max_depth;
  std::size_t max_configs = 0;  // 0: unbounded
  std::size_t succ_cap = 1'000'000;
};

template <class T>
class Bfs {
 public:
  Bfs(const Protocol& p, const Topology& g, const Labels& init, SearchOptions opt)
      : p_(p), g_(g), n_(g.size()), opt_(opt) {
    slots_.assign(1024, 0);
    std::vector<T> c(init.begin(), init.end());
    insert(c.data(), none);
  }

  // Runs BFS until goal(labels) holds for a stored configuration or the space is exhausted.
  // Returns the index of the goal configuration.
  template <class Goal>
  std::optional<std::uint32_t> run(Goal&& goal) {
    if (goal(at(0))) return 0;
    std::vector<T> cur(n_), child(n_);
    std::size_t level_end = 1, depth = 0;
    for (std::uint32_t i = 0; i < count(); ++i) {
      if (i == level_end) {
        level_end = count();
        ++depth;
      }
      std::copy(at(i), at(i) + n_, cur.begin());
      bool at_bound = opt_.max_depth && depth >= *opt_.max_depth;
      std::optional<std::uint32_t> hit;
      bool ok = expand<T>(p_, g_, cur.data(), child.data(), opt_.succ_cap,
                          [&](VertexId, std::uint32_t, const auto&, const auto&, const T* ch) {
                            if (hit || stop_) return;
                            if (at_bound) {
                              if (!contains(ch)) truncated_ = true;
                              return;
                            }
                            if (opt_.max_configs && count() >= opt_.max_configs) {
                              if (!contains(ch)) {
                                budget_ = true;
                                stop_ = true;
                              }
                              return;
                            }
                            auto [idx, fresh] = insert(ch, i);
                            if (fresh && goal(ch)) hit = idx;
                          });
      if (!ok) {
        capped_ = true;
        return std::nullopt;
      }
      if (hit) return hit;
      if (stop_) return std::nullopt;
    }
    return std::nullopt;
  }

  bool incomplete() const { return truncated_ || budget_ || capped_; }
  std::string why_incomplete() const {
    if (capped_) return "successor cap exceeded";
    if (budget_) return "configuration budget exhausted";
    if (truncated_) return "depth bound reached";
    return "";
  }
  std::uint32_t count() const { return static_cast<std::uint32_t>(parent_.size()); }
  const T* at(std::uint32_t i) const { return arena_.data() + static_cast<std::size_t>(i) * n_; }

  Labels labels(std::uint32_t i) const { return Labels(at(i), at(i) + n_); }

  Execution trace(std::uint32_t goal) const {
    std::vector<std::uint32_t> chain;
    for (auto i = goal; i != none; i = parent_[i]) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    Execution e{labels(chain[0]), {}};
    std::vector<T> child(n_);
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const T* from = at(chain[k - 1]);
      const T* to = at(chain[k]);
      std::optional<Step> found;
      expand<T>(p_, g_, from, child.data(), ~std::size_t{0},
                [&](VertexId v, std::uint32_t t, const auto& rcv, const auto& choice, const T* ch) {
                  if (!found && std::equal(ch, ch + n_, to)) found = make_step(v, t, rcv, choice);
                });
      e.steps.push_back(*found);
    }
    return e;
  }

 private:
  std::uint64_t hash(const T* c) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n_; ++i) {
      h ^= static_cast<std::uint64_t>(c[i]) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return h;
  }
  bool contains(const T* c) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(c) & mask;; s = (s + 1) & mask) {
      if (!slots_[s]) return false;
      if (std::equal(c, c + n_, at(slots_[s] - 1))) return true;
    }
  }
  std::pair<std::uint32_t, bool> insert(const T* c, std::uint32_t par) {
    std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(c) & mask;
    for (; slots_[s]; s = (s + 1) & mask)
      if (std::equal(c, c + n_, at(slots_[s] - 1))) return {slots_[s] - 1, false};
    auto idx = count();
    arena_.insert(arena_.end(), c, c + n_);
    parent_.push_back(par);
    slots_[s] = idx + 1;
    if (2 * count() > slots_.size()) rehash();
    return {idx, true};
  }
  void rehash() {
    std::vector<std::uint32_t> ns(slots_.size() * 2, 0);
    std::size_t mask = ns.size() - 1;
    for (std::uint32_t i = 0; i < count(); ++i) {
      std::size_t s = hash(at(i)) & mask;
      while (ns[s]) s = (s + 1) & mask;
      ns[s] = i + 1;
    }
    slots_.swap(ns);
  }

  const Protocol& p_;
  const Topology& g_;
  std::size_t n_;
  SearchOptions opt_;
  std::vector<T> arena_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> slots_;
  bool truncated_ = false, budget_ = false, capped_ = false, stop_ = false;
};

namespace detail {

template <class T>
CoverVerdict cover_with(const Protocol& p, const std::vector<char>& targets, const Topology& g, const Labels& init,
                        const SearchOptions& opt) {
  Bfs<T> bfs(p, g, init, opt);
  const std::size_t n = g.size();
  auto goal = [&](const T* c) {
    for (std::size_t v = 0; v < n; ++v)
      if (targets[c[v]]) return true;
    return false;
  };
  auto hit = bfs.run(goal);
  CoverVerdict r;
  r.topo = g;
  r.explored = bfs.count();
  if (hit) {
    r.answer = Answer::Coverable;
    r.witness = bfs.trace(*hit);
    const T* c = bfs.at(*hit);
    for (VertexId v = 0; v < n; ++v)
      if (targets[c[v]]) {
        r.vertex = v;
        break;
      }
  } else if (bfs.incomplete()) {
    r.answer = Answer::Unknown;
    r.info = bfs.why_incomplete();
  } else {
    r.answer = Answer::NotCoverable;
  }
  return r;
}

}  // namespace detail

// BFS from init (all qin when omitted); target covered when any vertex carries one of targets.
inline CoverVerdict cover_from(const Protocol& p, const std::vector<StateId>& targets, const Topology& g,
                               const Labels& init, const SearchOptions& opt = {}) {
  std::vector<char> tg(p.num_states(), 0);
  for (auto q : targets) tg.at(q) = 1;
  if (p.num_states() <= 256) return detail::cover_with<std::uint8_t>(p, tg, g, init, opt);
  if (p.num_states() <= 65536) return detail::cover_with<std::uint16_t>(p, tg, g, init, opt);
  return detail::cover_with<std::uint32_t>(p, tg, g, init, opt);
}

inline CoverVerdict brute_force_cover(const Protocol& p, StateId target, const Topology& g,
                                      const SearchOptions& opt = {}) {
  return cover_from(p, {target}, g, initial_labels(p, g), opt);
}

// All states that occur in some reachable configuration, with a minimal witness per state.
struct Coverage {
  bool complete = false;
  std::vector<char> covered;
  std::vector<Execution> witness;
  std::vector<VertexId> vertex;
};

namespace detail {

template <class T>
Coverage explore_with(const Protocol& p, const Topology& g, const Labels& init, const SearchOptions& opt) {
  Bfs<T> bfs(p, g, init, opt);
  const std::size_t n = g.size(), nq = p.num_states();
  std::vector<std::uint32_t> first(nq, none);
  std::size_t seen = 0;
  auto note = [&](const T* c, std::uint32_t idx) {
    for (std::size_t v = 0; v < n; ++v)
      if (first[c[v]] == none) {
        first[c[v]] = idx;
        ++seen;
      }
  };
  std::uint32_t next = 0;
  bfs.run([&](const T*) {
    for (; next < bfs.count(); ++next) note(bfs.at(next), next);
    return seen == nq;
  });
  for (; next < bfs.count(); ++next) note(bfs.at(next), next);
  Coverage cv;
  cv.complete = !bfs.incomplete() || seen == nq;
  cv.covered.assign(nq, 0);
  cv.witness.resize(nq);
  cv.vertex.assign(nq, 0);
  for (StateId q = 0; q < nq; ++q) {
    if (first[q] == none) continue;
    cv.covered[q] = 1;
    cv.witness[q] = bfs.trace(first[q]);
    const T* c = bfs.at(first[q]);
    for (VertexId v = 0; v < n; ++v)
      if (c[v] == q) {
        cv.vertex[q] = v;
        break;
      }
  }
  return cv;
}

}  // namespace detail

inline Coverage explore(const Protocol& p, const Topology& g, const Labels& init, const SearchOptions& opt = {}) {
  if (p.num_states() <= 256) return detail::explore_with<std::uint8_t>(p, g, init, opt);
  if (p.num_states() <= 65536) return detail::explore_with<std::uint16_t>(p, g, init, opt);
  return detail::explore_with<std::uint32_t>(p, g, init, opt);
}

// ---- topology families

// Canonical rooted trees: height <= h, at most d children per vertex, at most m vertices.
inline std::vector<std::vector<Word>> enumerate_trees(std::size_t h, std::size_t d, std::size_t m) {
  struct T {
    std::string key;
    std::size_t size;
    std::vector<Word> words;
  };
  std::vector<std::vector<T>> by_h(h + 1);
  by_h[0].push_back({"()", 1, {{}}});
  for (std::size_t lev = 1; lev <= h; ++lev) {
    auto& sub = by_h[lev - 1];
    std::vector<T> acc{{"()", 1, {{}}}};
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t size) {
      if (!pick.empty()) {
        T t{"(", size, {{}}};
        for (std::size_t i = 0; i < pick.size(); ++i) {
          t.key += sub[pick[i]].key;
          for (const auto& w : sub[pick[i]].words) {
            Word x{static_cast<std::uint32_t>(i + 1)};
            x.insert(x.end(), w.begin(), w.end());
            t.words.push_back(x);
          }
        }
        t.key += ")";
        acc.push_back(std::move(t));
      }
      if (pick.size() == d) return;
      for (std::size_t j = from; j < sub.size(); ++j) {
        if (size + sub[j].size > m) continue;
        pick.push_back(j);
        rec(j, size + sub[j].size);
        pick.pop_back();
      }
    };
    rec(0, 1);
    by_h[lev] = std::move(acc);
  }
  std::vector<std::vector<Word>> out;
  for (auto& t : by_h[h]) out.push_back(t.words);
  return out;
}

// lines:N | stars:N | trees:H,D,M
inline std::vector<Topology> enumerate_family(const std::string& spec) {
  auto c = spec.find(':');
  if (c == std::string::npos) throw Error("bad family '" + spec + "'");
  std::string kind = spec.substr(0, c), arg = spec.substr(c + 1);
  std::vector<std::size_t> nums;
  std::stringstream ss(arg);
  std::string part;
  while (std::getline(ss, part, ','))
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw Error("bad family bound in '" + spec + "'");
    else
      nums.push_back(std::stoul(part));
  std::vector<Topology> out;
  if (kind == "lines" && nums.size() == 1) {
    for (std::size_t n = 1; n <= nums[0]; ++n) out.push_back(make_line(n));
  } else if (kind == "stars" && nums.size() == 1) {
    for (std::size_t n = 0; n <= nums[0]; ++n) out.push_back(make_star(n));
  } else if (kind == "trees" && nums.size() == 3) {
    for (auto& ws : enumerate_trees(nums[0], nums[1], nums[2])) out.push_back(make_tree(ws).g);
    std::stable_sort(out.begin(), out.end(), [](const Topology& a, const Topology& b) { return a.size() < b.size(); });
  } else {
    throw Error("bad family '" + spec + "'");
  }
  return out;
}

// One-sided: Coverable on the first topology that covers, Unknown otherwise.
inline CoverVerdict brute_force_cover_family(const Protocol& p, StateId target, const std::string& family,
                                             const SearchOptions& opt = {}) {
  for (const auto& g : enumerate_family(family)) {
    auto r = brute_force_cover(p, target, g, opt);
    if (r.answer == Answer::Coverable) return r;
  }
  CoverVerdict r;
  r.answer = Answer::Unknown;
  r.info = "no topology in " + family + " covers";
  return r;
}

// ---- lifting an execution onto the unfolding tree

inline Execution lift_execution(const Protocol& p, const Topology& g, const Execution& rho, const Unfolding& u) {
  const auto& tg = u.tree.g;
  const std::size_t n = rho.steps.size();
  Execution out;
  for (VertexId w = 0; w < tg.size(); ++w) out.initial.push_back(rho.initial[u.lambda[w]]);
  Labels cur = out.initial;
  Labels orig = rho.initial;
  for (std::size_t i = 0; i < n; ++i) {
    const Step& s = rho.steps[i];
    const Transition& t = p.transition(s.t);
    const std::size_t h = n - i;
    for (VertexId w = 0; w < tg.size(); ++w) {
      if (u.lambda[w] != s.v || u.tree.words[w].size() > h) continue;
      Step ls{w, s.t, {}};
      if (t.kind == Kind::Send) {
        for (auto x : tg.neighbors(w)) {
          if (!p.receives(cur[x], t.msg)) continue;
          std::uint32_t pick = p.receptions(cur[x], t.msg)[0];
          if (u.tree.words[x].size() <= h)
            for (auto& [rv, rt] : s.recv)
              if (rv == u.lambda[x] && p.transition(rt).src == cur[x]) pick = rt;
          ls.recv.emplace_back(x, pick);
        }
      }
      cur = apply_step(p, tg, cur, ls, out.steps.size());
      out.steps.push_back(std::move(ls));
    }
    orig = apply_step(p, g, orig, s, i);
  }
  return out;
}

// ---- text formats

inline std::string show_step(const Protocol& p, const Topology& g, const Step& s) {
  const Transition& t = p.transition(s.t);
  std::string r = "step v=" + g.name(s.v) + " t=" + p.state_name(t.src) + "|" + p.action(t) + "|" + p.state_name(t.dst) +
                  " recv=";
  for (std::size_t i = 0; i < s.recv.size(); ++i) {
    const Transition& x = p.transition(s.recv[i].second);
    r += (i ? "," : "") + g.name(s.recv[i].first) + ":" + p.state_name(x.src) + "|" + p.action(x) + "|" +
         p.state_name(x.dst);
  }
  return r;
}

inline std::string write_trace(const Protocol& p, const Topology& g, const Execution& e) {
  std::string r;
  if (!g.spec.empty()) r += "topology " + g.spec + "\n";
  bool scratch = std::all_of(e.initial.begin(), e.initial.end(), [&](StateId q) { return q == p.init(); });
  if (!scratch) {
    r += "init";
    for (VertexId v = 0; v < g.size(); ++v) r += " " + g.name(v) + "=" + p.state_name(e.initial[v]);
    r += "\n";
  }
  for (const auto& s : e.steps) r += show_step(p, g, s) + "\n";
  return r;
}

// Reads a trace; a `topology` line overrides nothing if topo is given. Lines other than
// topology/init/step are ignored so verdict output can be fed back directly.
inline std::pair<Topology, Execution> read_trace(const Protocol& p, std::string_view src,
                                                 std::optional<Topology> topo = std::nullopt) {
  auto lines = tokenize(src);
  for (const auto& l : lines)
    if (!topo && l.toks[0].text == "topology" && l.toks.size() == 2) topo = parse_topology(l.toks[1].text);
  if (!topo) throw Error("trace has no topology");
  const Topology& g = *topo;
  Execution e{initial_labels(p, g), {}};
  auto split = [](const std::string& s, char c) {
    std::vector<std::string> r;
    std::size_t pos = 0;
    while (true) {
      auto e2 = s.find(c, pos);
      r.push_back(s.substr(pos, e2 == std::string::npos ? std::string::npos : e2 - pos));
      if (e2 == std::string::npos) break;
      pos = e2 + 1;
    }
    return r;
  };
  auto trans = [&](const std::string& s, std::size_t ln, std::size_t col) {
    auto f = split(s, '|');
    if (f.size() != 3) throw Error("bad transition '" + s + "'", ln, col);
    Transition t;
    t.src = p.state(f[0]);
    t.dst = p.state(f[2]);
    const auto& a = f[1];
    if (a == "tau") t.kind = Kind::Tau;
    else if (a.rfind("!!", 0) == 0) t.kind = Kind::Send, t.msg = p.msg(a.substr(2));
    else if (a.rfind("?", 0) == 0) t.kind = Kind::Recv, t.msg = p.msg(a.substr(1));
    else throw Error("bad action '" + a + "'", ln, col);
    auto i = p.find_transition(t);
    if (!i) throw Error("no such transition '" + s + "'", ln, col);
    return *i;
  };
  for (const auto& l : lines) {
    const auto& kw = l.toks[0].text;
    try {
      if (kw == "init") {
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
          auto kv = split(l.toks[i].text, '=');
          if (kv.size() != 2) throw Error("expected vertex=state", l.no, l.toks[i].col);
          e.initial[g.vertex(kv[0])] = p.state(kv[1]);
        }
      } else if (kw == "step") {
        Step s;
        bool have_v = false, have_t = false;
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
          const auto& tk = l.toks[i].text;
          if (tk.rfind("v=", 0) == 0) s.v = g.vertex(tk.substr(2)), have_v = true;
          else if (tk.rfind("t=", 0) == 0) s.t = trans(tk.substr(2), l.no, l.toks[i].col), have_t = true;
          else if (tk.rfind("recv=", 0) == 0) {
            auto body = tk.substr(5);
            if (body.empty()) continue;
            for (const auto& item : split(body, ',')) {
              auto c = item.find(':');
              if (c == std::string::npos) throw Error("bad receiver '" + item + "'", l.no, l.toks[i].col);
              s.recv.emplace_back(g.vertex(item.substr(0, c)), trans(item.substr(c + 1), l.no, l.toks[i].col));
            }
          } else {
            throw Error("unexpected field '" + tk + "'", l.no, l.toks[i].col);
          }
        }
        if (!have_v || !have_t) throw Error("step needs v= and t=", l.no, 1);
        e.steps.push_back(std::move(s));
      }
    } catch (const Error& err) {
      if (err.line) throw;
      throw Error(err.what(), l.no, l.toks[0].col);
    }
  }
  return {g, e};
}

inline std::string verdict_line(const CoverVerdict& v) {
  switch (v.answer) {
    case Answer::Coverable:
      return "COVERABLE vertex=" + v.topo.name(v.vertex) + " len=" + std::to_string(v.witness.steps.size());
    case Answer::NotCoverable: return "NOT_COVERABLE";
    default: return "UNKNOWN";
  }
}

}  // namespace bcast
