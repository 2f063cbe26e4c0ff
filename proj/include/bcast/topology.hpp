#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "text.hpp"

namespace bcast {

using VertexId = std::uint32_t;
using Word = std::vector<std::uint32_t>;

inline const std::string kEpsilon = "\xCE\xB5";  // ε

inline std::string word_name(const Word& w) {
  if (w.empty()) return kEpsilon;
  bool small = std::all_of(w.begin(), w.end(), [](auto x) { return x >= 1 && x <= 9; });
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!small && i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

inline Word parse_word(const std::string& s) {
  if (s.empty() || s == kEpsilon || s == "eps" || s == "e") return {};
  Word w;
  if (s.find('.') != std::string::npos) {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto e = s.find('.', pos);
      if (e == std::string::npos) e = s.size();
      auto part = s.substr(pos, e - pos);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) throw Error("bad tree word '" + s + "'");
      w.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      pos = e + 1;
    }
  } else {
    for (char c : s) {
      if (c < '1' || c > '9') throw Error("bad tree word '" + s + "'");
      w.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  }
  return w;
}

class Topology {
 public:
  VertexId add_vertex(const std::string& name) {
    if (ix_.count(name)) throw Error("duplicate vertex '" + name + "'");
    auto id = static_cast<VertexId>(names_.size());
    names_.push_back(name);
    ix_.emplace(name, id);
    adj_.emplace_back();
    return id;
  }
  void add_edge(VertexId u, VertexId v) {
    if (u == v) throw Error("self-loop on '" + names_[u] + "'");
    auto ins = [](std::vector<VertexId>& a, VertexId x) {
      auto it = std::lower_bound(a.begin(), a.end(), x);
      if (it == a.end() || *it != x) a.insert(it, x);
    };
    ins(adj_[u], v);
    ins(adj_[v], u);
  }
  std::size_t size() const { return names_.size(); }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  bool adjacent(VertexId u, VertexId v) const { return std::binary_search(adj_[u].begin(), adj_[u].end(), v); }
  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VertexId> find(const std::string& n) const {
    auto it = ix_.find(n);
    if (it == ix_.end()) return std::nullopt;
    return it->second;
  }
  VertexId vertex(const std::string& n) const {
    auto v = find(n);
    if (!v) throw Error("unknown vertex '" + n + "'");
    return *v;
  }
  std::size_t num_edges() const {
    std::size_t e = 0;
    for (auto& a : adj_) e += a.size();
    return e / 2;
  }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (auto& a : adj_) d = std::max(d, a.size());
    return d;
  }
  std::string spec;  // literal it was built from, if any

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> ix_;
  std::vector<std::vector<VertexId>> adj_;
};

inline Topology make_line(std::size_t n) {
  if (n < 1) throw Error("line needs n >= 1");
  Topology g;
  for (std::size_t i = 1; i <= n; ++i) g.add_vertex("v" + std::to_string(i));
  for (VertexId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  g.spec = "line:" + std::to_string(n);
  return g;
}

inline Topology make_clique(std::size_t n) {
  if (n < 1) throw Error("clique needs n >= 1");
  Topology g;
  for (std::size_t i = 1; i <= n; ++i) g.add_vertex("v" + std::to_string(i));
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) g.add_edge(i, j);
  g.spec = "clique:" + std::to_string(n);
  return g;
}

// Trees are word-coded; vertex order is lexicographic on words so ε is vertex 0.
struct TreeTopology {
  Topology g;
  std::vector<Word> words;
  std::vector<VertexId> parent;  // none for the root
};

inline TreeTopology make_tree(std::vector<Word> ws) {
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  if (ws.empty() || !ws[0].empty()) throw Error("tree must contain the root");
  TreeTopology t;
  std::map<Word, VertexId> ix;
  for (const auto& w : ws) {
    for (auto x : w)
      if (x == 0) throw Error("tree words use letters >= 1");
    ix[w] = t.g.add_vertex(word_name(w));
    t.words.push_back(w);
  }
  t.parent.assign(ws.size(), ~0u);
  for (std::size_t i = 1; i < ws.size(); ++i) {
    Word pre(ws[i].begin(), ws[i].end() - 1);
    auto it = ix.find(pre);
    if (it == ix.end()) throw Error("tree not prefix-closed at '" + word_name(ws[i]) + "'");
    t.g.add_edge(it->second, static_cast<VertexId>(i));
    t.parent[i] = it->second;
  }
  std::string s = "tree:{";
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? "," : "") + word_name(ws[i]);
  t.g.spec = s + "}";
  return t;
}

// root ε with n leaves 1..n
inline TreeTopology make_star_tree(std::size_t n) {
  std::vector<Word> ws{{}};
  for (std::uint32_t i = 1; i <= n; ++i) ws.push_back({i});
  auto t = make_tree(ws);
  t.g.spec = "star:" + std::to_string(n);
  return t;
}

inline Topology make_star(std::size_t n) { return make_star_tree(n).g; }

inline Topology parse_edge_file(std::string_view src) {
  Topology g;
  auto v = [&](const std::string& n) {
    if (auto x = g.find(n)) return *x;
    return g.add_vertex(n);
  };
  for (const auto& l : tokenize(src)) {
    const auto& kw = l.toks[0].text;
    try {
      if (kw == "edge" && l.toks.size() == 3) {
        auto a = v(l.toks[1].text), b = v(l.toks[2].text);
        g.add_edge(a, b);
      } else if (kw == "vertex" && l.toks.size() >= 2) {
        for (std::size_t i = 1; i < l.toks.size(); ++i) v(l.toks[i].text);
      } else {
        throw Error("expected: edge <u> <v>");
      }
    } catch (const Error& e) {
      if (e.line) throw;
      throw Error(e.what(), l.no, l.toks[0].col);
    }
  }
  if (g.size() == 0) throw Error("empty topology");
  return g;
}

inline std::vector<Word> parse_tree_literal(const std::string& body) {
  // body is "{w1,w2,...}"
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') throw Error("malformed tree literal");
  std::vector<Word> ws;
  std::string in = body.substr(1, body.size() - 2);
  std::size_t pos = 0;
  while (pos <= in.size()) {
    auto e = in.find(',', pos);
    if (e == std::string::npos) e = in.size();
    std::string tok = in.substr(pos, e - pos);
    tok.erase(0, tok.find_first_not_of(' '));
    if (auto last = tok.find_last_not_of(' '); last != std::string::npos) tok.erase(last + 1);
    ws.push_back(parse_word(tok));
    pos = e + 1;
  }
  return ws;
}

// line:N, star:N, clique:N, tree:{...}
inline Topology parse_topology(const std::string& spec) {
  auto c = spec.find(':');
  if (c == std::string::npos) throw Error("bad topology literal '" + spec + "'");
  std::string kind = spec.substr(0, c), arg = spec.substr(c + 1);
  if (kind == "tree") return make_tree(parse_tree_literal(arg)).g;
  if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
    throw Error("bad topology size in '" + spec + "'");
  std::size_t n = std::stoul(arg);
  if (kind == "line") return make_line(n);
  if (kind == "clique") return make_clique(n);
  if (kind == "star") return make_star(n);
  throw Error("unknown topology kind '" + kind + "'");
}

// ---- unfolding of a graph into a tree rooted at vf, depth bounded by n

struct Unfolding {
  TreeTopology tree;
  std::vector<VertexId> lambda;  // tree vertex -> graph vertex
};

inline Unfolding unfold_to_tree(const Topology& g, VertexId vf, std::size_t n) {
  struct Node {
    Word w;
    VertexId img;
    VertexId parent_img;
  };
  std::vector<Node> nodes{{{}, vf, ~0u}};
  std::vector<std::size_t> frontier{0};
  for (std::size_t depth = 0; depth < n; ++depth) {
    std::vector<std::size_t> next;
    for (auto ni : frontier) {
      Node cur = nodes[ni];
      std::uint32_t x = 0;
      for (auto u : g.neighbors(cur.img)) {
        if (depth > 0 && u == cur.parent_img) continue;
        Word w = cur.w;
        w.push_back(++x);
        nodes.push_back({w, u, cur.img});
        next.push_back(nodes.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Word> ws;
  std::map<Word, VertexId> img;
  for (auto& nd : nodes) {
    ws.push_back(nd.w);
    img[nd.w] = nd.img;
  }
  Unfolding u{make_tree(ws), {}};
  for (auto& w : u.tree.words) u.lambda.push_back(img[w]);
  return u;
}

}  // namespace bcast
