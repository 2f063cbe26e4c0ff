#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bcast {

struct Error : std::runtime_error {
  std::size_t line = 0;
  std::size_t col = 0;
  Error(const std::string& msg) : std::runtime_error(msg) {}
  Error(const std::string& msg, std::size_t l, std::size_t c)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

struct Token {
  std::string text;
  std::size_t col = 0;  // 1-based
};

struct Line {
  std::size_t no = 0;
  std::vector<Token> toks;
};

// Splits source into non-empty lines of whitespace-separated tokens; '#' starts a comment.
inline std::vector<Line> tokenize(std::string_view src) {
  std::vector<Line> out;
  std::size_t no = 0, pos = 0;
  while (pos <= src.size()) {
    std::size_t end = src.find('\n', pos);
    if (end == std::string_view::npos) end = src.size();
    std::string_view raw = src.substr(pos, end - pos);
    ++no;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    Line ln{no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t s = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > s) ln.toks.push_back({std::string(raw.substr(s, i - s)), s + 1});
    }
    if (!ln.toks.empty()) out.push_back(std::move(ln));
    if (end == src.size()) break;
    pos = end + 1;
  }
  return out;
}

// [A-Za-z_][A-Za-z0-9_^',-]*
inline bool is_ident(std::string_view s) {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (s.empty() || !alpha(s[0])) return false;
  for (char c : s.substr(1))
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '^' || c == '\'' || c == ',' || c == '-')) return false;
  return true;
}

inline std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) r += sep;
    r += xs[i];
  }
  return r;
}

}  // namespace bcast
