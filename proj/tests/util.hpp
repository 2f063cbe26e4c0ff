#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "bcast/protocol.hpp"

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bcast::Protocol load(const std::string& name) { return bcast::parse_protocol(slurp(std::string(DATA_DIR) + "/" + name)); }
