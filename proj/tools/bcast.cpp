#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bcast/line_cover.hpp"
#include "bcast/minsky.hpp"
#include "bcast/protocol.hpp"
#include "bcast/semantics.hpp"
#include "bcast/star_cover.hpp"
#include "bcast/topology.hpp"
#include "bcast/vass.hpp"

using namespace bcast;

namespace {

std::string read_file(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

// wraps parse errors with the file name
template <class F>
auto parse_file(const std::string& path, F&& parse) {
  try {
    return parse(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ":" + e.what());
  }
}

Protocol load_protocol(const std::string& path) { return parse_file(path, [](const std::string& s) { return parse_protocol(s); }); }

// a literal like line:4, or an edge file
Topology load_topology(const std::string& spec) {
  auto c = spec.find(':');
  if (c != std::string::npos) {
    auto kind = spec.substr(0, c);
    if (kind == "line" || kind == "clique" || kind == "star" || kind == "tree") return parse_topology(spec);
  }
  return parse_file(spec, [](const std::string& s) { return parse_edge_file(s); });
}

StateId target_state(const Protocol& p, const std::string& q) {
  auto s = p.find_state(q);
  if (!s) throw Error("unknown target state '" + q + "'");
  return *s;
}

int report(const Protocol& p, const CoverVerdict& v, const std::string& witness) {
  std::string line = verdict_line(v);
  if (!v.info.empty()) line += " " + v.info;
  std::cout << line << "\n";
  if (v.answer == Answer::Coverable && !witness.empty()) write_file(witness, write_trace(p, v.topo, v.witness));
  return v.answer == Answer::Unknown ? 2 : 0;
}

std::string partition_table(const Protocol& p, const PhasePartition& pp) {
  std::string r;
  auto row = [&](Phase ph) {
    std::string line = show(ph) + ":";
    for (StateId q = 0; q < p.num_states(); ++q)
      if (pp.label[q].i == ph.i && (ph.i == 0 || pp.label[q].r == ph.r)) line += " " + p.state_name(q);
    r += line + "\n";
  };
  row(Phase{0, false});
  for (unsigned i = 1; i <= pp.k; ++i) {
    row(Phase{static_cast<std::uint8_t>(i), false});
    row(Phase{static_cast<std::uint8_t>(i), true});
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverability tools for broadcast networks"};
  app.require_subcommand(1);
  bool timing = false;
  std::uint64_t seed = 0;
  app.add_flag("--timing", timing, "print elapsed time to stderr");
  app.add_option("--seed", seed, "seed for randomized choices")->capture_default_str();

  std::string file, out, target, topo, family, witness, trace, root, kind;
  unsigned k = 0;
  std::size_t max_depth = 0, max_configs = 0, bound = 8;
  std::function<int()> run;

  auto* check = app.add_subcommand("check", "infer a phase partition");
  check->add_option("file", file, "protocol file")->required();
  check->callback([&] {
    run = [&] {
      auto p = load_protocol(file);
      auto pp = infer_phase_partition(p);
      if (!pp) {
        std::cout << "NOT_PHASE_BOUNDED\n";
        return 0;
      }
      std::cout << "PHASE_BOUNDED k=" << pp->k << "\n" << partition_table(p, *pp);
      return 0;
    };
  });

  auto* unfold = app.add_subcommand("unfold", "k-unfolding");
  unfold->add_option("file", file)->required();
  unfold->add_option("--k", k, "number of phases")->required();
  unfold->add_option("-o", out, "output file");
  unfold->callback([&] {
    run = [&] {
      write_file(out, print_protocol(k_unfold(load_protocol(file), k)));
      return 0;
    };
  });

  auto* lines = app.add_subcommand("cover-lines", "cover over all lines, k <= 2");
  lines->add_option("file", file)->required();
  lines->add_option("--target", target)->required();
  lines->add_option("--max-configs", max_configs, "configuration budget per pair");
  lines->add_option("--witness", witness, "write a trace of the five-vertex run");
  lines->callback([&] {
    run = [&] {
      auto p = load_protocol(file);
      SearchOptions o;
      o.max_configs = max_configs;
      return report(p, cover_lines(p, target_state(p, target), o), witness);
    };
  });

  auto* star = app.add_subcommand("cover-1pb", "cover over all graphs, k <= 1");
  star->add_option("file", file)->required();
  star->add_option("--target", target)->required();
  star->add_option("--witness", witness, "write a trace of the star run");
  star->callback([&] {
    run = [&] {
      auto p = load_protocol(file);
      return report(p, cover_1pb(p, target_state(p, target)), witness);
    };
  });

  auto* brute = app.add_subcommand("brute", "exhaustive search on one topology or a family");
  brute->add_option("file", file)->required();
  brute->add_option("--target", target)->required();
  auto* t_opt = brute->add_option("--topology", topo, "line:N, star:N, clique:N, tree:{...} or an edge file");
  auto* f_opt = brute->add_option("--family", family, "lines:N, stars:N or trees:H,D,M");
  t_opt->excludes(f_opt);
  brute->add_option("--max-depth", max_depth);
  brute->add_option("--max-configs", max_configs);
  brute->add_option("--witness", witness);
  brute->callback([&] {
    run = [&] {
      if (topo.empty() == family.empty()) throw Error("give exactly one of --topology and --family");
      auto p = load_protocol(file);
      SearchOptions o;
      if (max_depth) o.max_depth = max_depth;
      o.max_configs = max_configs;
      auto q = target_state(p, target);
      auto v = topo.empty() ? brute_force_cover_family(p, q, family, o) : brute_force_cover(p, q, load_topology(topo), o);
      return report(p, v, witness);
    };
  });

  auto* gm = app.add_subcommand("gen-minsky", "protocol of the Minsky machine reduction");
  gm->add_option("machine", file)->required();
  gm->add_option("-o", out);
  gm->add_option("--witness", witness, "also write the halting execution");
  gm->add_option("--bound", bound, "counter bound when searching the halting run")->capture_default_str();
  gm->callback([&] {
    run = [&] {
      auto m = parse_file(file, [](const std::string& s) { return parse_minsky(s); });
      auto p = protocol_from_minsky(m);
      write_file(out, print_protocol(p));
      if (witness.empty()) return 0;
      auto r = find_halting_run(m, bound);
      if (!r) {
        std::cerr << "no halting run with counters <= " << bound << "\n";
        return 2;
      }
      auto w = build_halting_witness(m, *r);
      write_file(witness, write_trace(p, w.topo, w.exec));
      return 0;
    };
  });

  auto* gv = app.add_subcommand("gen-vass", "protocol of the VASS reduction");
  gv->add_option("vass", file)->required();
  gv->add_option("-o", out);
  gv->add_option("--final", root, "VASS state to name as the target");
  gv->callback([&] {
    run = [&] {
      auto v = parse_file(file, [](const std::string& s) { return parse_vass(s); });
      std::uint32_t sf = root.empty() ? v.init() : v.state(root);
      std::uint32_t tq = 0;
      auto p = protocol_from_vass(v, v.init(), sf, &tq);
      std::string head = root.empty() ? "" : "# target " + p.state_name(tq) + "\n";
      write_file(out, head + print_protocol(p));
      return 0;
    };
  });

  auto* ut = app.add_subcommand("unfold-tree", "lift an execution onto the unfolding tree");
  ut->add_option("file", file)->required();
  ut->add_option("--topology", topo, "graph of the execution (default: from the trace)");
  ut->add_option("--witness", trace, "trace to lift")->required();
  ut->add_option("--root", root, "tree root (default: vertex of the last step)");
  ut->add_option("-o", out);
  ut->callback([&] {
    run = [&] {
      auto p = load_protocol(file);
      std::optional<Topology> g;
      if (!topo.empty()) g = load_topology(topo);
      auto [graph, rho] = read_trace(p, read_file(trace), g);
      replay(p, graph, rho);
      VertexId vf = root.empty() ? (rho.steps.empty() ? 0 : rho.steps.back().v) : graph.vertex(root);
      auto u = unfold_to_tree(graph, vf, rho.steps.size());
      auto lifted = lift_execution(p, graph, rho, u);
      write_file(out, write_trace(p, u.tree.g, lifted));
      return 0;
    };
  });

  auto* rp = app.add_subcommand("replay", "check a trace against the step relation");
  rp->add_option("file", file)->required();
  rp->add_option("--trace", trace)->required();
  rp->add_option("--topology", topo);
  rp->callback([&] {
    run = [&] {
      auto p = load_protocol(file);
      std::optional<Topology> g;
      if (!topo.empty()) g = load_topology(topo);
      auto [graph, e] = read_trace(p, read_file(trace), g);
      auto end = replay(p, graph, e);
      std::string line = "VALID steps=" + std::to_string(e.steps.size()) + " final";
      for (VertexId v = 0; v < graph.size(); ++v) line += " " + graph.name(v) + "=" + p.state_name(end[v]);
      std::cout << line << "\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  auto t0 = std::chrono::steady_clock::now();
  int rc = 1;
  try {
    rc = run();
  } catch (const ReplayError& e) {
    std::cout << "INVALID " << e.what() << "\n";
    rc = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 1;
  }
  if (timing)
    std::cerr << "time=" << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << "s\n";
  return rc;
}
