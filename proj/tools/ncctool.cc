// Batch front-end: covering invariants of group definition files, quaternion
// quotient towers and central quotient graphs of p-groups.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncc/group.hpp"
#include "ncc/pgroup_lab.hpp"
#include "ncc/quotient_groups.hpp"
#include "ncc/report.hpp"

namespace {

constexpr int kSemanticError = 1;
constexpr int kInvariantFailure = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

long long to_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("bad " + what + ": '" + s + "'");
  return v;
}

std::string gamma_to_json(const ncc::GammaGraph& g) {
  nlohmann::ordered_json j;
  j["gamma"] = {{"p", g.p}, {"d", g.d}, {"k", g.k}, {"max_order", g.max_order}};
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& x = g.vertices[v];
    nlohmann::ordered_json o;
    o["id"] = v;
    o["name"] = x.name;
    o["order"] = x.order;
    o["ncc"] = x.ncc;
    o["d"] = x.d;
    o["fingerprint"] = x.fingerprint.summary();
    o["tree_parent"] = g.tree_parent[v] ? nlohmann::ordered_json(*g.tree_parent[v]) : nlohmann::ordered_json(nullptr);
    vs.push_back(o);
  }
  j["vertices"] = vs;
  nlohmann::ordered_json es = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) es.push_back({{"source", e.source}, {"target", e.target}, {"multiplicity", e.multiplicity}});
  j["edges"] = es;
  j["root"] = g.root ? nlohmann::ordered_json(*g.root) : nlohmann::ordered_json(nullptr);
  j["root_reachable_from_all"] = g.root_reachable_from_all();
  return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal cyclic and abelian covering numbers of finite groups"};
  std::vector<std::string> inputs;
  std::string compute = "ncc";
  std::string tower_spec, gamma_spec, out_path, format = "json";
  std::size_t max_order = ncc::limits().order_cap;
  std::size_t nac_cap = ncc::limits().nac_cap;
  ncc::RunOptions options;
  std::string cache_dir = options.cache_dir.string();
  bool no_cache = false, tower_subgroups = false;
  unsigned jobs = 0;

  app.add_option("--input", inputs, "Group definition file or directory (repeatable)");
  app.add_option("--compute", compute, "Invariants: ncc,nac,peo,meo,d,classes");
  app.add_option("--tower", tower_spec, "Quotient tower: p,variant,i,kmin,kmax");
  app.add_flag("--tower-subgroups", tower_subgroups, "Add ncc columns for index-p subgroups to --tower");
  app.add_option("--gamma", gamma_spec, "Central quotient graph: p,d,k,max-order");
  app.add_option("--max-order", max_order, "Largest group order to construct");
  app.add_option("--nac-cap", nac_cap, "Largest group order for nac");
  app.add_flag("--oracle", options.oracle, "Cross-check ncc against the independent set-cover oracle");
  app.add_option("--cache-dir", cache_dir, "Result cache directory");
  app.add_flag("--no-cache", no_cache, "Neither read nor write the cache");
  app.add_option("--out", out_path, "Write output here instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_flag("--timings", options.timings, "Add per-invariant wall time to reports");
  app.add_option("--jobs", jobs, "Worker threads (0: all cores)");
  app.set_version_flag("--version", std::string(ncc::kToolVersion));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kSemanticError;
  }

  ncc::limits().order_cap = max_order;
  ncc::limits().nac_cap = nac_cap;
  options.cache_dir = cache_dir;
  options.use_cache = !no_cache;
  options.workers = jobs;

  const int modes = !inputs.empty() + !tower_spec.empty() + !gamma_spec.empty();
  if (modes != 1) {
    std::cerr << "error: give exactly one of --input, --tower, --gamma\n";
    return kSemanticError;
  }
  if (format == "dot" && gamma_spec.empty()) {
    std::cerr << "error: --format dot applies to --gamma only\n";
    return kSemanticError;
  }

  std::ostringstream out;
  int status = 0;
  try {
    if (!tower_spec.empty()) {
      auto f = split(tower_spec, ',');
      if (f.size() != 5) throw std::invalid_argument("--tower expects p,variant,i,kmin,kmax");
      ncc::TowerReport r = ncc::tower(static_cast<std::uint64_t>(to_int(f[0], "p")), ncc::parse_variant(f[1]),
                                      static_cast<int>(to_int(f[2], "i")), static_cast<int>(to_int(f[3], "kmin")),
                                      static_cast<int>(to_int(f[4], "kmax")), tower_subgroups);
      out << (format == "text" ? ncc::tower_to_text(r) : ncc::tower_to_json(r) + "\n");
    } else if (!gamma_spec.empty()) {
      auto f = split(gamma_spec, ',');
      if (f.size() != 4) throw std::invalid_argument("--gamma expects p,d,k,max-order");
      ncc::GammaGraph g = ncc::build_gamma_graph(static_cast<std::uint64_t>(to_int(f[0], "p")),
                                                 static_cast<int>(to_int(f[1], "d")),
                                                 static_cast<std::size_t>(to_int(f[2], "k")),
                                                 static_cast<std::size_t>(to_int(f[3], "max-order")));
      if (format == "dot") out << ncc::gamma_to_dot(g);
      else if (format == "text") out << ncc::gamma_to_text(g);
      else out << gamma_to_json(g) << "\n";
      if (!g.root_reachable_from_all()) status = kInvariantFailure;
    } else {
      options.compute = ncc::parse_invariant_list(compute);
      std::vector<ncc::Target> targets;
      for (const std::string& in : inputs) {
        auto t = ncc::load_targets(in);
        targets.insert(targets.end(), t.begin(), t.end());
      }
      for (const ncc::TargetResult& r : ncc::run(targets, options)) {
        if (format == "text") out << "== " << r.name << "\n" << ncc::report_to_text(r.report);
        else out << r.report << "\n";
        if (r.cache_hit) std::cerr << "cache hit: " << r.name << "\n";
        if (r.invariant_failure) status = kInvariantFailure;
        else if (r.semantic_error && status == 0) status = kSemanticError;
      }
    }
  } catch (const ncc::SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariantFailure;
  }

  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    file << out.str();
    if (!file) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kSemanticError;
    }
  }
  return status;
}
