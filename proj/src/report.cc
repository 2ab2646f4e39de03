#include "ncc/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ncc/covering.hpp"
#include "ncc/spec_file.hpp"

namespace ncc {

using ojson = nlohmann::ordered_json;

namespace {

const std::vector<Invariant> kAllInvariants{Invariant::ncc, Invariant::nac, Invariant::peo,
                                            Invariant::meo, Invariant::d,   Invariant::classes};

std::mutex& key_mutex(const std::string& key) {
  static std::mutex stripes[64];
  return stripes[std::hash<std::string>{}(key) % 64];
}

std::optional<ojson> cache_read(const std::filesystem::path& dir, const std::string& key,
                                const std::string& input_hash, const std::string& invariant) {
  std::lock_guard lock(key_mutex(key));
  std::ifstream in(dir / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    ojson entry = ojson::parse(in);
    if (entry.at("input_hash") != input_hash || entry.at("invariant") != invariant ||
        entry.at("tool_version") != kToolVersion)
      return std::nullopt;
    return entry;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_write(const std::filesystem::path& dir, const std::string& key, const ojson& entry) {
  static std::atomic<unsigned long> counter{0};
  std::lock_guard lock(key_mutex(key));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << std::this_thread::get_id() << "." << counter++;
  const std::filesystem::path tmp = dir / tmp_name.str();
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << entry.dump() << "\n";
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, dir / (key + ".json"), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

/// Element of largest order in a cyclic subgroup, least index first.
Elem cyclic_generator(const FiniteGroup& g, const SubgroupHandle& h) {
  for (Elem x : h.elements)
    if (element_order(g, x) == h.order()) return x;
  throw std::logic_error("witness subgroup is not cyclic");
}

std::vector<Elem> subgroup_generators(const SubgroupHandle& h) {
  InducedGroup ig = induced_group(h);
  std::vector<Elem> out;
  for (Elem x : greedy_generators(ig.group)) out.push_back(ig.embedding[x]);
  std::sort(out.begin(), out.end());
  return out;
}

struct Failure {
  std::string message;
};

ojson compute_invariant(Invariant inv, const FiniteGroup& g, const RunOptions& options) {
  switch (inv) {
    case Invariant::ncc: {
      CoverCertificate cert = ncc(g);
      if (!verify_cover(AutAction::inner(g), cert)) throw Failure{"ncc certificate does not cover the group"};
      ojson out;
      out["value"] = cert.value;
      ojson w = ojson::array();
      for (const SubgroupHandle& h : cert.witnesses) w.push_back(cyclic_generator(g, h));
      out["witness_generators"] = w;
      out["verified"] = true;
      if (options.oracle) {
        const std::size_t o = ncc_oracle(g);
        out["oracle"] = o;
        if (o != cert.value)
          throw Failure{"ncc " + std::to_string(cert.value) + " disagrees with oracle " + std::to_string(o)};
      }
      return out;
    }
    case Invariant::nac: {
      CoverCertificate cert = nac(g);
      if (!verify_cover(AutAction::inner(g), cert)) throw Failure{"nac certificate does not cover the group"};
      ojson out;
      out["value"] = cert.value;
      ojson w = ojson::array();
      for (const SubgroupHandle& h : cert.witnesses) w.push_back(subgroup_generators(h));
      out["witness_generators"] = w;
      out["verified"] = true;
      return out;
    }
    case Invariant::peo: return peo(g);
    case Invariant::meo: return meo(g);
    case Invariant::d: {
      const std::uint64_t p = prime_of_pgroup(g.order());
      if (p < 2) return nullptr;
      return d_min_generators(g, p);
    }
    case Invariant::classes: return conjugacy_classes(g).classes.size();
  }
  return nullptr;
}

TargetResult process(const Target& target, const RunOptions& options) {
  TargetResult result;
  result.name = target.name;
  ojson report;
  report["target"] = target.name;

  GroupSpecFile spec;
  try {
    spec = GroupSpecFile::parse(target.text);
  } catch (const ParseError& e) {
    report["error"] = std::string("parse error: ") + e.what();
    result.semantic_error = true;
    result.report = report.dump();
    return result;
  } catch (const SemanticError& e) {
    report["error"] = std::string("semantic error: ") + e.what();
    result.semantic_error = true;
    result.report = report.dump();
    return result;
  }
  const std::string canonical = spec.serialize();
  const std::string input_hash = sha256_hex(canonical);
  report["input_hash"] = input_hash;

  std::optional<FiniteGroup> group;
  std::optional<std::string> build_failure;
  auto get_group = [&]() -> const FiniteGroup* {
    if (group) return &*group;
    if (build_failure) return nullptr;
    try {
      group = spec.build();
      return &*group;
    } catch (const SizeError& e) {
      build_failure = e.what();
    } catch (const SemanticError& e) {
      build_failure = std::string("semantic error: ") + e.what();
      result.semantic_error = true;
    }
    return nullptr;
  };

  ojson values, notes = ojson::array(), timings;
  std::optional<std::string> label;
  std::optional<std::size_t> order;
  bool all_hits = !options.compute.empty();
  for (Invariant inv : options.compute) {
    std::string inv_name = to_string(inv);
    if (inv == Invariant::ncc && options.oracle) inv_name += "+oracle";
    const std::string key = sha256_hex(canonical + '\0' + inv_name + '\0' + kToolVersion);
    if (options.use_cache) {
      if (auto entry = cache_read(options.cache_dir, key, input_hash, inv_name)) {
        values[to_string(inv)] = (*entry)["result"];
        label = (*entry)["group"].get<std::string>();
        order = (*entry)["order"].get<std::size_t>();
        if (options.timings) timings[to_string(inv)] = 0.0;
        continue;
      }
    }
    all_hits = false;
    const FiniteGroup* g = get_group();
    if (!g) break;
    label = g->label();
    order = g->order();
    const auto start = std::chrono::steady_clock::now();
    try {
      ojson value = compute_invariant(inv, *g, options);
      values[to_string(inv)] = value;
      if (options.use_cache) {
        ojson entry;
        entry["input_hash"] = input_hash;
        entry["invariant"] = inv_name;
        entry["tool_version"] = kToolVersion;
        entry["group"] = g->label();
        entry["order"] = g->order();
        entry["result"] = value;
        cache_write(options.cache_dir, key, entry);
      }
    } catch (const SizeError& e) {
      values[to_string(inv)] = nullptr;
      notes.push_back(to_string(inv) + " skipped: " + e.what());
    } catch (const Failure& f) {
      values[to_string(inv)] = nullptr;
      notes.push_back("invariant failure: " + f.message);
      result.invariant_failure = true;
    }
    if (options.timings)
      timings[to_string(inv)] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (build_failure) {
    if (result.semantic_error) {
      report["error"] = *build_failure;
    } else {
      notes.push_back(*build_failure);
    }
  }

  if (values.contains("ncc") && values.contains("nac") && !values["ncc"].is_null() && !values["nac"].is_null() &&
      values["nac"]["value"].get<std::size_t>() > values["ncc"]["value"].get<std::size_t>()) {
    notes.push_back("invariant failure: nac exceeds ncc");
    result.invariant_failure = true;
  }
  if (values.contains("peo") && values.contains("meo") && !values["peo"].is_null() && !values["meo"].is_null()) {
    auto p = values["peo"].get<std::vector<std::uint64_t>>();
    for (std::uint64_t m : values["meo"].get<std::vector<std::uint64_t>>())
      if (std::find(p.begin(), p.end(), m) == p.end()) {
        notes.push_back("invariant failure: MEO not contained in PEO");
        result.invariant_failure = true;
        break;
      }
  }

  if (label) report["group"] = *label;
  if (order) report["order"] = *order;
  for (Invariant inv : kAllInvariants)
    if (values.contains(to_string(inv))) report[to_string(inv)] = values[to_string(inv)];
  if (!notes.empty()) report["notes"] = notes;
  if (options.timings) report["timings_ms"] = timings;
  result.cache_hit = all_hits;
  result.report = report.dump();
  return result;
}

}  // namespace

std::string to_string(Invariant inv) {
  switch (inv) {
    case Invariant::ncc: return "ncc";
    case Invariant::nac: return "nac";
    case Invariant::peo: return "peo";
    case Invariant::meo: return "meo";
    case Invariant::d: return "d";
    case Invariant::classes: return "classes";
  }
  return "?";
}

Invariant parse_invariant(const std::string& s) {
  for (Invariant inv : kAllInvariants)
    if (to_string(inv) == s) return inv;
  throw std::invalid_argument("unknown invariant '" + s + "'");
}

std::vector<Invariant> parse_invariant_list(const std::string& s) {
  std::vector<char> want(kAllInvariants.size(), 0);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    want[static_cast<std::size_t>(parse_invariant(item))] = 1;
  }
  std::vector<Invariant> out;
  for (Invariant inv : kAllInvariants)
    if (want[static_cast<std::size_t>(inv)]) out.push_back(inv);
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::vector<Target> load_targets(const std::filesystem::path& path) {
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return Target{p.string(), os.str()};
  };
  if (!std::filesystem::is_directory(path)) return {read(path)};
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Target> out;
  for (const auto& f : files) out.push_back(read(f));
  return out;
}

std::vector<TargetResult> run(const std::vector<Target>& targets, const RunOptions& options) {
  std::vector<TargetResult> results(targets.size());
  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(1, targets.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < targets.size(); i = next++) {
      try {
        results[i] = process(targets[i], options);
      } catch (const std::exception& e) {
        ojson report;
        report["target"] = targets[i].name;
        report["error"] = std::string("internal error: ") + e.what();
        results[i].name = targets[i].name;
        results[i].report = report.dump();
        results[i].invariant_failure = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return results;
}

std::string report_to_text(const std::string& json_line) {
  const ojson j = ojson::parse(json_line);
  std::ostringstream os;
  for (const auto& [key, value] : j.items()) {
    if (value.is_object() && value.contains("value")) {
      os << key << ": " << value["value"].dump();
      if (value.contains("oracle")) os << " (oracle " << value["oracle"].dump() << ")";
      os << "\n";
    } else if (value.is_string()) {
      os << key << ": " << value.get<std::string>() << "\n";
    } else {
      os << key << ": " << value.dump() << "\n";
    }
  }
  return os.str();
}

std::string tower_to_json(const TowerReport& r) {
  ojson j;
  j["tower"] = r.base.to_string();
  j["p"] = r.base.p;
  j["variant"] = to_string(r.base.variant);
  j["i"] = r.base.lower_level;
  j["kmin"] = r.kmin;
  j["kmax"] = r.kmax;
  ojson rows = ojson::array();
  for (const TowerRow& row : r.rows) {
    ojson x;
    x["k"] = row.k;
    x["order"] = row.order ? ojson(*row.order) : ojson(nullptr);
    x["ncc"] = row.ncc ? ojson(*row.ncc) : ojson(nullptr);
    if (!row.note.empty()) x["note"] = row.note;
    if (r.subgroup_columns) {
      ojson cols = ojson::array();
      for (const auto& c : row.subgroup_ncc) cols.push_back(c ? ojson(*c) : ojson(nullptr));
      x["index_p_subgroup_ncc"] = cols;
    }
    rows.push_back(x);
  }
  j["rows"] = rows;
  j["nondecreasing"] = r.nondecreasing;
  j["strictly_increasing"] = r.strictly_increasing;
  j["stabilization_level"] = r.stabilization_level ? ojson(*r.stabilization_level) : ojson(nullptr);
  return j.dump();
}

std::string tower_to_text(const TowerReport& r) {
  std::ostringstream os;
  os << "tower " << to_string(r.base.variant) << " p=" << r.base.p << " i=" << r.base.lower_level << " k="
     << r.kmin << ".." << r.kmax << "\n";
  os << std::left << std::setw(4) << "k" << std::setw(10) << "order" << std::setw(6) << "ncc";
  for (std::size_t c = 0; c < r.subgroup_columns; ++c) os << std::setw(6) << ("H" + std::to_string(c));
  os << "\n";
  for (const TowerRow& row : r.rows) {
    os << std::setw(4) << row.k << std::setw(10) << (row.order ? std::to_string(*row.order) : "-") << std::setw(6)
       << (row.ncc ? std::to_string(*row.ncc) : "-");
    for (const auto& c : row.subgroup_ncc) os << std::setw(6) << (c ? std::to_string(*c) : "-");
    if (!row.note.empty()) os << row.note;
    os << "\n";
  }
  os << "nondecreasing: " << (r.nondecreasing ? "yes" : "no") << "\n";
  os << "strictly increasing: " << (r.strictly_increasing ? "yes" : "no") << "\n";
  os << "first stabilization: " << (r.stabilization_level ? std::to_string(*r.stabilization_level) : "not observed")
     << "\n";
  return os.str();
}

}  // namespace ncc
