#include "bscoop/cli.hpp"

#include "bscoop/codec.hpp"
#include "bscoop/optimizer.hpp"
#include "bscoop/simulator.hpp"
#include "bscoop/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bscoop {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

Rat rat_from_json(const Json& value, const std::string& key) {
  if (value.is_string()) return rat_from_string(value.get<std::string>());
  if (value.is_number_integer()) return Rat(value.get<long long>());
  if (value.is_number_float()) return rat_from_double(value.get<double>());
  throw ConfigError("field '" + key + "' must be a number or numeric string");
}

int int_from_json(const Json& value, const std::string& key) {
  if (!value.is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
  return value.get<int>();
}

Json rat_json(const Rat& q) {
  return Json{{"decimal", rat_to_decimal(q)}, {"ratio", rat_to_fraction(q)}};
}

std::string render_3dec(const Rat& q) {
  if (boost::multiprecision::denominator(q) == 1)
    return boost::multiprecision::numerator(q).str();
  std::string fixed = rat_to_fixed(q, 3);
  size_t last = fixed.find_last_not_of('0');
  if (fixed[last] == '.') --last;
  return fixed.substr(0, last + 1);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

std::vector<uint8_t> read_binary(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(file),
                              std::istreambuf_iterator<char>());
}

void write_binary(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

ConfigFile parse_config_text(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::vector<std::string> known = {
      "n",     "k",     "d",   "t",    "M",     "w",
      "b",     "F",     "grid", "seed", "rounds", "rho",
      "beta",  "r",     "departures_per_round", "script", "verify_every", "file_size"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw ConfigError("unknown config key '" + item.key() + "'");
  }

  ConfigFile config;
  auto require = [&](const char* key) -> const Json& {
    if (!doc.contains(key)) throw ConfigError(std::string("missing config key '") + key + "'");
    return doc.at(key);
  };
  config.params.n = int_from_json(require("n"), "n");
  config.params.k = int_from_json(require("k"), "k");
  config.params.d = int_from_json(require("d"), "d");
  config.params.t = int_from_json(require("t"), "t");
  config.params.M = int_from_json(require("M"), "M");
  config.params.F = rat_from_json(require("F"), "F");
  const Json& w = require("w");
  const Json& b = require("b");
  if (!w.is_array() || !b.is_array()) throw ConfigError("'w' and 'b' must be arrays");
  for (const auto& item : w) config.params.w.push_back(rat_from_json(item, "w"));
  for (const auto& item : b) config.params.b.push_back(rat_from_json(item, "b"));

  auto violations = validate_params(config.params);
  if (!violations.empty()) {
    std::string joined;
    for (const auto& v : violations) joined += (joined.empty() ? "" : "; ") + v;
    throw ConfigError("invalid parameters: " + joined);
  }

  if (doc.contains("grid")) config.grid = int_from_json(doc["grid"], "grid");
  if (doc.contains("seed")) config.seed = doc["seed"].get<uint64_t>();
  if (doc.contains("rounds")) config.rounds = int_from_json(doc["rounds"], "rounds");
  if (doc.contains("rho")) config.rho = int_from_json(doc["rho"], "rho");
  if (doc.contains("beta")) config.beta = rat_from_json(doc["beta"], "beta");
  if (doc.contains("r")) {
    std::vector<Rat> r;
    for (const auto& item : doc["r"]) r.push_back(rat_from_json(item, "r"));
    config.r = std::move(r);
  }
  if (doc.contains("departures_per_round"))
    config.departures_per_round = int_from_json(doc["departures_per_round"], "departures_per_round");
  if (doc.contains("script")) {
    std::vector<std::vector<int>> script;
    for (const auto& round : doc["script"]) {
      std::vector<int> ids;
      for (const auto& id : round) ids.push_back(int_from_json(id, "script"));
      script.push_back(std::move(ids));
    }
    config.script = std::move(script);
  }
  if (doc.contains("verify_every"))
    config.verify_every = int_from_json(doc["verify_every"], "verify_every");
  if (doc.contains("file_size")) config.file_size = doc["file_size"].get<uint64_t>();
  return config;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str());
}

namespace {

std::string curve_to_csv(const std::vector<OperatingPoint>& curve) {
  std::ostringstream csv;
  csv << "alpha,gamma,rho,beta,beta_prime,alpha_ratio,gamma_ratio,beta_ratio,beta_prime_ratio\n";
  for (const auto& point : curve) {
    csv << rat_to_decimal(point.alpha) << "," << rat_to_decimal(point.gamma) << ","
        << point.witness.selector.rho << "," << rat_to_decimal(point.witness.beta) << ","
        << rat_to_decimal(point.witness.beta_prime) << "," << rat_to_fraction(point.alpha) << ","
        << rat_to_fraction(point.gamma) << "," << rat_to_fraction(point.witness.beta) << ","
        << rat_to_fraction(point.witness.beta_prime) << "\n";
  }
  return csv.str();
}

}  // namespace

int cmd_tradeoff(const ConfigFile& config, int grid, const std::string& out_path,
                 const std::string& baseline_out_path, std::ostream& out, std::ostream& err) {
  try {
    int grid_size = grid > 0 ? grid : config.grid.value_or(17);
    auto curve = tradeoff_curve(config.params, grid_size);
    write_text(out_path, curve_to_csv(curve), out);
    if (!baseline_out_path.empty()) {
      SystemParams local = config.params;
      local.M = 0;
      local.w.clear();
      local.b.clear();
      auto baseline = tradeoff_curve(local, grid_size);
      write_text(baseline_out_path, curve_to_csv(baseline), out);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "tradeoff: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_points(const ConfigFile& config, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  try {
    const SystemParams& p = config.params;
    auto [mscr, mbccr] = optimal_points(p);
    auto point_json = [](const OperatingPoint& point) {
      Json r = Json::array();
      for (const auto& rl : point.witness.r) r.push_back(rat_to_fraction(rl));
      return Json{{"alpha", rat_json(point.alpha)},
                  {"gamma", rat_json(point.gamma)},
                  {"beta", rat_json(point.witness.beta)},
                  {"beta_prime", rat_json(point.witness.beta_prime)},
                  {"r", r},
                  {"rho", point.witness.selector.rho}};
    };
    Json doc{{"mscr", point_json(mscr)},
             {"mbccr", point_json(mbccr)},
             {"rho_mscr", mscr.witness.selector.rho},
             {"rho_mbccr", mbccr.witness.selector.rho}};
    write_text(out_path, doc.dump(2) + "\n", out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "points: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_verify(uint64_t seed, bool exhaustive, bool mutate_psi, std::ostream& out,
               std::ostream& err) {
  try {
    VerifyOptions options;
    options.seed = seed;
    options.exhaustive = exhaustive;
    if (exhaustive) {
      options.bound_samples = 50;
      options.flow_samples = 3;
      options.random_histories = 3;
    }
    if (mutate_psi) {
      options.psi_hook = [](int g, int t) { return psi(g, t) + (g > 0 ? 1 : 0); };
    }
    VerifyReport report = run_verification(options);
    out << "bound equivalence checks: " << report.bound_checks << "\n";
    out << "flow tightness checks:    " << report.flow_tight_checks << "\n";
    out << "flow soundness checks:    " << report.flow_sound_checks << "\n";
    out << "supply-regime rescales:   " << report.regime_rescales << "\n";
    out << "counterexamples:          " << report.counterexamples.size() << "\n";
    for (const auto& cx : report.counterexamples) out << "counterexample: " << cx << "\n";
    return report.ok() ? kExitOk : kExitCounterexample;
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << "\n";
    return kExitUsage;
  }
}

namespace {

struct Table1Scenario {
  std::string name;
  SystemParams params;
  Rat beta;
  std::vector<Rat> r;
};

Table1Scenario builtin_scenario(int index) {
  Table1Scenario s;
  s.params.n = 4;
  s.params.k = 2;
  s.params.d = 2;
  s.params.t = 2;
  s.params.M = 2;
  s.params.b = {Rat(1), Rat(1)};
  s.params.F = Rat(4);
  if (index == 1) {
    s.name = "Scenario 1";
    s.params.w = {rat_from_string("1.1"), rat_from_string("1.7")};
    s.beta = rat_from_string("0.5");
    s.r = {Rat(1), Rat(1)};
  } else {
    s.name = "Scenario 2";
    s.params.w = {rat_from_string("1.3"), rat_from_string("2.1")};
    s.beta = rat_from_string("2/3");
    s.r = {Rat(1), Rat(0)};
  }
  return s;
}

}  // namespace

int cmd_table1(const std::optional<ConfigFile>& config, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  try {
    std::vector<Table1Scenario> scenarios;
    if (config) {
      Table1Scenario custom;
      custom.name = "Custom";
      custom.params = config->params;
      if (!config->beta) throw ConfigError("table1 with --config requires 'beta'");
      custom.beta = *config->beta;
      custom.r = config->r.value_or(std::vector<Rat>(custom.params.M, Rat(1)));
      scenarios.push_back(std::move(custom));
    } else {
      scenarios.push_back(builtin_scenario(1));
      scenarios.push_back(builtin_scenario(2));
    }

    Json rows = Json::array();
    std::ostringstream table;
    table << "scenario    beta   w1    w2    NoCoopLocal  CoopLocal  CoopLayer  FullLayer\n";
    for (const auto& s : scenarios) {
      BaselineCosts costs = baseline_costs(s.params, s.beta, s.r);
      table << s.name << "  " << render_3dec(s.beta) << "  " << render_3dec(s.params.w[0])
            << "  " << render_3dec(s.params.w[1]) << "  " << render_3dec(costs.no_coop_local)
            << "  " << render_3dec(costs.coop_local) << "  " << render_3dec(costs.coop_layer)
            << "  " << render_3dec(costs.full_layer) << "\n";
      rows.push_back(Json{{"scenario", s.name},
                          {"beta", rat_json(s.beta)},
                          {"w", Json::array({rat_to_fraction(s.params.w[0]),
                                             rat_to_fraction(s.params.w[1])})},
                          {"no_coop_local", rat_json(costs.no_coop_local)},
                          {"coop_local", rat_json(costs.coop_local)},
                          {"coop_layer", rat_json(costs.coop_layer)},
                          {"full_layer", rat_json(costs.full_layer)}});
    }
    out << table.str();
    if (!out_path.empty() && out_path != "-")
      write_text(out_path, Json{{"rows", rows}}.dump(2) + "\n", out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "table1: " << e.what() << "\n";
    return kExitUsage;
  }
}

namespace {

Codec codec_from_config(const ConfigFile& config) {
  if (config.params.d != config.params.k)
    throw ConfigError("the repair construction requires d = k");
  int rho = config.rho.value_or(config.params.M);
  for (int l = 0; l < rho; ++l) {
    if (config.params.b[l] != 1)
      throw ConfigError("the repair construction requires b_l = 1 on used layers");
  }
  return Codec(config.params.n, config.params.k, config.params.t, rho, Field::gf256());
}

std::string node_store_name(int id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "node_%02d.store", id);
  return buf;
}

std::string bs_store_name(int layer) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "bs_%d.store", layer);
  return buf;
}

Codec codec_from_store(const ParsedStore& store) {
  return Codec(store.n, store.k, store.t, store.rho, Field(store.p, store.q, store.poly));
}

Codec::NodeStore to_node_store(const ParsedStore& parsed) {
  if (parsed.is_bs) throw CodecError("expected a node store");
  return Codec::NodeStore{parsed.id, parsed.chunks};
}

Codec::BaseStationStore to_bs_store(const ParsedStore& parsed) {
  if (!parsed.is_bs) throw CodecError("expected a base station store");
  return Codec::BaseStationStore{parsed.id, parsed.chunks};
}

}  // namespace

int cmd_codec_encode(const ConfigFile& config, const std::string& input_path,
                     const std::string& out_dir, std::ostream& out, std::ostream& err) {
  try {
    Codec codec = codec_from_config(config);
    std::vector<uint8_t> file = read_binary(input_path);
    Codec::Encoded encoded = codec.encode(file);

    fs::create_directories(out_dir);
    Json manifest{{"n", codec.n()},     {"k", codec.k()},
                  {"t", codec.t()},     {"rho", codec.rho()},
                  {"chunk_len", encoded.chunk_len}, {"original_len", file.size()},
                  {"stores", Json::array()}};
    for (const auto& store : encoded.nodes) {
      std::string name = node_store_name(store.node_id);
      write_binary((fs::path(out_dir) / name).string(), serialize_node_store(codec, store));
      manifest["stores"].push_back(name);
    }
    for (const auto& station : encoded.stations) {
      std::string name = bs_store_name(station.layer);
      write_binary((fs::path(out_dir) / name).string(), serialize_bs_store(codec, station));
      manifest["stores"].push_back(name);
    }
    write_text((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n", out);
    out << "encoded " << file.size() << " bytes into " << codec.n() << " node stores and "
        << codec.rho() << " base station stores\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "codec encode: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "codec encode: " << e.what() << "\n";
    return kExitData;
  }
}

int cmd_codec_repair(const ConfigFile& config, const std::string& store_dir,
                     const std::vector<int>& failed, std::ostream& out, std::ostream& err) {
  try {
    const SystemParams& p = config.params;
    std::vector<Codec::NodeStore> alive;
    std::vector<Codec::BaseStationStore> stations;
    std::optional<Codec> codec;
    for (int id = 1; id <= p.n; ++id) {
      if (std::find(failed.begin(), failed.end(), id) != failed.end()) continue;
      fs::path path = fs::path(store_dir) / node_store_name(id);
      if (!fs::exists(path)) continue;
      ParsedStore parsed = parse_store(read_binary(path.string()));
      if (!codec) codec.emplace(codec_from_store(parsed));
      alive.push_back(to_node_store(parsed));
    }
    if (!codec) throw CodecError("no node stores found in " + store_dir);
    for (int layer = 1; layer <= codec->rho(); ++layer) {
      fs::path path = fs::path(store_dir) / bs_store_name(layer);
      stations.push_back(to_bs_store(parse_store(read_binary(path.string()))));
    }

    std::vector<int> helper_ids;
    for (const auto& store : alive) helper_ids.push_back(store.node_id);
    if (static_cast<int>(helper_ids.size()) < codec->k())
      throw CodecError("not enough alive stores to repair");
    helper_ids.resize(codec->k());
    std::vector<std::vector<int>> helpers(codec->t(), helper_ids);

    Codec::RepairSession session = codec->repair(alive, stations, failed, helpers);
    for (const auto& store : session.rebuilt) {
      write_binary((fs::path(store_dir) / node_store_name(store.node_id)).string(),
                   serialize_node_store(*codec, store));
    }

    Rat per_newcomer_cost = codec->ledger_cost(session, p.w, p.F);
    Rat data_moved = codec->data_moved_per_newcomer(session, p.F);
    std::vector<Rat> ones(codec->rho(), Rat(1));
    Rat eq9 = mscr_point(p, ones, codec->rho()).gamma;  // d = k construction check

    Json ledger{{"failed", failed},
                {"per_newcomer",
                 Json{{"local_chunks", session.local_chunks_per_newcomer},
                      {"coop_chunks", session.coop_chunks_per_newcomer},
                      {"bs_chunks", session.bs_chunks_per_newcomer},
                      {"data_moved", rat_json(data_moved)},
                      {"cost", rat_json(per_newcomer_cost)},
                      {"closed_form_cost", rat_json(eq9)},
                      {"matches_closed_form", per_newcomer_cost == eq9}}},
                {"session_cost", rat_json(per_newcomer_cost * codec->t())}};
    out << ledger.dump(2) << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "codec repair: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "codec repair: " << e.what() << "\n";
    return kExitData;
  }
}

int cmd_codec_collect(const std::string& store_dir, const std::vector<int>& nodes,
                      const std::string& output_path, std::ostream& out, std::ostream& err) {
  try {
    std::vector<Codec::NodeStore> stores;
    std::optional<Codec> codec;
    for (int id : nodes) {
      fs::path path = fs::path(store_dir) / node_store_name(id);
      ParsedStore parsed = parse_store(read_binary(path.string()));
      if (!codec) codec.emplace(codec_from_store(parsed));
      stores.push_back(to_node_store(parsed));
    }
    if (!codec) throw CodecError("no stores requested");
    std::vector<uint8_t> file = codec->collect(stores);
    write_binary(output_path, file);
    out << "reconstructed " << file.size() << " bytes from " << nodes.size() << " stores\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "codec collect: " << e.what() << "\n";
    return kExitData;
  }
}

int cmd_simulate(const ConfigFile& config, uint64_t seed_override, bool seed_given,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    if (config.params.d != config.params.k)
      throw ConfigError("simulate drives the d = k repair construction");
    Scenario scenario;
    scenario.params = config.params;
    scenario.rho = config.rho.value_or(config.params.M);
    scenario.seed = seed_given ? seed_override : config.seed.value_or(1);
    scenario.rounds = config.rounds.value_or(10);
    scenario.departures_per_round = config.departures_per_round.value_or(0);
    scenario.verify_every = config.verify_every.value_or(1);
    if (config.script) scenario.script = *config.script;
    uint64_t file_size = config.file_size.value_or(4096);
    scenario.file.resize(file_size);
    for (uint64_t i = 0; i < file_size; ++i)
      scenario.file[i] = static_cast<uint8_t>((i * 131 + 17) & 0xFF);

    SimulationTrace trace = run_scenario(scenario);

    std::ostringstream lines;
    Json header{{"seed", trace.seed},
                {"n", config.params.n},
                {"k", config.params.k},
                {"t", config.params.t},
                {"rho", scenario.rho},
                {"rounds", scenario.script.empty() ? scenario.rounds
                                                   : static_cast<int>(scenario.script.size())},
                {"file_size", file_size}};
    lines << header.dump() << "\n";
    for (const auto& record : trace.rounds) {
      Json row{{"round", record.round},
               {"failed", record.failed},
               {"transfers",
                Json{{"local", record.local_chunks},
                     {"coop", record.coop_chunks},
                     {"bs", record.bs_chunks}}},
               {"cost", rat_json(record.round_cost)},
               {"cost_per_newcomer", rat_json(record.cost_per_newcomer)}};
      if (record.verified) row["durable"] = record.durable;
      lines << row.dump() << "\n";
    }
    Json footer{{"total_cost", rat_json(trace.total_cost)},
                {"cluster_died", trace.cluster_died}};
    if (trace.cluster_died) footer["death_reason"] = trace.death_reason;
    lines << footer.dump() << "\n";
    write_text(out_path, lines.str(), out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "simulate: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace bscoop
