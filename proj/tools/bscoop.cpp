#include "bscoop/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace bscoop;

int main(int argc, char** argv) {
  CLI::App app{"Base-station-assisted cooperative regeneration toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, baseline_out, in_path, dir_path;
  std::vector<int> id_list;
  uint64_t seed = 1;
  bool seed_given = false;
  int grid = 0;
  bool exhaustive = false, mutate_psi = false;

  auto* tradeoff = app.add_subcommand("tradeoff", "storage vs repair-cost curve as CSV");
  tradeoff->add_option("--config", config_path, "deployment config JSON")->required();
  tradeoff->add_option("--out", out_path, "output CSV path (default stdout)");
  tradeoff->add_option("--grid", grid, "number of alpha grid points");
  tradeoff->add_option("--baseline-out", baseline_out, "also emit the M=0 curve here");

  auto* points = app.add_subcommand("points", "MSCR/MBCCR operating points as JSON");
  points->add_option("--config", config_path, "deployment config JSON")->required();
  points->add_option("--out", out_path, "output JSON path (default stdout)");

  auto* verify = app.add_subcommand("verify", "bound and flow-graph cross-verification");
  verify->add_option("--seed", seed, "sweep seed");
  verify->add_flag("--exhaustive", exhaustive, "acceptance-scale sweep");
  verify->add_flag("--mutate-psi", mutate_psi, "harness self-test: perturb the closed form")
      ->group("");  // hidden

  auto* table1 = app.add_subcommand("table1", "two-layer scenario cost comparison");
  table1->add_option("--config", config_path, "custom scenario config (needs beta)");
  table1->add_option("--out", out_path, "also write exact JSON here");

  auto* codec = app.add_subcommand("codec", "encode / repair / collect store files");
  codec->require_subcommand(1);
  auto* enc = codec->add_subcommand("encode", "split a file into node and BS stores");
  enc->add_option("--config", config_path, "deployment config JSON")->required();
  enc->add_option("--in", in_path, "input file")->required();
  enc->add_option("--out-dir", dir_path, "store directory")->required();
  auto* rep = codec->add_subcommand("repair", "regenerate t failed nodes");
  rep->add_option("--config", config_path, "deployment config JSON")->required();
  rep->add_option("--dir", dir_path, "store directory")->required();
  rep->add_option("--failed", id_list, "failed node ids")->required()->delimiter(',');
  auto* col = codec->add_subcommand("collect", "reconstruct the file from k stores");
  col->add_option("--dir", dir_path, "store directory")->required();
  col->add_option("--nodes", id_list, "node ids to read")->required()->delimiter(',');
  col->add_option("--out", out_path, "output file")->required();

  auto* simulate = app.add_subcommand("simulate", "multi-round lazy-repair lifecycle");
  simulate->add_option("--config", config_path, "scenario config JSON")->required();
  simulate->add_option("--out", out_path, "JSONL trace path (default stdout)");
  simulate->add_option("--seed", seed, "overrides the config seed")
      ->each([&](const std::string&) { seed_given = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (tradeoff->parsed())
      return cmd_tradeoff(load_config(config_path), grid, out_path, baseline_out, std::cout,
                          std::cerr);
    if (points->parsed())
      return cmd_points(load_config(config_path), out_path, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify(seed, exhaustive, mutate_psi, std::cout, std::cerr);
    if (table1->parsed()) {
      std::optional<ConfigFile> config;
      if (!config_path.empty()) config = load_config(config_path);
      return cmd_table1(config, out_path, std::cout, std::cerr);
    }
    if (enc->parsed())
      return cmd_codec_encode(load_config(config_path), in_path, dir_path, std::cout, std::cerr);
    if (rep->parsed())
      return cmd_codec_repair(load_config(config_path), dir_path, id_list, std::cout, std::cerr);
    if (col->parsed())
      return cmd_codec_collect(dir_path, id_list, out_path, std::cout, std::cerr);
    if (simulate->parsed())
      return cmd_simulate(load_config(config_path), seed, seed_given, out_path, std::cout,
                          std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
