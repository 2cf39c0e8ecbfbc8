#pragma once

#include "bscoop/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bscoop {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// JSON deployment description plus command options. Unknown keys are
// rejected; numeric values may be numbers, decimal strings, or "num/den".
struct ConfigFile {
  SystemParams params;
  std::optional<int> grid;
  std::optional<uint64_t> seed;
  std::optional<int> rounds;
  std::optional<int> rho;
  std::optional<Rat> beta;
  std::optional<std::vector<Rat>> r;
  std::optional<int> departures_per_round;
  std::optional<std::vector<std::vector<int>>> script;
  std::optional<int> verify_every;
  std::optional<uint64_t> file_size;
};

ConfigFile parse_config_text(const std::string& json_text);
ConfigFile load_config(const std::string& path);

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCounterexample = 2;
inline constexpr int kExitData = 3;

int cmd_tradeoff(const ConfigFile& config, int grid, const std::string& out_path,
                 const std::string& baseline_out_path, std::ostream& out, std::ostream& err);

int cmd_points(const ConfigFile& config, const std::string& out_path, std::ostream& out,
               std::ostream& err);

int cmd_verify(uint64_t seed, bool exhaustive, bool mutate_psi, std::ostream& out,
               std::ostream& err);

int cmd_table1(const std::optional<ConfigFile>& config, const std::string& out_path,
               std::ostream& out, std::ostream& err);

int cmd_codec_encode(const ConfigFile& config, const std::string& input_path,
                     const std::string& out_dir, std::ostream& out, std::ostream& err);

int cmd_codec_repair(const ConfigFile& config, const std::string& store_dir,
                     const std::vector<int>& failed, std::ostream& out, std::ostream& err);

int cmd_codec_collect(const std::string& store_dir, const std::vector<int>& nodes,
                      const std::string& output_path, std::ostream& out, std::ostream& err);

int cmd_simulate(const ConfigFile& config, uint64_t seed_override, bool seed_given,
                 const std::string& out_path, std::ostream& out, std::ostream& err);

}  // namespace bscoop
