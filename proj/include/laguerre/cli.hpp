#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "laguerre/laguerre_core.hpp"
#include "laguerre/verifier.hpp"

namespace laguerre {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string surface = "hilf";
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::vector<double>> grid_center;
  double half_width = 0.4;
  int points_per_axis = 5;
  FdConfig fd;
  double laguerre_step = 1e-3;
  Tolerances tolerances;
  std::string report_path;   // empty: stdout
  std::string samples_path;  // empty: none
  std::uint64_t seed = 1;
  bool timestamp = true;

  void validate() const;
  nlohmann::json to_json() const;
};

/// Reads a config file. Syntax errors carry "path:line:column".
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j, const std::string& source = "config",
                           const std::string& text = "");

std::shared_ptr<Chart> make_chart(const std::string& surface, const nlohmann::json& params);

/// Sample CSV with a schema comment line, a header row and %.17g values.
struct SampleTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
SampleTable samples_table(const PropertyReport& rep);
void write_samples_csv(const SampleTable& t, std::ostream& os);
SampleTable read_samples_csv(std::istream& is);

/// Parses comma-separated numbers such as "1,2,3".
std::vector<double> parse_list(const std::string& s);

/// Runs the command line; returns the exit status (0 pass, 1 failure, 2 input error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace laguerre
