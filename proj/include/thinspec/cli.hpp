#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thinspec/construct.hpp"

namespace thinspec {

enum class Command { Bands, Ids, Lyapunov, Thin, Chain, Gordon, Laplacian };

const char* to_string(Command c);
Command command_from_string(const std::string& s);

struct JobConfig {
  Command command = Command::Bands;
  // coefficients: inline lists or a CSV file
  std::vector<double> a;
  std::vector<double> b;
  std::string input_path;

  std::optional<double> at;
  std::optional<long> grid;
  double eps = 0.0;
  long N = 0;
  ThinMode mode = ThinMode::OffDiagonal;
  int stages = 1;
  std::optional<std::size_t> period_cap;
  long gordon_p = 0;
  double gordon_k = 0.0;
  int d = 1;
  std::string spectrum_path;  // laplacian: bands or interval-union JSON
  long torus_side = 0;        // laplacian: also dump the torus matrix
  std::string coo_path;

  std::string output_path;  // empty: stdout
  std::string format = "json";
  std::string manifest_path;  // empty: <output>.manifest.json or thinspec-manifest.json
  bool with_timestamp = true;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

// Period cap from the config, else THINSPEC_PERIOD_CAP, else the default.
std::size_t effective_period_cap(const JobConfig& cfg);

// Throws DomainError naming the violated precondition.
void validate(const JobConfig& cfg);

// Runs one job, writes artifacts and the manifest; returns the exit status.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace thinspec
