// cli.hpp: run specifications, argument parsing and execution for `sshqed`.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshqed/model.hpp"
#include "sshqed_cli/io.hpp"

namespace sshqed::cli {

// Bad command line; the message names the offending flag. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { spectrum, sweep, phase_diagram, inversion, response, map_physical };

// What a run actually computes, resolved from the command and its flags.
enum class Mode {
  point,
  theta_sweep,
  phi_sweep,
  unilateral_diagram,
  bilateral_diagram,
  inversion,
  response,
  map_physical
};

const char* to_string(Command c) noexcept;
const char* to_string(Mode m) noexcept;
Command command_from_string(const std::string& s);

enum class OmegaTarget { value, nontopological, topological };

struct RunParams {
  std::size_t n{100};
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<double> V;
  std::optional<double> V1;
  std::optional<double> V2;
  Potentials potentials;  // explicit --potential site=value entries
  Boundary boundary{Boundary::open};
  std::optional<std::size_t> theta_grid;
  std::optional<std::size_t> phi_grid;
  std::optional<std::size_t> v_grid;
  double v_max{4.0};
  double kappa{0.05};
  std::size_t drive_site{1};
  OmegaTarget omega_target{OmegaTarget::value};
  std::optional<double> omega;
  std::optional<std::string> params_file;
  bool zero_point{true};
  double cancel_tol{1e-9};

  // Onsite potentials of the run: --v1 on site 1, --v2 on site N, the
  // bilateral pair from --v with --phi, then the explicit entries.
  Potentials site_potentials() const;
};

struct OutputSpec {
  std::filesystem::path dir{"."};
  bool csv{true};
  bool json{true};
  bool svg{true};
};

struct RunSpec {
  Command command{Command::spectrum};
  Mode mode{Mode::point};
  std::string stem;   // file name prefix
  std::string title;  // figure title
  RunParams params;
  OutputSpec output;
};

struct Invocation {
  std::vector<RunSpec> runs;
  std::optional<std::string> figure;  // set by `reproduce`
  OutputSpec output;
  std::optional<std::string> help;  // --help text; nothing to run
};

// A number in radians, optionally followed by "pi": "1.25", "0.5pi", "pi".
double parse_angle(const std::string& text, const std::string& flag);

// Resolves the mode and checks required parameters and ranges.
RunSpec make_run(Command command, RunParams params, OutputSpec output, std::string stem = {},
                 std::string title = {});

Invocation parse_args(const std::vector<std::string>& args);

const std::vector<std::string>& figure_names();
// Throws UsageError for an unknown name.
std::vector<RunSpec> expand_figure(const std::string& name, const OutputSpec& output);

struct WrittenFile {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes{0};
};

struct RunOutcome {
  std::vector<WrittenFile> files;
  std::string summary;
  double seconds{0.0};
};

io::json params_json(const RunParams& p);

RunOutcome execute(const RunSpec& run);

// Runs every RunSpec, writes manifest.json into the output directory and
// returns the manifest.
io::json run_invocation(const Invocation& inv, std::ostream& log);

// Full front end: 0 success, 1 compute failure, 2 usage error.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sshqed::cli
