// io.hpp: CSV and JSON forms of every dataset the tool writes.
//
// CSV: comma separated, '.' decimal point, header row, LF line endings,
// shortest round-trip number formatting. JSON documents carry "schema": 1
// and a "kind" tag; each has a parser that restores an equal value.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "sshqed/classify.hpp"
#include "sshqed/model.hpp"
#include "sshqed/response.hpp"
#include "sshqed/spectra.hpp"
#include "sshqed/sweep.hpp"
#include "sshqed/tracking.hpp"

namespace sshqed::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Malformed input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double x);

std::string spectrum_csv(const Spectrum& s);
std::string states_csv(const EdgeReport& r);
// |ψ_j| amplitudes of every non-bulk state: index,label,site,amplitude.
std::string distributions_csv(const Spectrum& s, const EdgeReport& r);
std::string sweep_csv(const SpectrumSweep& s);
std::string phase_csv(const PhaseDiagram& d);
std::string inversion_csv(const InversionTrace& t);
std::string response_csv(const ResponseProfile& p);
std::string scan_csv(const std::vector<ScanPoint>& scan);

json to_json(const EffectiveChain& c);
EffectiveChain chain_from_json(const json& j);

// Accepts either detunings {delta_c, delta_q, delta_Q} or frequencies
// {omega_c, omega_d, omega_q, omega_Q}, plus n, g, G.
PhysicalParams physical_from_json(const json& j);
json to_json(const PhysicalParams& p);

json to_json(const Spectrum& s, bool with_vectors);
Spectrum spectrum_from_json(const json& j);

json to_json(const EdgeReport& r);
EdgeReport report_from_json(const json& j);

json to_json(const SpectrumSweep& s);
SpectrumSweep sweep_from_json(const json& j);

json to_json(const PhaseDiagram& d);
PhaseDiagram phase_from_json(const json& j);

json to_json(const InversionTrace& t);
InversionTrace inversion_from_json(const json& j);

json to_json(const ResponseProfile& p, const DriveSpec& drive);
ResponseProfile response_from_json(const json& j);

// Compact by default; indent > 0 pretty-prints.
std::string dump(const json& j, int indent = -1);
json parse(const std::string& text);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace sshqed::io
