#include "sshqed_cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sshqed::io {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace {

struct Csv {
  std::string out;

  explicit Csv(const std::string& header) { out = header + "\n"; }

  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out += (first ? "" : ","), out += cell(fields), first = false), ...);
    out += '\n';
  }

  static std::string cell(double x) { return format_number(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(const char* s) { return s; }
  static std::string cell(const std::string& s) { return s; }
};

json header(const char* kind) { return json{{"schema", kSchemaVersion}, {"kind", kind}}; }

void expect_kind(const json& j, const char* kind) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (j.value("schema", 0) != kSchemaVersion)
    throw FormatError("unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  if (j.value("kind", std::string{}) != kind)
    throw FormatError(std::string("expected a document of kind '") + kind + "'");
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

json potentials_json(const Potentials& p) {
  json arr = json::array();
  for (const auto& [site, value] : p) arr.push_back({{"site", site}, {"value", value}});
  return arr;
}

Potentials potentials_from(const json& arr) {
  Potentials p;
  for (const auto& e : arr) p[get<std::size_t>(e, "site")] = get<double>(e, "value");
  return p;
}

json state_json(const StateClassification& s) {
  return {{"index", s.index}, {"energy", s.energy}, {"label", to_string(s.label)},
          {"center", s.center}, {"ipr", s.ipr}};
}

StateClassification state_from(const json& j) {
  StateClassification s;
  s.index = get<std::size_t>(j, "index");
  s.energy = get<double>(j, "energy");
  s.label = state_label_from_string(get<std::string>(j, "label"));
  s.center = get<std::size_t>(j, "center");
  s.ipr = get<double>(j, "ipr");
  return s;
}

json report_body(const EdgeReport& r) {
  json states = json::array();
  for (const auto& s : r.states) states.push_back(state_json(s));
  return {{"gap", {{"inner", r.gap.inner}, {"outer", r.gap.outer}}},
          {"counts",
           {{"bulk", r.counts.bulk},
            {"topological", r.counts.topological},
            {"nontopological", r.counts.nontopological},
            {"bound", r.counts.bound}}},
          {"cuts", std::vector<std::size_t>(r.cuts.begin(), r.cuts.end())},
          {"states", states}};
}

EdgeReport report_from_body(const json& j) {
  EdgeReport r;
  const json& gap = j.at("gap");
  r.gap = {get<double>(gap, "inner"), get<double>(gap, "outer")};
  const json& c = j.at("counts");
  r.counts = {get<std::size_t>(c, "bulk"), get<std::size_t>(c, "topological"),
              get<std::size_t>(c, "nontopological"), get<std::size_t>(c, "bound")};
  for (std::size_t s : get<std::vector<std::size_t>>(j, "cuts")) r.cuts.insert(s);
  for (const auto& s : j.at("states")) r.states.push_back(state_from(s));
  return r;
}

}  // namespace

std::string spectrum_csv(const Spectrum& s) {
  Csv csv("index,energy");
  for (std::size_t m = 0; m < s.size(); ++m) csv.row(m + 1, s.energies[m]);
  return csv.out;
}

std::string states_csv(const EdgeReport& r) {
  Csv csv("index,energy,label,center,ipr");
  for (const auto& s : r.states) csv.row(s.index, s.energy, to_string(s.label), s.center, s.ipr);
  return csv.out;
}

std::string distributions_csv(const Spectrum& s, const EdgeReport& r) {
  Csv csv("index,label,site,amplitude");
  for (const auto& st : r.states) {
    if (st.label == StateLabel::Bulk) continue;
    const auto v = s.vector(st.index - 1);
    for (std::size_t j = 0; j < v.size(); ++j) csv.row(st.index, to_string(st.label), j + 1, std::abs(v[j]));
  }
  return csv.out;
}

std::string sweep_csv(const SpectrumSweep& s) {
  Csv csv(s.axis + ",index,energy,label");
  for (const auto& p : s.points)
    for (const auto& st : p.report.states) csv.row(p.parameter, st.index, st.energy, to_string(st.label));
  return csv.out;
}

std::string phase_csv(const PhaseDiagram& d) {
  Csv csv(d.x_name + "," + d.y_name + ",region");
  for (std::size_t ix = 0; ix < d.x_grid.size(); ++ix)
    for (std::size_t iy = 0; iy < d.y_grid.size(); ++iy)
      csv.row(d.x_grid[ix], d.y_grid[iy], to_string(d.at(ix, iy)));
  return csv.out;
}

std::string inversion_csv(const InversionTrace& t) {
  Csv csv("phi,role,index,energy,label,occupied");
  for (LevelRole r : kAllRoles) {
    const auto& tr = t.trace(r);
    for (std::size_t k = 0; k < t.phi_grid.size(); ++k)
      csv.row(t.phi_grid[k], to_string(r), tr.indices[k], tr.energies[k], to_string(tr.labels[k]),
              static_cast<int>(tr.occupied[k]));
  }
  return csv.out;
}

std::string response_csv(const ResponseProfile& p) {
  Csv csv("site,photon_number");
  for (std::size_t j = 0; j < p.photon_numbers.size(); ++j) csv.row(j + 1, p.photon_numbers[j]);
  return csv.out;
}

std::string scan_csv(const std::vector<ScanPoint>& scan) {
  Csv csv("omega,site,photon_number");
  for (const auto& pt : scan)
    for (std::size_t j = 0; j < pt.profile.photon_numbers.size(); ++j)
      csv.row(pt.omega, j + 1, pt.profile.photon_numbers[j]);
  return csv.out;
}

json to_json(const EffectiveChain& c) {
  json j = header("chain");
  j["n"] = c.n_sites;
  j["boundary"] = to_string(c.boundary);
  j["hoppings"] = c.hoppings;
  j["potentials"] = potentials_json(c.potentials);
  return j;
}

EffectiveChain chain_from_json(const json& j) {
  expect_kind(j, "chain");
  EffectiveChain c;
  c.n_sites = get<std::size_t>(j, "n");
  c.boundary = boundary_from_string(get<std::string>(j, "boundary"));
  if (j.contains("theta")) {
    const Potentials pots = potentials_from(j.at("potentials"));
    return chain_from_theta(c.n_sites, {get<double>(j, "theta")}, pots, c.boundary);
  }
  c.hoppings = get<std::vector<double>>(j, "hoppings");
  c.potentials = potentials_from(j.at("potentials"));
  validate(c);
  return c;
}

PhysicalParams physical_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("physical parameters must be a JSON object");
  const auto n = get<std::size_t>(j, "n");
  auto g = get<std::vector<double>>(j, "g");
  auto G = get<std::vector<double>>(j, "G");
  if (j.contains("omega_d")) {
    return PhysicalParams::from_frequencies(n, get<double>(j, "omega_c"), get<double>(j, "omega_d"),
                                            get<double>(j, "omega_q"), get<double>(j, "omega_Q"),
                                            std::move(g), std::move(G));
  }
  PhysicalParams p;
  p.n_sites = n;
  p.delta_c = j.value("delta_c", 0.0);
  p.delta_q = get<double>(j, "delta_q");
  p.delta_Q = get<double>(j, "delta_Q");
  p.g = std::move(g);
  p.G = std::move(G);
  return p;
}

json to_json(const PhysicalParams& p) {
  return {{"n", p.n_sites}, {"delta_c", p.delta_c}, {"delta_q", p.delta_q},
          {"delta_Q", p.delta_Q}, {"g", p.g}, {"G", p.G}};
}

json to_json(const Spectrum& s, bool with_vectors) {
  json j = header("spectrum");
  j["n"] = s.size();
  j["energies"] = s.energies;
  if (with_vectors) {
    json vecs = json::array();
    for (std::size_t m = 0; m < s.size(); ++m) {
      const auto v = s.vector(m);
      vecs.push_back(std::vector<double>(v.begin(), v.end()));
    }
    j["vectors"] = vecs;
  }
  return j;
}

Spectrum spectrum_from_json(const json& j) {
  expect_kind(j, "spectrum");
  Spectrum s;
  s.energies = get<std::vector<double>>(j, "energies");
  const std::size_t n = s.energies.size();
  s.vectors = DenseMatrix(n);
  if (j.contains("vectors")) {
    const auto& vecs = j.at("vectors");
    if (vecs.size() != n) throw FormatError("vectors: expected one column per energy");
    for (std::size_t m = 0; m < n; ++m) {
      const auto col = vecs[m].get<std::vector<double>>();
      if (col.size() != n) throw FormatError("vectors: column length mismatch");
      auto dst = s.vectors.column(m);
      std::copy(col.begin(), col.end(), dst.begin());
    }
  }
  return s;
}

json to_json(const EdgeReport& r) {
  json j = header("edge_report");
  j.update(report_body(r));
  return j;
}

EdgeReport report_from_json(const json& j) {
  expect_kind(j, "edge_report");
  return report_from_body(j);
}

json to_json(const SpectrumSweep& s) {
  json j = header("sweep");
  j["axis"] = s.axis;
  j["grid"] = s.grid;
  json points = json::array();
  for (const auto& p : s.points)
    points.push_back({{"parameter", p.parameter}, {"energies", p.energies}, {"report", report_body(p.report)}});
  j["points"] = points;
  return j;
}

SpectrumSweep sweep_from_json(const json& j) {
  expect_kind(j, "sweep");
  SpectrumSweep s;
  s.axis = get<std::string>(j, "axis");
  s.grid = get<std::vector<double>>(j, "grid");
  for (const auto& p : j.at("points")) {
    SweepPoint pt;
    pt.parameter = get<double>(p, "parameter");
    pt.energies = get<std::vector<double>>(p, "energies");
    pt.report = report_from_body(p.at("report"));
    s.points.push_back(std::move(pt));
  }
  if (s.points.size() != s.grid.size()) throw FormatError("sweep: one point per grid value expected");
  return s;
}

json to_json(const PhaseDiagram& d) {
  json j = header("phase_diagram");
  j["diagram"] = to_string(d.kind);
  j["n"] = d.n_sites;
  j["V"] = d.V;
  j["x"] = {{"name", d.x_name}, {"grid", d.x_grid}};
  j["y"] = {{"name", d.y_name}, {"grid", d.y_grid}};
  json rows = json::array();
  for (std::size_t ix = 0; ix < d.x_grid.size(); ++ix) {
    std::string row;
    for (std::size_t iy = 0; iy < d.y_grid.size(); ++iy) {
      if (iy) row += ' ';
      row += to_string(d.at(ix, iy));
    }
    rows.push_back(row);
  }
  j["cells"] = rows;
  j["regions"] = {"I", "II", "III"};
  return j;
}

PhaseDiagram phase_from_json(const json& j) {
  expect_kind(j, "phase_diagram");
  PhaseDiagram d;
  d.kind = diagram_kind_from_string(get<std::string>(j, "diagram"));
  d.n_sites = get<std::size_t>(j, "n");
  d.V = get<double>(j, "V");
  d.x_name = get<std::string>(j.at("x"), "name");
  d.x_grid = get<std::vector<double>>(j.at("x"), "grid");
  d.y_name = get<std::string>(j.at("y"), "name");
  d.y_grid = get<std::vector<double>>(j.at("y"), "grid");
  const auto& rows = j.at("cells");
  if (rows.size() != d.x_grid.size()) throw FormatError("cells: one row per x value expected");
  for (const auto& row : rows) {
    std::istringstream is(row.get<std::string>());
    std::string tok;
    std::size_t count = 0;
    while (is >> tok) {
      d.cells.push_back(region_from_string(tok));
      ++count;
    }
    if (count != d.y_grid.size()) throw FormatError("cells: row length mismatch");
  }
  return d;
}

json to_json(const InversionTrace& t) {
  json j = header("inversion");
  j["n"] = t.n_sites;
  j["V"] = t.V;
  j["theta_probe"] = t.theta_probe;
  j["phi_grid"] = t.phi_grid;
  json roles = json::object();
  for (LevelRole r : kAllRoles) {
    const auto& tr = t.trace(r);
    std::vector<std::string> labels;
    for (auto l : tr.labels) labels.push_back(to_string(l));
    std::vector<int> occ(tr.occupied.begin(), tr.occupied.end());
    roles[to_string(r)] = {{"indices", tr.indices},
                           {"energies", tr.energies},
                           {"labels", labels},
                           {"occupied", occ},
                           {"sequence", t.index_sequence(r)}};
  }
  j["roles"] = roles;
  json flips = json::array();
  for (const auto& f : t.flips)
    flips.push_back({{"role", to_string(f.role)}, {"phi", f.phi}, {"from", f.from}, {"to", f.to}});
  j["flips"] = flips;
  return j;
}

InversionTrace inversion_from_json(const json& j) {
  expect_kind(j, "inversion");
  InversionTrace t;
  t.n_sites = get<std::size_t>(j, "n");
  t.V = get<double>(j, "V");
  t.theta_probe = get<double>(j, "theta_probe");
  t.phi_grid = get<std::vector<double>>(j, "phi_grid");
  for (LevelRole r : kAllRoles) {
    const json& jr = j.at("roles").at(to_string(r));
    RoleTrace& tr = t.roles[static_cast<std::size_t>(r)];
    tr.role = r;
    tr.indices = get<std::vector<std::size_t>>(jr, "indices");
    tr.energies = get<std::vector<double>>(jr, "energies");
    for (const auto& l : get<std::vector<std::string>>(jr, "labels")) tr.labels.push_back(state_label_from_string(l));
    for (int o : get<std::vector<int>>(jr, "occupied")) tr.occupied.push_back(static_cast<char>(o));
  }
  for (const auto& f : j.at("flips"))
    t.flips.push_back({level_role_from_string(get<std::string>(f, "role")), get<double>(f, "phi"),
                       get<std::size_t>(f, "from"), get<std::size_t>(f, "to")});
  return t;
}

json to_json(const ResponseProfile& p, const DriveSpec& drive) {
  json j = header("response");
  j["drive"] = {{"site", drive.site}, {"omega", drive.omega}, {"amplitude", drive.amplitude}, {"kappa", drive.kappa}};
  j["photon_numbers"] = p.photon_numbers;
  j["peak_site"] = p.peak_site;
  return j;
}

ResponseProfile response_from_json(const json& j) {
  expect_kind(j, "response");
  ResponseProfile p;
  p.photon_numbers = get<std::vector<double>>(j, "photon_numbers");
  p.peak_site = get<std::size_t>(j, "peak_site");
  return p;
}

std::string dump(const json& j, int indent) { return j.dump(indent) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sshqed::io
