#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"

namespace arnold::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoFailure("cannot write '" + path + "'");
}

Json config_json(const RunConfig& c) {
  Json j;
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.gallery.empty()) j["gallery"] = c.gallery;
  j["grid"] = c.suite.grid;
  j["samples"] = c.suite.samples;
  j["seed"] = c.suite.seed;
  j["tol"] = c.suite.tol;
  return j;
}

Json chart_json(const ChartReport& r) {
  return Json{{"chart", r.name},           {"euler", r.euler},       {"positivity", r.positivity},
              {"divergence", r.divergence}, {"ixdb", r.ixdb},         {"beta_curl", r.beta_curl},
              {"min_beta_x", r.min_beta_x}, {"samples", r.samples},   {"pass", r.pass}};
}

Json critical_json(const CriticalReport& r) {
  Json comps = Json::array();
  for (const CriticalComponent& c : r.components)
    comps.push_back({{"chart", c.chart},
                     {"declared", c.declared},
                     {"atom", c.atom},
                     {"type", c.type},
                     {"dimension", c.dimension},
                     {"polarity", polarity_name(c.polarity)},
                     {"level", c.level},
                     {"eig_min", c.eig_min},
                     {"eig_max", c.eig_max},
                     {"points", c.points},
                     {"location", c.location}});
  return Json{{"components", comps}, {"problems", r.problems}, {"pass", r.pass}};
}

Json molecule_json(const Molecule& m) {
  return Json{{"name", m.name}, {"atoms", m.atoms.size()}, {"edges", m.edges.size()}, {"text", serialize(m)}};
}

Json obstruction_json(const ObstructionReport& r) {
  Json pts = Json::array();
  std::size_t count = 0;
  for (const ObstructionPoint& o : r.points) {
    if (!o.obstructed || ++count > 20) continue;  // list the first 20
    pts.push_back({{"chart", o.chart},
                   {"point", {o.p[0], o.p[1], o.p[2]}},
                   {"x_norm", o.x_norm},
                   {"y_norm", o.y_norm},
                   {"lambda", o.lambda}});
  }
  return Json{{"critical_points", r.points.size()},
              {"obstructed_count", count},
              {"obstructed_points", pts},
              {"obstructed", r.obstructed}};
}

Json hamiltonian_json(const HamiltonianReport& r) {
  return Json{{"reeb", r.reeb},       {"curl", r.curl},       {"commute", r.commute},
              {"flat_fraction", r.flat_fraction}, {"samples", r.samples}, {"pass", r.pass}};
}

Json gallery_json(const GalleryItem& item, const GalleryCheck& g) {
  const GalleryExpectation& e = item.expected;
  return Json{{"name", item.name},
              {"description", item.description},
              {"expected", {{"steady", e.steady},
                            {"beta_exists", e.beta_exists},
                            {"obstructed", e.obstructed},
                            {"euler_residual", e.euler_residual},
                            {"why", e.why}}},
              {"measured", {{"steady", g.steady},
                            {"beta_exists", g.beta_exists},
                            {"obstructed", g.obstructed},
                            {"euler_residual", g.euler_residual}}},
              {"obstruction", obstruction_json(g.obstruction)},
              {"problems", g.problems},
              {"matches", g.matches}};
}

namespace {

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find('\n') == std::string::npos) {
      out << prefix << ": " << s << "\n";
    } else {
      out << prefix << ":\n";
      std::istringstream lines(s);
      for (std::string l; std::getline(lines, l);) out << "  " << l << "\n";
    }
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

}  // namespace

void emit_report(const RunConfig& c, const std::string& command, Json body, const Streams& s) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["config"] = config_json(c);
  for (auto& [k, v] : body.items()) doc[k] = v;
  if (c.report == "text")
    render_text(doc, "", s.out);
  else
    s.out << doc.dump(2) << "\n";
  if (!c.export_dir.empty()) write_file((std::filesystem::path(c.export_dir) / "report.json").string(), doc.dump(2) + "\n");
}

}  // namespace arnold::cli
