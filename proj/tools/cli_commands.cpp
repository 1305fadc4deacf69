#include <algorithm>
#include <iostream>
#include <sstream>

#include "arnold/errors.hpp"
#include "cli.hpp"

namespace arnold::cli {

namespace {

Molecule load_molecule(const RunConfig& c) {
  if (c.input.empty()) throw PreconditionError("--input is required");
  return parse_molecule(read_file(c.input));
}

Json violations_json(const std::vector<Violation>& vs) {
  Json a = Json::array();
  for (const Violation& v : vs) a.push_back({{"kind", violation_name(v.kind)}, {"where", v.where}, {"message", v.message}});
  return a;
}

// Molecule from --input or an assembled gallery item; empty optional for direct gallery items.
struct Source {
  std::optional<GalleryItem> item;
  std::optional<Molecule> molecule;
};

Source load_source(const RunConfig& c) {
  Source s;
  if (!c.gallery.empty()) {
    s.item = gallery_item(c.gallery);
    if (s.item->flow) s.molecule = s.item->flow->molecule;
  } else {
    s.molecule = load_molecule(c);
  }
  return s;
}

}  // namespace

int cmd_validate(const RunConfig& c, const Streams& s) {
  const Molecule m = load_molecule(c);
  const auto vs = validate(m);
  emit_report(c, "validate",
              Json{{"molecule", molecule_json(m)}, {"violations", violations_json(vs)}, {"pass", vs.empty()}}, s);
  for (const Violation& v : vs) s.err << violation_name(v.kind) << " " << v.where << ": " << v.message << "\n";
  return vs.empty() ? kPass : kInvalid;
}

int cmd_verify(const RunConfig& c, const Streams& s) {
  const Source src = load_source(c);
  if (src.item && !src.item->flow) {
    const GalleryCheck g = check_gallery_item(*src.item, c.suite);
    emit_report(c, "verify", Json{{"gallery", gallery_json(*src.item, g)}, {"pass", g.matches}}, s);
    return g.matches ? kPass : kFailed;
  }
  const Molecule& m = *src.molecule;
  const auto vs = validate(m);
  if (!vs.empty()) {
    emit_report(c, "verify", Json{{"violations", violations_json(vs)}, {"pass", false}}, s);
    return kInvalid;
  }
  AssembledFlow f;
  try {
    f = assemble(m);
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    emit_report(c, "verify", Json{{"molecule", molecule_json(m)}, {"assembly_error", e.what()}, {"pass", false}}, s);
    return kFailed;
  }
  const VerificationReport r = run_suite(f, c.suite);
  const bool iso = isomorphic(reconstruct_molecule(f), m);
  Json charts = Json::array();
  for (const ChartReport& cr : r.charts) charts.push_back(chart_json(cr));
  const bool pass = r.pass && r.critical.pass && iso;
  emit_report(c, "verify",
              Json{{"molecule", molecule_json(m)},
                   {"blocks", f.blocks.size()},
                   {"collars", f.collars.size()},
                   {"layers", f.levels.layer.empty() ? 0 : *std::max_element(f.levels.layer.begin(), f.levels.layer.end()) + 1},
                   {"charts", charts},
                   {"global", chart_json(r.global)},
                   {"critical", critical_json(r.critical)},
                   {"reconstruction", {{"isomorphic", iso}}},
                   {"pass", pass}},
              s);
  return pass ? kPass : kFailed;
}

int cmd_symplectize(const RunConfig& c, const Streams& s) {
  const Source src = load_source(c);
  std::vector<Patch> patches;
  if (src.item) {
    patches = src.item->patches;
  } else {
    const auto vs = validate(*src.molecule);
    if (!vs.empty()) {
      emit_report(c, "symplectize", Json{{"violations", violations_json(vs)}, {"pass", false}}, s);
      return kInvalid;
    }
    try {
      patches = all_patches(assemble(*src.molecule));
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      emit_report(c, "symplectize", Json{{"assembly_error", e.what()}, {"pass", false}}, s);
      return kFailed;
    }
  }
  SymplecticExtension ext;
  try {
    ext = build_omega(patches);
  } catch (const PreconditionError& e) {
    // no admissible beta: report the obstruction instead
    const ObstructionReport ob = obstruction_check(patches, c.suite.tol);
    const bool expected = src.item && src.item->expected.obstructed && ob.obstructed;
    emit_report(c, "symplectize",
                Json{{"refused", e.what()},
                     {"expected_refusal", expected},
                     {"obstruction", obstruction_json(ob)},
                     {"pass", expected}},
                s);
    return expected ? kPass : kFailed;
  }
  const double eps = nondegeneracy_radius(ext, std::min(c.suite.samples, 2000));
  const HamiltonianReport h = hamiltonian_check(ext, c.suite.samples, c.suite.tol);
  const ObstructionReport ob = obstruction_check(patches, c.suite.tol);
  // gallery counterexamples pass when their obstruction is found
  const bool expected = src.item && src.item->expected.obstructed && ob.obstructed;
  const bool pass = expected || (eps > 0.0 && h.pass && !ob.obstructed);
  emit_report(c, "symplectize",
              Json{{"charts", ext.slices.size()},
                   {"expected_obstruction", expected},
                   {"epsilon", eps},
                   {"hamiltonian", hamiltonian_json(h)},
                   {"obstruction", obstruction_json(ob)},
                   {"pass", pass}},
              s);
  return pass ? kPass : kFailed;
}

namespace {

long parse_long(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw PreconditionError("malformed " + what + " '" + text + "'");
  return v;
}

SeifertData parse_seifert(const std::vector<std::string>& tokens) {
  SeifertData d;
  for (const std::string& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw PreconditionError("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "g" || key == "genus") {
      d.genus = static_cast<int>(parse_long(val, "genus"));
    } else if (key == "crosscaps") {
      d.crosscaps = static_cast<int>(parse_long(val, "cross-cap count"));
    } else if (key == "pairs") {
      std::stringstream ss(val);
      for (std::string pr; std::getline(ss, pr, ',');) {
        const auto slash = pr.find('/');
        if (slash == std::string::npos) throw PreconditionError("malformed pair '" + pr + "', expected a/b");
        d.pairs.push_back({parse_long(pr.substr(0, slash), "pair"), parse_long(pr.substr(slash + 1), "pair")});
      }
    } else {
      throw PreconditionError("unknown key '" + key + "'");
    }
  }
  return d;
}

}  // namespace

int cmd_seifert(const RunConfig& c, const Streams& s) {
  const Molecule m = seifert_to_molecule(parse_seifert(c.seifert));
  const std::string text = serialize(m);
  if (c.output.empty())
    s.out << text;
  else
    write_file(c.output, text);
  return kPass;
}

int cmd_export(const RunConfig& c, const Streams& s) {
  if (c.export_dir.empty()) throw PreconditionError("--export-dir is required");
  std::vector<Patch> patches;
  if (!c.block.empty()) {
    patches = block_by_name(c.block).patches;
  } else {
    const Source src = load_source(c);
    if (src.item) {
      patches = src.item->patches;
    } else {
      const auto vs = validate(*src.molecule);
      if (!vs.empty()) {
        for (const Violation& v : vs) s.err << violation_name(v.kind) << " " << v.where << ": " << v.message << "\n";
        return kInvalid;
      }
      try {
        patches = all_patches(assemble(*src.molecule));
      } catch (const ValidationError&) {
        throw;
      } catch (const Error& e) {
        s.err << "assembly failed: " << e.what() << "\n";
        return kFailed;
      }
    }
  }
  const auto files = export_patches(patches, c.suite.grid, c.export_dir);
  for (const std::string& f : files) s.out << f << "\n";
  return kPass;
}

int cmd_gallery(const RunConfig&, const Streams& s) {
  for (const std::string& n : gallery_names()) s.out << n << "\t" << gallery_item(n).description << "\n";
  return kPass;
}

}  // namespace arnold::cli
