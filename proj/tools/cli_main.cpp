#include <iostream>

#include "CLI11.hpp"
#include "arnold/errors.hpp"
#include "cli.hpp"

using namespace arnold;
using namespace arnold::cli;

namespace {

void common_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--input", c.input, "molecule file");
  sub->add_option("--gallery", c.gallery, "built-in example: t3-parallel, twisted-solid-torus, fig3-molecule, lens-2-1");
  sub->add_option("--grid", c.suite.grid, "grid points per axis")->check(CLI::PositiveNumber);
  sub->add_option("--samples", c.suite.samples, "extra random samples per chart")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.suite.seed, "sample seed");
  sub->add_option("--tol", c.suite.tol, "residual tolerance")->check(CLI::Range(1e-300, 1.0));
  sub->add_option("--report", c.report, "report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--export-dir", c.export_dir, "directory for CSV files and report.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady Euler flows with Morse-Bott Bernoulli functions from molecules"};
  app.require_subcommand(1);
  RunConfig c;
  std::vector<std::pair<CLI::App*, int (*)(const RunConfig&, const Streams&)>> cmds;

  auto* validate = app.add_subcommand("validate", "parse and validate a molecule file");
  validate->add_option("--input", c.input, "molecule file")->required();
  validate->add_option("--report", c.report, "report format")->check(CLI::IsMember({"json", "text"}));
  cmds.push_back({validate, cmd_validate});

  auto* build = app.add_subcommand("build", "assemble a flow and run the verification suite");
  auto* verify = app.add_subcommand("verify", "same as build");
  auto* sympl = app.add_subcommand("symplectize", "build omega on M x (-eps, eps) and check the Hamiltonian pair");
  auto* exp = app.add_subcommand("export", "write sampled fields as CSV, one file per chart");
  for (auto* sub : {build, verify, sympl, exp}) common_options(sub, c);
  exp->add_option("--block", c.block, "single block: I-min, I-max, II-min, II-max, III-merge, III-split, IV, V-min, V-max");
  cmds.push_back({build, cmd_verify});
  cmds.push_back({verify, cmd_verify});
  cmds.push_back({sympl, cmd_symplectize});
  cmds.push_back({exp, cmd_export});

  auto* seifert = app.add_subcommand("seifert", "molecule file from Seifert invariants, e.g. g=0 pairs=2/1,3/1 crosscaps=1");
  seifert->add_option("args", c.seifert, "key=value tokens: g, crosscaps, pairs");
  seifert->add_option("-o,--output", c.output, "output file (default: stdout)");
  cmds.push_back({seifert, cmd_seifert});

  auto* gallery = app.add_subcommand("gallery", "list built-in examples");
  cmds.push_back({gallery, cmd_gallery});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }

  const Streams s{std::cout, std::cerr};
  try {
    for (const auto& [sub, fn] : cmds)
      if (sub->parsed()) return fn(c, s);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << c.input << ":" << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
