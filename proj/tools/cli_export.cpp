#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "arnold/errors.hpp"
#include "cli.hpp"

namespace arnold::cli {

std::vector<std::string> block_names() {
  return {"I-min", "I-max", "II-min", "II-max", "III-merge", "III-split", "IV", "V-min", "V-max"};
}

BlockRealization block_by_name(const std::string& name) {
  if (name == "I-min") return realize_I(Polarity::Min);
  if (name == "I-max") return realize_I(Polarity::Max);
  if (name == "II-min") return realize_II(Polarity::Min);
  if (name == "II-max") return realize_II(Polarity::Max);
  if (name == "III-merge") return realize_III(Pattern::Merge);
  if (name == "III-split") return realize_III(Pattern::Split);
  if (name == "IV") return realize_IV();
  if (name == "V-min") return realize_V(Polarity::Min);
  if (name == "V-max") return realize_V(Polarity::Max);
  throw PreconditionError("unknown block '" + name + "'");
}

namespace {

std::string file_stem(std::size_t index, const std::string& name) {
  std::string s;
  for (char ch : name) s += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu_", index);
  return buf + s;
}

double grid_coord(const Interval& d, bool periodic, int i, int n) {
  if (periodic) return d.lo + d.length() * i / n;
  return n == 1 ? 0.5 * (d.lo + d.hi) : d.lo + d.length() * i / (n - 1);
}

std::string patch_csv(const Patch& p, int n) {
  const Chart& ch = *p.chart;
  const KForm dB = exterior_d(p.B);
  std::vector<Expr> outs;
  for (int i = 0; i < 3; ++i) outs.push_back(p.X.c[i]);
  for (int i = 0; i < 3; ++i) outs.push_back(p.alpha.c[i]);
  outs.push_back(p.B.c[0]);
  for (int i = 0; i < 3; ++i) outs.push_back(dB.c[i]);
  for (int i = 0; i < 3; ++i) outs.push_back(p.beta.c[i]);
  const expr::Tape tape(outs);
  std::vector<double> scratch, v(tape.outputs());

  std::string csv = "chart," + ch.names[0] + "," + ch.names[1] + "," + ch.names[2] +
                    ",X0,X1,X2,alpha0,alpha1,alpha2,B,dB_norm,beta0,beta1,beta2\n";
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, ",%.17g", x);
    csv += buf;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Point q{grid_coord(ch.domain[0], ch.periodic[0], a, n), grid_coord(ch.domain[1], ch.periodic[1], b, n),
                      grid_coord(ch.domain[2], ch.periodic[2], c, n)};
        if (!ch.contains(q)) continue;
        tape.eval(q, scratch, v.data());
        csv += p.name;
        for (double x : q) put(x);
        for (int i = 0; i < 7; ++i) put(v[i]);
        put(std::sqrt(v[7] * v[7] + v[8] * v[8] + v[9] * v[9]));
        for (int i = 10; i < 13; ++i) put(v[i]);
        csv += "\n";
      }
  return csv;
}

}  // namespace

std::vector<std::string> export_patches(const std::vector<Patch>& patches, int grid, const std::string& dir) {
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < patches.size(); ++i) {
    const std::string path = (std::filesystem::path(dir) / (file_stem(i, patches[i].name) + ".csv")).string();
    write_file(path, patch_csv(patches[i], grid));
    paths.push_back(path);
  }
  return paths;
}

}  // namespace arnold::cli
