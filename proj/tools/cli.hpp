#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "arnold/gallery.hpp"
#include "json.hpp"

namespace arnold::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { kPass = 0, kIo = 1, kInvalid = 2, kFailed = 3 };

constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string input;
  std::string gallery;
  std::string block;  // export only: a single realize_* block
  std::string output;
  std::string export_dir;
  std::string report = "json";
  SuiteOptions suite;
  std::vector<std::string> seifert;  // key=value tokens
};

// Raised for unreadable or unwritable files; maps to exit 1.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Report documents.
Json config_json(const RunConfig& c);
Json chart_json(const ChartReport& r);
Json critical_json(const CriticalReport& r);
Json molecule_json(const Molecule& m);
Json gallery_json(const GalleryItem& item, const GalleryCheck& g);
Json obstruction_json(const ObstructionReport& r);
Json hamiltonian_json(const HamiltonianReport& r);

// Writes the report to out in the configured format and to export_dir/report.json when set.
void emit_report(const RunConfig& c, const std::string& command, Json body, const Streams& s);

int cmd_validate(const RunConfig& c, const Streams& s);
int cmd_verify(const RunConfig& c, const Streams& s);
int cmd_symplectize(const RunConfig& c, const Streams& s);
int cmd_seifert(const RunConfig& c, const Streams& s);
int cmd_export(const RunConfig& c, const Streams& s);
int cmd_gallery(const RunConfig& c, const Streams& s);

// Block names accepted by export --block: I-min, II-max, III-merge, IV, V-min, ...
std::vector<std::string> block_names();
BlockRealization block_by_name(const std::string& name);

// One CSV per chart, rows in grid order. Returns the written paths.
std::vector<std::string> export_patches(const std::vector<Patch>& patches, int grid, const std::string& dir);

}  // namespace arnold::cli
