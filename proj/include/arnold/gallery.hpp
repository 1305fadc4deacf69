#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arnold/symplectize.hpp"

namespace arnold {

// What a gallery item is expected to do under the checks.
struct GalleryExpectation {
  bool steady = true;       // Euler, divergence and positivity residuals pass
  bool beta_exists = true;  // the stored beta meets beta(X) > 0, i_X d beta = 0, beta(Y) = 0
  bool obstructed = false;  // some critical point has Y != 0 parallel to X
  double euler_residual = 0.0;  // recorded sup residual; more than 10x drift fails
  std::string why;
};

struct GalleryItem {
  std::string name;
  std::string description;
  std::vector<Patch> patches;
  std::optional<AssembledFlow> flow;  // items built through assembly
  GalleryExpectation expected;
};

std::vector<std::string> gallery_names();

// Throws PreconditionError for an unknown name.
GalleryItem gallery_item(const std::string& name);

struct GalleryCheck {
  double euler_residual = 0.0;
  bool steady = false;
  bool beta_exists = false;
  bool obstructed = false;
  ObstructionReport obstruction;
  std::vector<std::string> problems;  // mismatches against the expectation
  bool matches = false;
};

GalleryCheck check_gallery_item(const GalleryItem& item, const SuiteOptions& o = {});

}  // namespace arnold
