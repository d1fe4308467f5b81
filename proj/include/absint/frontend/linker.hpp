#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "absint/frontend/ast.hpp"

namespace absint::frontend {

struct ProjectManifest {
  // target name -> ordered file list (paths as they should be opened)
  std::map<std::string, std::vector<std::string>> targets;
};

class LinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads `{"targets": {"<name>": {"files": [...]}}}`; relative file paths are
// taken relative to the manifest's directory.
ProjectManifest load_manifest(const std::string& path);

// Merges already-parsed units in order. Function order is unit order, then
// definition order; statements keep their original SourceLoc.
Program link_units(std::vector<Program> units);

Program link(const ProjectManifest& manifest, const std::string& target);

}  // namespace absint::frontend
