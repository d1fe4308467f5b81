#include "absint/frontend/linker.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "absint/frontend/parser.hpp"

namespace absint::frontend {

ProjectManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LinkError("cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw LinkError("malformed manifest '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("targets") || !j["targets"].is_object())
    throw LinkError("manifest '" + path + "' has no \"targets\" object");
  auto base = std::filesystem::path(path).parent_path();
  ProjectManifest m;
  for (const auto& [name, t] : j["targets"].items()) {
    if (!t.is_object() || !t.contains("files") || !t["files"].is_array())
      throw LinkError("target '" + name + "' has no \"files\" list");
    auto& files = m.targets[name];
    for (const auto& f : t["files"]) {
      std::filesystem::path p = f.get<std::string>();
      files.push_back((p.is_absolute() ? p : base / p).lexically_normal().string());
    }
  }
  return m;
}

Program link_units(std::vector<Program> units) {
  Program merged;
  std::map<std::string, SourceLoc> seen;
  for (auto& u : units) {
    for (auto& f : u.functions) {
      auto [it, fresh] = seen.emplace(f.name, f.loc);
      if (!fresh)
        throw LinkError("duplicate function '" + f.name + "' defined at " +
                        it->second.to_string() + " and " + f.loc.to_string());
      merged.functions.push_back(std::move(f));
    }
  }
  try {
    resolve(merged, true);
  } catch (const ParseError& e) {
    throw LinkError(std::string("link failed: ") + e.what());
  }
  return merged;
}

Program link(const ProjectManifest& manifest, const std::string& target) {
  auto it = manifest.targets.find(target);
  if (it == manifest.targets.end()) throw LinkError("unknown target '" + target + "'");
  std::vector<Program> units;
  for (const auto& path : it->second) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LinkError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    units.push_back(parse_unit(ss.str(), path));
  }
  return link_units(std::move(units));
}

}  // namespace absint::frontend
