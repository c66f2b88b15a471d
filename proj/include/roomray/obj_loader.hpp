#ifndef ROOMRAY_OBJ_LOADER_HPP
#define ROOMRAY_OBJ_LOADER_HPP

#include <map>
#include <string>
#include <vector>

#include "roomray/geometry.hpp"

namespace roomray {

/// Summary of a mesh load: counts plus any non-fatal warnings
/// (currently only degenerate faces that were dropped).
struct LoadReport {
  std::size_t vertex_count = 0;
  std::size_t face_count = 0;
  std::size_t degenerate_skipped = 0;
  std::vector<std::string> warnings;
};

/// Parse error carrying the 1-based line number of the offending record.
class ObjParseError : public std::runtime_error {
 public:
  ObjParseError(const std::string& what, int line)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Raised when a `usemtl` name does not resolve in the material table.
class UnresolvedMaterialError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Load the OBJ subset: `v x y z`, `f i j k ...` (1-based, negative indices
/// count from the end), `usemtl name`, `#` comments. Polygons with more than
/// three vertices are fan-triangulated. Every face must be preceded by a
/// `usemtl` whose name resolves in `material_map`.
TriangleMesh load_obj(const std::string& path,
                      const std::map<std::string, Material>& material_map,
                      LoadReport* report = nullptr);

/// Same parser over an already-read OBJ text (used by tests and fixtures).
TriangleMesh parse_obj(const std::string& text,
                       const std::map<std::string, Material>& material_map,
                       LoadReport* report = nullptr);

/// Material table: JSON array of { "name": string, "absorption": [8 reals] }.
std::map<std::string, Material> load_material_table(const std::string& path);
std::map<std::string, Material> parse_material_table(const std::string& json_text);

}  // namespace roomray

#endif  // ROOMRAY_OBJ_LOADER_HPP
