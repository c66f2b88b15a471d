#include "roomray/obj_loader.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace roomray {

namespace {

int resolve_index(long raw, std::size_t vertex_count, int line) {
  long idx = raw;
  if (idx < 0) idx += static_cast<long>(vertex_count) + 1;  // -1 is the last vertex
  if (idx < 1 || idx > static_cast<long>(vertex_count)) {
    std::ostringstream msg;
    msg << "vertex index " << raw << " out of range";
    throw ObjParseError(msg.str(), line);
  }
  return static_cast<int>(idx - 1);
}

}  // namespace

TriangleMesh parse_obj(const std::string& text,
                       const std::map<std::string, Material>& material_map,
                       LoadReport* report) {
  TriangleMesh mesh;
  LoadReport local;
  std::map<std::string, int> material_ids;  // name -> index in mesh.materials
  int current_material = -1;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;

    if (tag == "v") {
      Vec3 v;
      if (!(ls >> v.x() >> v.y() >> v.z())) {
        throw ObjParseError("malformed vertex record", line_no);
      }
      mesh.vertices.push_back(v);
    } else if (tag == "usemtl") {
      std::string name;
      if (!(ls >> name)) {
        throw ObjParseError("usemtl without a material name", line_no);
      }
      auto known = material_ids.find(name);
      if (known != material_ids.end()) {
        current_material = known->second;
      } else {
        auto entry = material_map.find(name);
        if (entry == material_map.end()) {
          throw UnresolvedMaterialError("material '" + name +
                                        "' not found in the material table");
        }
        current_material = static_cast<int>(mesh.materials.size());
        mesh.materials.push_back(entry->second);
        material_ids.emplace(name, current_material);
      }
    } else if (tag == "f") {
      std::vector<int> corners;
      std::string token;
      while (ls >> token) {
        // accept i, i/j, i/j/k, i//k; only the vertex index is used
        const std::string first = token.substr(0, token.find('/'));
        std::size_t used = 0;
        long raw = 0;
        try {
          raw = std::stol(first, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != first.size() || first.empty()) {
          throw ObjParseError("malformed face index '" + token + "'",
                              line_no);
        }
        corners.push_back(resolve_index(raw, mesh.vertices.size(), line_no));
      }
      if (corners.size() < 3) {
        throw ObjParseError("face with fewer than 3 vertices", line_no);
      }
      if (current_material < 0) {
        throw ObjParseError("face before any usemtl record", line_no);
      }
      for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
        Triangle tri{corners[0], corners[k], corners[k + 1],
                     current_material};
        mesh.faces.push_back(tri);
        const int f = static_cast<int>(mesh.faces.size()) - 1;
        if (mesh.face_area(f) <= kDegenerateFaceArea) {
          mesh.faces.pop_back();
          ++local.degenerate_skipped;
          std::ostringstream msg;
          msg << "line " << line_no << ": degenerate face skipped";
          local.warnings.push_back(msg.str());
        }
      }
    }
    // other records (vn, vt, o, g, s, mtllib, ...) are ignored
  }

  local.vertex_count = mesh.vertices.size();
  local.face_count = mesh.faces.size();
  if (report) *report = local;
  mesh.validate();
  return mesh;
}

TriangleMesh load_obj(const std::string& path,
                      const std::map<std::string, Material>& material_map,
                      LoadReport* report) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open mesh file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_obj(buffer.str(), material_map, report);
}

std::map<std::string, Material> parse_material_table(
    const std::string& json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  if (!doc.is_array()) {
    throw std::runtime_error("material table must be a JSON array");
  }
  std::map<std::string, Material> table;
  for (const auto& entry : doc) {
    Material m;
    m.name = entry.at("name").get<std::string>();
    const auto& alpha = entry.at("absorption");
    if (!alpha.is_array() || alpha.size() != kNumBands) {
      throw std::runtime_error("material '" + m.name + "' needs exactly " +
                               std::to_string(kNumBands) +
                               " absorption values");
    }
    for (int b = 0; b < kNumBands; ++b) {
      m.absorption[b] = alpha[b].get<double>();
      if (m.absorption[b] < 0.0 || m.absorption[b] > 1.0) {
        throw std::runtime_error("material '" + m.name +
                                 "' has absorption outside [0,1]");
      }
    }
    table[m.name] = m;
  }
  return table;
}

std::map<std::string, Material> load_material_table(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open material table: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_material_table(buffer.str());
}

}  // namespace roomray
