#include <doctest.h>

#include "roomray/obj_loader.hpp"
#include "test_support.hpp"

using namespace roomray;

namespace {

std::map<std::string, Material> fixture_materials() {
  return {{"reflective", roomray::testing::reflective_material()},
          {"absorbent", roomray::testing::absorbent_material()}};
}

}  // namespace

TEST_CASE("two triangles with a resolved material") {
  const std::string obj =
      "# two faces\n"
      "v 0 0 0\n"
      "v 1 0 0\n"
      "v 1 1 0\n"
      "v 0 1 0\n"
      "usemtl reflective\n"
      "f 1 2 3\n"
      "f 1 3 4\n";
  LoadReport report;
  const auto mesh = parse_obj(obj, fixture_materials(), &report);
  CHECK(mesh.face_count() == 2);
  CHECK(mesh.vertices.size() == 4);
  CHECK(mesh.materials.size() == 1);
  CHECK(mesh.materials[0].name == "fully_reflective");
  CHECK(report.face_count == 2);
  CHECK(report.degenerate_skipped == 0);
}

TEST_CASE("quad faces fan-triangulate around the first corner") {
  const std::string obj =
      "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
      "usemtl reflective\n"
      "f 1 2 3 4\n";
  const auto mesh = parse_obj(obj, fixture_materials());
  REQUIRE(mesh.face_count() == 2);
  CHECK(mesh.faces[0].a == 0);
  CHECK(mesh.faces[0].b == 1);
  CHECK(mesh.faces[0].c == 2);
  CHECK(mesh.faces[1].a == 0);  // shared fan diagonal 0-2
  CHECK(mesh.faces[1].b == 2);
  CHECK(mesh.faces[1].c == 3);
}

TEST_CASE("negative indices count from the end") {
  const std::string obj =
      "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
      "usemtl reflective\n"
      "f -3 -2 -1\n";
  const auto mesh = parse_obj(obj, fixture_materials());
  REQUIRE(mesh.face_count() == 1);
  CHECK(mesh.faces[0].a == 0);
  CHECK(mesh.faces[0].c == 2);
}

TEST_CASE("slash-separated face tokens use the vertex index") {
  const std::string obj =
      "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
      "usemtl reflective\n"
      "f 1/1 2/2/2 3//3\n";
  CHECK(parse_obj(obj, fixture_materials()).face_count() == 1);
}

TEST_CASE("unresolved material is an error") {
  const std::string obj =
      "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
      "usemtl marble\n"
      "f 1 2 3\n";
  CHECK_THROWS_AS(parse_obj(obj, fixture_materials()),
                  UnresolvedMaterialError);
}

TEST_CASE("parse errors carry the line number") {
  SUBCASE("short vertex") {
    const std::string obj = "v 0 0 0\nv 1 0\n";
    try {
      parse_obj(obj, fixture_materials());
      FAIL("expected ObjParseError");
    } catch (const ObjParseError& err) {
      CHECK(err.line() == 2);
    }
  }
  SUBCASE("face index out of range") {
    const std::string obj =
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nusemtl reflective\nf 1 2 9\n";
    try {
      parse_obj(obj, fixture_materials());
      FAIL("expected ObjParseError");
    } catch (const ObjParseError& err) {
      CHECK(err.line() == 5);
    }
  }
  SUBCASE("face before usemtl") {
    const std::string obj = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n";
    CHECK_THROWS_AS(parse_obj(obj, fixture_materials()), ObjParseError);
  }
  SUBCASE("garbage face token") {
    const std::string obj =
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nusemtl reflective\nf 1 2 x\n";
    CHECK_THROWS_AS(parse_obj(obj, fixture_materials()), ObjParseError);
  }
}

TEST_CASE("degenerate faces are dropped with a warning") {
  const std::string obj =
      "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 2 0 0\n"
      "usemtl reflective\n"
      "f 1 2 3\n"
      "f 1 2 4\n";  // collinear
  LoadReport report;
  const auto mesh = parse_obj(obj, fixture_materials(), &report);
  CHECK(mesh.face_count() == 1);
  CHECK(report.degenerate_skipped == 1);
  CHECK(report.warnings.size() == 1);
}

TEST_CASE("material table JSON") {
  const std::string json = R"([
    {"name": "concrete", "absorption": [0.36,0.36,0.44,0.31,0.29,0.39,0.25,0.25]},
    {"name": "mirror", "absorption": [0,0,0,0,0,0,0,0]}
  ])";
  const auto table = parse_material_table(json);
  REQUIRE(table.size() == 2);
  CHECK(table.at("concrete").absorption[2] == doctest::Approx(0.44));

  CHECK_THROWS(parse_material_table(R"([{"name":"x","absorption":[1,2]}])"));
  CHECK_THROWS(parse_material_table(
      R"([{"name":"x","absorption":[0,0,0,0,0,0,0,2.0]}])"));
  CHECK_THROWS(parse_material_table(R"({"not":"an array"})"));
}
