// Regenerates the committed catalog/patch JSON files from the builtin
// entries, so the on-disk grammar can never drift from the code. Usage:
//   gen_catalog_data [output_dir]   (default: data)

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ahlab/chart.hpp"
#include "ahlab/patch.hpp"

using namespace ahlab;

namespace {

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path root = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(root / "catalog");
  std::filesystem::create_directories(root / "patches");

  write(root / "catalog/flat4.json", catalog("flat").to_json_text());
  write(root / "catalog/sphere_c1.json", catalog("sphere", 1.0).to_json_text());
  write(root / "catalog/real_hyperbolic_cm1.json",
        catalog("real_hyperbolic", -1.0).to_json_text());
  write(root / "catalog/fubini_study_c4.json", catalog("fubini_study", 4.0).to_json_text());
  write(root / "catalog/complex_hyperbolic_cm4.json",
        catalog("complex_hyperbolic", -4.0).to_json_text());
  write(root / "catalog/product_s2xs2.json", catalog("product_s2xs2").to_json_text());
  write(root / "catalog/non_kahler_flat_j.json", catalog("non_kahler_flat_J").to_json_text());

  write(root / "patches/affine_plane_flat.json",
        patch_catalog("affine_plane_flat").to_json_text());
  write(root / "patches/circle_flat_r05.json", patch_catalog("circle_flat", 0.5).to_json_text());
  write(root / "patches/round_sphere_flat_r05.json",
        patch_catalog("round_sphere_flat", 0.5).to_json_text());
  write(root / "patches/cylinder_flat_r1.json",
        patch_catalog("cylinder_flat", 1.0).to_json_text());
  write(root / "patches/great_sphere_in_sphere1.json",
        patch_catalog("great_sphere_in_sphere1").to_json_text());
  write(root / "patches/small_sphere_in_sphere1_r03.json",
        patch_catalog("small_sphere_in_sphere1", 0.3).to_json_text());
  write(root / "patches/slanted_plane_fs.json", patch_catalog("slanted_plane_fs").to_json_text());
  return 0;
}
