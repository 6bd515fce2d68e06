// Extract a growing-then-shrinking sphere (a 4-ball sampled in x, y, z, t),
// cut it at a few times and write one OBJ per slice.
//
//   slice_hypersphere [out_dir]

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "steve/steve.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path out_dir = argc > 1 ? argv[1] : ".";
  try {
    const double R = 6.0;
    const steve::ToxelField field = steve::synth_hypersphere({16, 16, 16, 16}, {7.5, 7.5, 7.5, 7.5}, R);

    steve::ExtractionConfig cfg;
    cfg.isovalue = 0.0;
    cfg.placement = steve::Placement::Interpolate;
    const steve::TetMesh4 mesh = steve::extract_hypersurface(field, cfg);

    const auto report = steve::validate(mesh);
    std::cout << mesh.tets.size() << " tets, " << (report.ok() ? "closed" : "NOT closed") << '\n';

    for (double tau : {3.0, 5.5, 7.5, 9.5, 12.0}) {
      const steve::TriMesh3 s = steve::slice(mesh, tau);
      double worst = 0.0;
      const double r = std::sqrt(R * R - (tau - 7.5) * (tau - 7.5));
      for (const auto& v : s.vertices) {
        const double d = steve::norm(steve::Vec3{v[0] - 7.5, v[1] - 7.5, v[2] - 7.5});
        worst = std::max(worst, std::abs(d - r));
      }
      char name[64];
      std::snprintf(name, sizeof name, "sphere_t%04.1f.obj", tau);
      std::ofstream out(out_dir / name);
      steve::write_obj(out, s);
      std::cout << name << ": " << s.triangles.size() << " triangles, expected radius " << r
                << ", max deviation " << worst << '\n';
    }
  } catch (const steve::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return steve::exit_code(e.kind());
  }
  return 0;
}
