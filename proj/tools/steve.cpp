// steve: command line front end for 4D hypersurface extraction and slicing.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steve/steve.hpp"

namespace fs = std::filesystem;
using namespace steve;

namespace {

const std::map<std::string, ConnectivityMode> kModes{
    {"connect", ConnectivityMode::Connect},
    {"disconnect", ConnectivityMode::Disconnect},
    {"mixed", ConnectivityMode::Mixed},
};
const std::map<std::string, Placement> kPlacements{
    {"midpoint", Placement::Midpoint},
    {"interpolate", Placement::Interpolate},
};

std::string quote(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

int report(ErrorKind kind, const std::string& message) {
  std::cerr << "error: code=" << exit_code(kind) << " kind=" << to_string(kind) << " message=\"" << quote(message)
            << "\"\n";
  return exit_code(kind);
}

std::vector<double> parse_times(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) fail(ErrorKind::Usage, "bad slice time '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorKind::Usage, "no slice times given");
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

void print_histogram(const char* title, const auto& hist) {
  std::cout << "  " << title << ":";
  for (const auto& [k, v] : hist) std::cout << ' ' << k << ':' << v;
  std::cout << '\n';
}

// --- subcommands -----------------------------------------------------------

struct ExtractArgs {
  std::string input, output, mode = "mixed", placement = "midpoint";
  double isovalue = 0.0, clamp = 1e-3;
  bool strict = false;
  int workers = 0;
};

int run_extract(const ExtractArgs& a) {
  ExtractionConfig cfg;
  cfg.isovalue = a.isovalue;
  cfg.mode = kModes.at(a.mode);
  cfg.placement = kPlacements.at(a.placement);
  cfg.clamp = a.clamp;
  cfg.strict = a.strict;
  cfg.workers = a.workers;
  const ToxelField field = load_volume(a.input);
  const TetMesh4 mesh = extract_hypersurface(field, cfg);
  save_st4(a.output, mesh);
  std::cout << "wrote " << a.output << ": " << mesh.vertices.size() << " points, " << mesh.tets.size() << " tets\n";
  return 0;
}

struct SliceArgs {
  std::string mesh, times, format = "obj", prefix = "slice";
  int workers = 0;
};

int run_slice(const SliceArgs& a) {
  const auto taus = parse_times(a.times);
  const TetMesh4 mesh = load_st4(a.mesh);
  bool all_closed = true;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const TriMesh3 s = slice(mesh, taus[k], a.workers);
    std::ostringstream text;
    if (a.format == "obj") {
      write_obj(text, s);
    } else {
      write_ply(text, s);
    }
    const fs::path out = a.prefix + "_" + std::to_string(k) + "." + a.format;
    write_file(out, text.str());
    const SliceReport r = check_slice(s);
    std::cout << out.string() << ": t=" << format_real(taus[k]) << " vertices=" << s.vertices.size()
              << " triangles=" << s.triangles.size() << " components=" << r.components
              << (r.closed() ? "" : " OPEN") << '\n';
    all_closed = all_closed && r.closed();
  }
  if (!all_closed) fail(ErrorKind::Validation, "slice mesh is not closed; validate the input mesh");
  return 0;
}

int run_validate(const std::string& path) {
  const TetMesh4 mesh = load_st4(path);
  const ValidationReport r = validate(mesh);
  std::cout << "vertices=" << r.vertices << " edges=" << r.edges << " triangles=" << r.triangles << " tets=" << r.tets
            << " euler=" << r.euler() << " components=" << r.components.size() << '\n';
  for (const auto& n : r.notes()) std::cout << "note: " << n << '\n';
  for (const auto& f : r.failures()) std::cout << "fail: " << f << '\n';
  if (!r.closed() || !r.oriented()) fail(ErrorKind::Validation, "mesh is not closed and consistently oriented");
  std::cout << "PASS\n";
  return 0;
}

int run_gen_table(bool verify, const std::string& table_path) {
  const auto& topo = topology();
  const PathTable generated = generate_table(topo.geometry);
  if (!verify) {
    for (const auto& row : generated.rows()) {
      for (const auto& p : row.paths) std::cout << p.from.value() << ' ' << p.via.value() << ' ' << p.to.value() << '\n';
    }
    return 0;
  }
  PathTable reference = PathTable::transcribed();
  if (!table_path.empty()) {
    std::ifstream in(table_path);
    if (!in) fail(ErrorKind::Io, "cannot open table '" + table_path + "'");
    reference = PathTable::parse(in);
  }
  const int matching = generated.matching_paths(reference);
  std::cout << matching << '/' << PathTable::kPathCount << " paths match\n";
  if (matching != PathTable::kPathCount) fail(ErrorKind::Validation, "generated table differs from the reference");
  return 0;
}

int run_enumerate(const std::string& mode, int samples, std::uint64_t seed) {
  bool all_clean = true;
  for (const auto& [name, m] : kModes) {
    if (mode != "all" && mode != name) continue;
    const CellCensus c = enumerate_patterns(m, samples, seed);
    std::cout << name << ": cells=" << c.cells << " cycles=" << c.cycles << " sections=" << c.sections
              << " bad_lengths=" << c.bad_lengths << " open_sections=" << c.open_sections << " off_cube=" << c.off_cube
              << " failed=" << c.failed_cells << '\n';
    print_histogram("cycle lengths", c.cycle_lengths);
    print_histogram("sections per cell", c.sections_per_cell);
    print_histogram("section surface euler", c.surface_euler);
    all_clean = all_clean && c.clean();
  }
  if (!all_clean) fail(ErrorKind::Validation, "census found invalid cycles or sections");
  return 0;
}

struct SynthArgs {
  std::string shape, out;
  std::vector<int> dims;
  std::vector<double> center;
  std::vector<int> index;
  double radius = 8.0, split = 0.5;
  DumbbellParams dumbbell;
  std::vector<double> dumbbell_center;
};

int run_synth(const SynthArgs& a) {
  SynthSpec spec;
  const std::map<std::string, SynthShape> shapes{{"hypersphere", SynthShape::Hypersphere},
                                                  {"dumbbell", SynthShape::Dumbbell},
                                                  {"single-toxel", SynthShape::SingleToxel},
                                                  {"iso-slab", SynthShape::IsoSlab}};
  spec.shape = shapes.at(a.shape);
  switch (spec.shape) {
    case SynthShape::Hypersphere: spec.dims = {24, 24, 24, 24}; break;
    case SynthShape::Dumbbell: spec.dims = {32, 16, 16, 12}; break;
    case SynthShape::SingleToxel: spec.dims = {3, 3, 3, 3}; break;
    case SynthShape::IsoSlab: spec.dims = {4, 4, 4, 4}; break;
  }
  if (!a.dims.empty()) std::copy(a.dims.begin(), a.dims.end(), spec.dims.begin());
  for (int a4 = 0; a4 < 4; ++a4) spec.center[a4] = (spec.dims[a4] - 1) / 2.0;
  if (!a.center.empty()) std::copy(a.center.begin(), a.center.end(), spec.center.begin());
  if (!a.index.empty()) {
    std::copy(a.index.begin(), a.index.end(), spec.index.begin());
  } else {
    for (int a4 = 0; a4 < 4; ++a4) spec.index[a4] = spec.dims[a4] / 2;
  }
  spec.radius = a.radius;
  spec.split = a.split;
  spec.dumbbell = a.dumbbell;
  if (!a.dumbbell_center.empty()) std::copy(a.dumbbell_center.begin(), a.dumbbell_center.end(), spec.dumbbell.center.begin());
  const ToxelField field = synth(spec);
  save_volume(a.out, field);
  std::cout << "wrote " << a.out << ": " << spec.dims[0] << 'x' << spec.dims[1] << 'x' << spec.dims[2] << 'x'
            << spec.dims[3] << '\n';
  return 0;
}

int run_info(const std::string& mesh_path, const std::string& input_path, double isovalue) {
  if (!mesh_path.empty()) {
    const TetMesh4 mesh = load_st4(mesh_path);
    Vec4 lo, hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& v : mesh.vertices) {
      for (int a = 0; a < 4; ++a) {
        lo[a] = std::min(lo[a], v.pos[a]);
        hi[a] = std::max(hi[a], v.pos[a]);
      }
    }
    const ValidationReport r = validate(mesh);
    std::cout << "points " << mesh.vertices.size() << "\ntets " << mesh.tets.size() << "\ncomponents "
              << r.components.size() << '\n';
    if (!mesh.vertices.empty()) {
      std::cout << "bbox";
      for (int a = 0; a < 4; ++a) std::cout << ' ' << format_real(lo[a]) << ' ' << format_real(hi[a]);
      std::cout << '\n';
    }
    std::cout << "closed " << (r.closed() ? "yes" : "no") << "\noriented " << (r.oriented() ? "yes" : "no") << '\n';
    for (const auto& n : mesh.attr_names) std::cout << "attr " << n << '\n';
  }
  if (!input_path.empty()) {
    const ToxelField f = load_volume(input_path);
    const auto& d = f.dims();
    const auto [mn, mx] = std::minmax_element(f.scalar().begin(), f.scalar().end());
    std::cout << "dims " << d[0] << ' ' << d[1] << ' ' << d[2] << ' ' << d[3] << "\ntoxels " << f.size() << "\nrange "
              << format_real(*mn) << ' ' << format_real(*mx) << "\nactive " << f.count_active(isovalue)
              << " (isovalue " << format_real(isovalue) << ")\n";
    for (const auto& n : f.aux_names()) std::cout << "aux " << n << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"4D iso-hypersurface extraction, validation and time slicing"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "extract the iso-hypersurface of a 4D volume");
  extract->add_option("--input", ex.input, "volume header")->required();
  extract->add_option("--isovalue", ex.isovalue, "isovalue; toxels >= it are active")->required();
  extract->add_option("--mode", ex.mode)->transform(CLI::IsMember({"connect", "disconnect", "mixed"}));
  extract->add_option("--placement", ex.placement)->transform(CLI::IsMember({"midpoint", "interpolate"}));
  extract->add_option("--output", ex.output, "output .st4 mesh")->required();
  extract->add_option("--clamp", ex.clamp, "interpolation parameter clamp");
  extract->add_flag("--strict", ex.strict, "active means strictly above the isovalue");
  extract->add_option("--workers", ex.workers, "worker threads (default: STEVE_WORKERS or all cores)");

  SliceArgs sl;
  auto* slice_cmd = app.add_subcommand("slice", "cut a 4D mesh at constant times");
  slice_cmd->add_option("--mesh", sl.mesh)->required();
  slice_cmd->add_option("--t", sl.times, "comma-separated slice times")->required();
  slice_cmd->add_option("--format", sl.format)->transform(CLI::IsMember({"obj", "ply"}));
  slice_cmd->add_option("--out-prefix", sl.prefix);
  slice_cmd->add_option("--workers", sl.workers);

  std::string validate_mesh;
  auto* validate_cmd = app.add_subcommand("validate", "check closure and orientation of a 4D mesh");
  validate_cmd->add_option("--mesh", validate_mesh)->required();

  bool verify = false;
  std::string table_path;
  auto* gen = app.add_subcommand("gen-table", "print or verify the octant path table");
  gen->add_flag("--verify", verify, "compare against the reference table");
  gen->add_option("--table", table_path, "reference table file (default: built in)");

  std::string census_mode = "all";
  int samples = 1000;
  std::uint64_t seed = 1;
  auto* enumerate = app.add_subcommand("enumerate-cell", "run every activity pattern through one cell");
  enumerate->add_option("--mode", census_mode)->transform(CLI::IsMember({"all", "connect", "disconnect", "mixed"}));
  enumerate->add_option("--samples", samples, "random value sets per ambiguous pattern (mixed)");
  enumerate->add_option("--seed", seed);

  SynthArgs sy;
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic test volume");
  synth_cmd->add_option("shape", sy.shape)
      ->required()
      ->transform(CLI::IsMember({"hypersphere", "dumbbell", "single-toxel", "iso-slab"}));
  synth_cmd->add_option("--out", sy.out, "output header path")->required();
  synth_cmd->add_option("--dims", sy.dims)->expected(4);
  synth_cmd->add_option("--center", sy.center, "hypersphere center")->expected(4);
  synth_cmd->add_option("--radius", sy.radius, "hypersphere radius");
  synth_cmd->add_option("--index", sy.index, "single-toxel position")->expected(4);
  synth_cmd->add_option("--split", sy.split, "iso-slab: active for t <= split");
  synth_cmd->add_option("--ball-center", sy.dumbbell_center, "dumbbell midpoint (x y z)")->expected(3);
  synth_cmd->add_option("--half-distance", sy.dumbbell.half_distance);
  synth_cmd->add_option("--drift", sy.dumbbell.drift);
  synth_cmd->add_option("--ball-radius", sy.dumbbell.radius);
  synth_cmd->add_option("--neck-radius", sy.dumbbell.neck_radius);
  synth_cmd->add_option("--pinch", sy.dumbbell.pinch, "time at which the neck vanishes");

  std::string info_mesh, info_input;
  double info_iso = 0.0;
  auto* info = app.add_subcommand("info", "summarize a mesh or a volume");
  auto* im = info->add_option("--mesh", info_mesh);
  auto* ii = info->add_option("--input", info_input);
  info->add_option("--isovalue", info_iso);
  im->excludes(ii);
  ii->excludes(im);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(ErrorKind::Usage, e.what());
  }

  try {
    if (*extract) return run_extract(ex);
    if (*slice_cmd) return run_slice(sl);
    if (*validate_cmd) return run_validate(validate_mesh);
    if (*gen) return run_gen_table(verify, table_path);
    if (*enumerate) return run_enumerate(census_mode, samples, seed);
    if (*synth_cmd) return run_synth(sy);
    if (*info) {
      if (info_mesh.empty() && info_input.empty()) fail(ErrorKind::Usage, "info needs --mesh or --input");
      return run_info(info_mesh, info_input, info_iso);
    }
  } catch (const Error& e) {
    return report(e.kind(), e.what());
  } catch (const std::exception& e) {
    return report(ErrorKind::Internal, e.what());
  }
  return report(ErrorKind::Usage, "no subcommand");
}
