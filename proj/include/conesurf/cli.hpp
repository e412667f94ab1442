#pragma once

// The `st` command line. Machine-readable JSON goes to stdout or --out;
// human summaries go to stderr.
// Exit codes: 0 success, 2 invalid input or domain error, 3 check failed.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "conesurf/io.hpp"

namespace conesurf::cli {

using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitViolation = 3;

namespace detail {

inline json obj_schema(const char* title, json props, json required) {
  return {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
          {"title", title},
          {"type", "object"},
          {"properties", std::move(props)},
          {"required", std::move(required)}};
}

inline json num() { return {{"type", "number"}}; }
inline json integer() { return {{"type", "integer"}}; }
inline json str() { return {{"type", "string"}}; }
inline json nums(int n = -1) {
  json j = {{"type", "array"}, {"items", num()}};
  if (n >= 0) j["minItems"] = j["maxItems"] = n;
  return j;
}
inline json schema_tag() { return {{"const", io::kSchema}}; }

inline json leg_schema() {
  return {{"oneOf",
           json::array({{{"type", "object"},
                         {"properties", {{"kind", {{"const", "boundary"}}}, {"length", num()}}},
                         {"required", {"kind", "length"}}},
                        {{"type", "object"},
                         {"properties", {{"kind", {{"const", "cone"}}}, {"angle", num()}}},
                         {"required", {"kind", "angle"}}}})}};
}

inline json surface_schema() {
  json leg_ref = {{"oneOf", json::array({str(), {{"type", "object"},
                                                 {"properties", {{"cone", integer()}}},
                                                 {"required", {"cone"}}}})}};
  json piece = {{"type", "object"},
                {"properties", {{"id", str()}, {"legs", {{"type", "array"}, {"items", leg_ref}, {"minItems", 3}, {"maxItems", 3}}}}},
                {"required", {"legs"}}};
  return obj_schema("st-1 surface",
                    {{"schema", schema_tag()},
                     {"genus", integer()},
                     {"cone_angles", nums()},
                     {"curves", {{"type", "array"}, {"items", str()}}},
                     {"pieces", {{"type", "array"}, {"items", piece}}},
                     {"fn", {{"type", "object"},
                             {"properties", {{"lengths", nums()}, {"twists", nums()}}},
                             {"required", {"lengths"}}}}},
                    {"genus", "curves", "pieces", "fn"});
}

inline json word_schema() {
  json step = {{"type", "object"},
               {"properties",
                {{"piece", str()}, {"enter", integer()}, {"exit", integer()}, {"winding", integer()}, {"turn", {{"enum", {-1, 1}}}}}},
               {"required", {"piece", "enter", "exit"}}};
  return {{"title", "st-1 curve word"},
          {"oneOf", json::array({{{"type", "object"},
                                  {"properties", {{"steps", {{"type", "array"}, {"items", step}}}}},
                                  {"required", {"steps"}}},
                                 {{"type", "object"}, {"properties", {{"curve", str()}}}, {"required", {"curve"}}},
                                 {{"type", "array"}, {"items", step}}})}};
}

inline json lamination_schema() {
  json leaf = {{"type", "object"}, {"properties", {{"curve", str()}, {"weight", num()}}}, {"required", {"curve", "weight"}}};
  return {{"title", "st-1 rational lamination"},
          {"oneOf", json::array({{{"type", "array"}, {"items", leaf}},
                                 {{"type", "object"},
                                  {"properties", {{"leaves", {{"type", "array"}, {"items", leaf}}}}},
                                  {"required", {"leaves"}}}})}};
}

inline json bending_schema() {
  return obj_schema(
      "st-1 bending data",
      {{"schema", schema_tag()},
       {"particles", {{"type", "array"},
                      {"items", {{"type", "object"},
                                 {"properties", {{"angle", num()}, {"segment_length", num()}}},
                                 {"required", {"angle"}}}}}},
       {"pleating", {{"type", "array"},
                     {"items", {{"type", "object"},
                                {"properties", {{"curve", str()}, {"side", {{"enum", {"+", "-"}}}}, {"weight", num()}}},
                                {"required", {"curve", "side", "weight"}}}}}}},
      json::array());
}

inline json certificate_schema() {
  return obj_schema("st-1 filling certificate",
                    {{"schema", schema_tag()},
                     {"genus", integer()},
                     {"crossings", integer()},
                     {"faces", {{"type", "array"},
                                {"items", {{"type", "object"},
                                           {"properties", {{"disk", {{"type", "boolean"}}}, {"marked_points", integer()}}}}}}}},
                    {"genus", "crossings", "faces"});
}

inline json report_schema() {
  json rec = {{"type", "object"},
              {"properties",
               {{"index", integer()}, {"family", str()}, {"word", str()}, {"cone_angles", nums()}, {"length", num()},
                {"twist", num()}, {"weight", num()}, {"left", num()}, {"middle", num()}, {"right", num()},
                {"slack", num()}, {"residual", num()}, {"pass", {{"type", "boolean"}}}, {"error", str()}}}};
  return obj_schema("st-1 bound report",
                    {{"schema", schema_tag()},
                     {"kind", {{"enum", {"quake", "graft", "area", "max-length"}}}},
                     {"seed", integer()},
                     {"samples", integer()},
                     {"violations", integer()},
                     {"min_slack", {{"type", {"number", "null"}}}},
                     {"records", {{"type", "array"}, {"items", rec}}}},
                    {"schema", "kind", "seed", "samples", "violations", "records"});
}

inline json schema_for(const std::string& cmd) {
  json s = {{"command", cmd}, {"schema", io::kSchema}};
  if (cmd == "triangle-solve") {
    s["input"] = obj_schema("st-1 triangle input",
                            {{"kinds", {{"type", "array"}, {"items", {{"enum", {"usual", "hyperideal"}}}}, {"minItems", 3}, {"maxItems", 3}}},
                             {"lengths", nums(3)},
                             {"angles", nums(3)}},
                            {"kinds"});
    s["output"] = obj_schema("st-1 triangle",
                             {{"schema", schema_tag()},
                              {"kinds", {{"type", "array"}, {"items", str()}}},
                              {"vertices", {{"type", "array"}, {"items", nums(3)}}},
                              {"lengths", nums(3)},
                              {"angle_data", nums(3)},
                              {"angle_rule", str()},
                              {"area", num()},
                              {"truncated_boundary", {{"type", "array"}}}},
                             {"schema", "kinds", "vertices", "lengths", "angle_data"});
  } else if (cmd == "pants-build") {
    s["input"] = {{"type", "array"}, {"items", leg_schema()}, {"minItems", 3}, {"maxItems", 3}};
    s["output"] = obj_schema("st-1 pants",
                             {{"schema", schema_tag()},
                              {"legs", {{"type", "array"}, {"items", leg_schema()}}},
                              {"seams", nums(3)},
                              {"area", num()},
                              {"triangle", {{"type", "object"}}}},
                             {"schema", "legs", "seams", "area"});
  } else if (cmd == "surface-build") {
    s["input"] = surface_schema();
    s["output"] = obj_schema("st-1 surface geometry",
                             {{"schema", schema_tag()},
                              {"admissible_area", num()},
                              {"area", num()},
                              {"pieces", {{"type", "array"}}},
                              {"gluings", {{"type", "array"}}}},
                             {"schema", "admissible_area", "area", "pieces", "gluings"});
  } else if (cmd == "length") {
    s["input"] = {{"surface", surface_schema()}, {"word", word_schema()}};
    s["output"] = obj_schema("st-1 length",
                             {{"schema", schema_tag()}, {"length", num()}, {"class", str()}, {"trace", num()}},
                             {"schema", "length"});
  } else if (cmd == "quake") {
    s["input"] = {{"surface", surface_schema()}, {"lamination", lamination_schema()}, {"word", word_schema()}};
    s["output"] = surface_schema();
  } else if (cmd == "graft") {
    s["input"] = {{"surface", surface_schema()}, {"lamination", lamination_schema()}, {"word", word_schema()}};
    s["output"] = obj_schema("st-1 grafted length",
                             {{"schema", schema_tag()},
                              {"length", num()},
                              {"hyperbolic_length", num()},
                              {"intersection", num()},
                              {"residual", num()},
                              {"iterations", integer()},
                              {"exit_offsets", nums()},
                              {"entry_offsets", nums()},
                              {"segments", {{"type", "array"}}}},
                             {"schema", "length"});
  } else if (cmd == "check") {
    s["output"] = report_schema();
  } else if (cmd == "safe-radius") {
    s["output"] = obj_schema("st-1 safe radius",
                             {{"schema", schema_tag()}, {"theta", num()}, {"eps", num()}, {"radius", num()}},
                             {"schema", "theta", "eps", "radius"});
  } else if (cmd == "double-plan") {
    s["input"] = bending_schema();
    s["output"] = obj_schema("st-1 doubling plan",
                             {{"schema", schema_tag()},
                              {"locus", {{"type", "array"}}},
                              {"orbifold_start", {{"type", "object"}}},
                              {"path", {{"type", "array"},
                                        {"items", {{"type", "object"},
                                                   {"properties", {{"t", num()}, {"weights", nums()}, {"angles", nums()}}}}}}},
                              {"warnings", {{"type", "array"}, {"items", str()}}}},
                             {"schema", "orbifold_start", "path"});
  } else if (cmd == "validate-bending") {
    s["input"] = {{"bending", bending_schema()}, {"certificate", certificate_schema()}};
    s["output"] = obj_schema("st-1 bending validation",
                             {{"schema", schema_tag()}, {"ok", {{"type", "boolean"}}}, {"issues", {{"type", "array"}, {"items", str()}}}},
                             {"schema", "ok", "issues"});
  }
  return s;
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Format, "cannot write " + path);
  f << text;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

inline Triple parse_triple(const std::string& s, const char* what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw FormatError("", std::string(what) + " needs three comma-separated values");
  Triple t{};
  for (int i = 0; i < 3; ++i) {
    std::size_t used = 0;
    try {
      t[i] = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != parts[i].size()) throw FormatError("", std::string(what) + " value '" + parts[i] + "' is not a number");
  }
  return t;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hyperbolic cone surfaces: triangles, pants, Fenchel-Nielsen geometry and length estimates", "st"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  bool schema = false;
  std::string out_path;
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--schema", schema, "Print the JSON schema of this command and exit");
    sub->add_option("--out,-o", out_path, "Output file (default stdout)");
    return sub;
  };

  // triangle-solve
  std::string tri_kinds, tri_lengths, tri_angles, tri_input;
  auto* tri = common(app.add_subcommand("triangle-solve", "Realize an extended triangle from lengths or angle data"));
  tri->add_option("--kinds", tri_kinds, "Vertex kinds, e.g. H,H,U");
  tri->add_option("--lengths", tri_lengths, "Edge lengths l0,l1,l2");
  tri->add_option("--angles", tri_angles, "Angle data a0,a1,a2 (angles or truncation lengths)");
  tri->add_option("--input", tri_input, "JSON input file");

  // pants-build
  std::string legs_spec, pants_input;
  auto* pants = common(app.add_subcommand("pants-build", "Build a singular pair of pants from leg invariants"));
  pants->add_option("--legs", legs_spec, "Three legs, e.g. cone:1.5,boundary:2,boundary:2");
  pants->add_option("--input", pants_input, "JSON array of three legs");

  // surface-build, length, quake, graft
  std::string surface_path, word_path, lam_path;
  auto* surf = common(app.add_subcommand("surface-build", "Assemble a surface from Fenchel-Nielsen data"));
  surf->add_option("--input,--surface", surface_path, "Surface file (schema st-1)");
  auto* len = common(app.add_subcommand("length", "Geodesic length of a curve word"));
  len->add_option("--surface", surface_path, "Surface file");
  len->add_option("--word", word_path, "Curve word file");
  auto* quake = common(app.add_subcommand("quake", "Right earthquake along weighted pants curves"));
  quake->add_option("--surface", surface_path, "Surface file");
  quake->add_option("--lamination", lam_path, "Lamination file");
  quake->add_option("--word", word_path, "Optional word whose lengths are reported");
  auto* graft = common(app.add_subcommand("graft", "Length of a curve in the grafted metric"));
  graft->add_option("--surface", surface_path, "Surface file");
  graft->add_option("--lamination", lam_path, "Lamination file");
  graft->add_option("--word", word_path, "Curve word file");

  // check
  std::string suite, csv_path, family = "mixed";
  SampleConfig cfg;
  auto* check = common(app.add_subcommand("check", "Run a randomized verification suite"));
  check->add_option("suite", suite, "quake | graft | area | max-length");
  check->add_option("--samples", cfg.samples, "Number of samples")->capture_default_str();
  check->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  check->add_option("--family", family, "torus | sphere4 | mixed")->capture_default_str();
  check->add_option("--csv", csv_path, "Also write a CSV report");
  check->add_option("--length-min", cfg.length_min, "Smallest sampled curve length")->capture_default_str();
  check->add_option("--length-max", cfg.length_max, "Largest sampled curve length")->capture_default_str();
  check->add_option("--twist-max", cfg.twist_max, "Twists sampled in [-t, t]")->capture_default_str();
  check->add_option("--weight-max", cfg.weight_max, "Weights sampled in [0, w]")->capture_default_str();
  check->add_option("--winding-max", cfg.winding_max, "Windings sampled in [-k, k]")->capture_default_str();

  // safe-radius
  double theta = 0.0, eps = 0.0;
  auto* safe = common(app.add_subcommand("safe-radius", "Radius of the disk kept clear around a cone point"));
  safe->add_option("--theta", theta, "Cone angle");
  safe->add_option("--eps", eps, "Radius");

  // double-plan, validate-bending
  std::string bending_path, cert_path;
  int steps = 11;
  auto* plan = common(app.add_subcommand("double-plan", "Doubled singular locus, orbifold start and deformation path"));
  plan->add_option("--input", bending_path, "Bending data file");
  plan->add_option("--steps", steps, "Number of path samples")->capture_default_str();
  auto* vb = common(app.add_subcommand("validate-bending", "Check bending data against a filling certificate"));
  vb->add_option("--input", bending_path, "Bending data file");
  vb->add_option("--certificate", cert_path, "Filling certificate file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (schema) {
    out << io::dump(detail::schema_for(name));
    return kExitOk;
  }
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw FormatError("", std::string("missing required option ") + flag);
  };
  auto emit = [&](const json& j) { detail::write_text(out_path, io::dump(j), out); };

  try {
    if (name == "triangle-solve") {
      json in;
      if (!tri_input.empty()) {
        in = io::read_file(tri_input);
      } else {
        need(tri_kinds, "--kinds");
        in["kinds"] = detail::split(tri_kinds, ',');
        if (!tri_lengths.empty()) {
          const Triple t = detail::parse_triple(tri_lengths, "--lengths");
          in["lengths"] = {t[0], t[1], t[2]};
        }
        if (!tri_angles.empty()) {
          const Triple t = detail::parse_triple(tri_angles, "--angles");
          in["angles"] = {t[0], t[1], t[2]};
        }
      }
      const json& kinds = io::as_array(io::field(in, "kinds", ""), "/kinds");
      if (kinds.size() != 3) throw FormatError("/kinds", "expected three vertex kinds");
      Kinds k{};
      for (std::size_t i = 0; i < 3; ++i) k[i] = io::parse_kind(io::as_string(kinds[i], io::child("/kinds", i)), io::child("/kinds", i));
      const bool has_l = in.contains("lengths"), has_a = in.contains("angles");
      if (has_l == has_a) throw FormatError("", "give exactly one of lengths or angles");
      const char* key = has_l ? "lengths" : "angles";
      const auto v = io::number_array(in[key], std::string("/") + key);
      if (v.size() != 3) throw FormatError(std::string("/") + key, "expected three values");
      const Triple t{v[0], v[1], v[2]};
      const ExtendedTriangle tr = has_l ? solve_from_lengths(k, t) : solve_from_angles(k, t);
      emit(io::to_json(tr));
      return kExitOk;
    }
    if (name == "pants-build") {
      std::vector<Leg> legs;
      if (!pants_input.empty()) {
        const json in = io::read_file(pants_input);
        const json& arr = in.is_object() ? io::field(in, "legs", "") : in;
        const std::string at = in.is_object() ? "/legs" : "";
        for (std::size_t i = 0; i < io::as_array(arr, at).size(); ++i) legs.push_back(io::leg_from_json(arr[i], io::child(at, i)));
      } else {
        need(legs_spec, "--legs");
        for (const auto& s : detail::split(legs_spec, ',')) legs.push_back(io::parse_leg_spec(s));
      }
      if (legs.size() != 3) throw FormatError("", "a pair of pants has exactly three legs");
      emit(io::to_json(build_pants({legs[0], legs[1], legs[2]})));
      return kExitOk;
    }
    if (name == "safe-radius") {
      const double r = safe_radius(theta, eps);
      emit({{"schema", io::kSchema}, {"theta", theta}, {"eps", eps}, {"radius", r}});
      return kExitOk;
    }
    if (name == "check") {
      need(suite, "suite");
      if (family == "torus")
        cfg.family = Family::Torus;
      else if (family == "sphere4")
        cfg.family = Family::Sphere4;
      else if (family == "mixed")
        cfg.family = Family::Mixed;
      else
        throw FormatError("", "unknown family '" + family + "'");
      BoundReport rep;
      if (suite == "quake")
        rep = check_quake_bounds(cfg);
      else if (suite == "graft")
        rep = check_graft_bounds(cfg);
      else if (suite == "area")
        rep = check_area_bound(cfg.samples, cfg.seed);
      else if (suite == "max-length")
        rep = probe_max_length(cfg);
      else
        throw FormatError("", "unknown suite '" + suite + "'");
      emit(io::to_json(rep));
      if (!csv_path.empty()) detail::write_text(csv_path, io::to_csv(rep), out);
      err << "st check " << suite << ": " << rep.sample_count() << " samples, " << rep.violations
          << " violations, min slack " << rep.min_slack << '\n';
      return rep.ok() ? kExitOk : kExitViolation;
    }
    if (name == "double-plan") {
      need(bending_path, "--input");
      const BendingData b = io::bending_from_json(io::read_file(bending_path));
      const OrbifoldStart os = orbifold_start(b);
      std::vector<double> target;
      for (const auto& p : b.pleating) target.push_back(p.weight);
      const DeformationPath path = deformation_path(os.pleating_weights, target, steps);
      json j;
      j["schema"] = io::kSchema;
      bool have_lengths = true;
      for (const auto& p : b.particles) have_lengths = have_lengths && p.segment_length.has_value();
      j["locus"] = have_lengths ? io::to_json(double_singular_locus(b)) : json(nullptr);
      j["orbifold_start"] = {{"particle_orders", os.particle_orders},
                             {"particle_angles", os.particle_angles},
                             {"pleating_orders", os.pleating_orders},
                             {"pleating_weights", os.pleating_weights}};
      json rows = json::array();
      for (const auto& r : path.rows) rows.push_back({{"t", r.t}, {"weights", r.weights}, {"angles", r.doubled}});
      j["path"] = rows;
      j["warnings"] = path.warnings;
      for (const auto& w : path.warnings) err << "st double-plan: warning: " << w << '\n';
      emit(j);
      return kExitOk;
    }
    if (name == "validate-bending") {
      need(bending_path, "--input");
      need(cert_path, "--certificate");
      const BendingReport r =
          validate_bending_data(io::bending_from_json(io::read_file(bending_path)), io::certificate_from_json(io::read_file(cert_path)));
      emit({{"schema", io::kSchema}, {"ok", r.ok()}, {"issues", r.issues}});
      for (const auto& s : r.issues) err << "st validate-bending: " << s << '\n';
      return r.ok() ? kExitOk : kExitViolation;
    }

    // Remaining commands all start from a surface.
    need(surface_path, "--surface");
    const io::SurfaceInput si = io::surface_from_json(io::read_file(surface_path));
    const SurfaceGeometry geom = build_surface(si.decomposition, si.surface, si.fn);
    const auto& dec = geom.decomposition;
    if (name == "surface-build") {
      emit(io::geometry_to_json(geom));
      return kExitOk;
    }
    if (name == "length") {
      need(word_path, "--word");
      const CurveWord w = io::word_from_json(io::read_file(word_path), dec);
      const Isometry h = holonomy(geom, w);
      const double l = geodesic_length(geom, w);
      emit({{"schema", io::kSchema},
            {"length", l},
            {"class", to_string(classify(h))},
            {"trace", h.matrix().trace()},
            {"word", io::word_to_json(w, dec)}});
      return kExitOk;
    }
    need(lam_path, "--lamination");
    const RationalLamination lam = io::lamination_from_json(io::read_file(lam_path), dec);
    if (name == "quake") {
      const SurfaceGeometry g2 = earthquake(geom, lam);
      json j = io::surface_to_json(g2.surface, dec, g2.fn);
      if (!word_path.empty()) {
        const CurveWord w = io::word_from_json(io::read_file(word_path), dec);
        j["report"] = {{"word", io::word_to_json(w, dec)},
                       {"length_before", geodesic_length(geom, w)},
                       {"length_after", geodesic_length(g2, w)},
                       {"intersection", intersection_number(lam, geom, w)}};
      }
      emit(j);
      return kExitOk;
    }
    if (name == "graft") {
      need(word_path, "--word");
      const CurveWord w = io::word_from_json(io::read_file(word_path), dec);
      const GraftedPath gp = graft_length(geom, lam, w);
      json segs = json::array();
      for (const auto& s : gp.segments)
        segs.push_back({{"kind", s.kind == GraftedPath::Segment::Kind::Flat ? "flat" : "hyperbolic"},
                        {"length", s.length},
                        {"width", s.width}});
      emit({{"schema", io::kSchema},
            {"length", gp.length},
            {"hyperbolic_length", geodesic_length(geom, w)},
            {"intersection", intersection_number(lam, geom, w)},
            {"residual", gp.residual},
            {"iterations", gp.iterations},
            {"exit_offsets", gp.exit_offsets},
            {"entry_offsets", gp.entry_offsets},
            {"segments", segs}});
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "st " << name << ": " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace conesurf::cli
