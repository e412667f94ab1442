#pragma once

// JSON encodings. Numbers are written with 17 significant digits so every
// double round-trips; decoding errors carry a JSON pointer to the culprit.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "conesurf/doubling.hpp"
#include "conesurf/estimates.hpp"

namespace conesurf::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "st-1";

// ---- writing

namespace detail {

inline void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void write(std::string& out, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(out, it.value(), indent, depth + 1);
      }
      out += close;
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      bool flat = j.size() <= 4;
      for (const auto& e : j) flat = flat && e.is_primitive();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent > 0 ? ", " : ",";
        first = false;
        if (!flat) out += pad;
        write(out, e, indent, depth + 1);
      }
      if (!flat) out += close;
      out += ']';
      return;
    }
    case json::value_t::number_float: write_number(out, j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

inline std::string dump(const json& j, int indent = 2) {
  std::string out;
  detail::write(out, j, indent, 0);
  out += '\n';
  return out;
}

// ---- reading

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("", std::string("invalid JSON: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Format, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

inline std::string child(const std::string& at, const std::string& key) { return at + "/" + key; }
inline std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

inline const json& field(const json& j, const char* key, const std::string& at) {
  if (!j.is_object()) throw FormatError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(child(at, key), "missing");
  return *it;
}

inline double as_number(const json& j, const std::string& at) {
  if (!j.is_number()) throw FormatError(at, "expected a number");
  return j.get<double>();
}

inline long as_integer(const json& j, const std::string& at) {
  if (!j.is_number_integer()) throw FormatError(at, "expected an integer");
  return j.get<long>();
}

inline std::string as_string(const json& j, const std::string& at) {
  if (!j.is_string()) throw FormatError(at, "expected a string");
  return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& at) {
  if (!j.is_array()) throw FormatError(at, "expected an array");
  return j;
}

inline std::vector<double> number_array(const json& j, const std::string& at) {
  std::vector<double> out;
  for (std::size_t i = 0; i < as_array(j, at).size(); ++i) out.push_back(as_number(j[i], child(at, i)));
  return out;
}

/// Checks the schema tag when present.
inline void check_schema(const json& j, const std::string& at = "") {
  if (j.is_object() && j.contains("schema") && j["schema"] != kSchema)
    throw FormatError(child(at, "schema"), std::string("unsupported schema, expected ") + kSchema);
}

inline json vec3(const HVector& v) { return json::array({v.x, v.y, v.z}); }
inline json triple(const Triple& t) { return json::array({t[0], t[1], t[2]}); }

// ---- triangles

inline VertexKind parse_kind(const std::string& s, const std::string& at) {
  if (s == "usual" || s == "U" || s == "u") return VertexKind::Usual;
  if (s == "hyperideal" || s == "H" || s == "h") return VertexKind::Hyperideal;
  throw FormatError(at, "vertex kind must be usual or hyperideal");
}

inline json to_json(const ExtendedTriangle& t) {
  json j;
  j["schema"] = kSchema;
  j["kinds"] = json::array();
  j["vertices"] = json::array();
  for (int i = 0; i < 3; ++i) {
    j["kinds"].push_back(to_string(t.kinds[i]));
    j["vertices"].push_back(vec3(t.vertices[i]));
  }
  j["lengths"] = triple(t.edge_lengths);
  j["angle_data"] = triple(t.angle_data);
  j["angle_rule"] = to_string(t.rule);
  j["area"] = t.area();
  json segs = json::array();
  for (const auto& s : extract_data(t).truncated_boundary)
    segs.push_back({{"kind", s.kind == BoundarySegment::Kind::Edge ? "edge" : "truncation"},
                    {"index", s.index},
                    {"length", s.length}});
  j["truncated_boundary"] = segs;
  return j;
}

// ---- legs and pants

inline json to_json(const Leg& l) {
  if (l.is_boundary()) return {{"kind", "boundary"}, {"length", l.value}};
  return {{"kind", "cone"}, {"angle", l.value}};
}

inline Leg leg_from_json(const json& j, const std::string& at) {
  const std::string kind = as_string(field(j, "kind", at), child(at, "kind"));
  if (kind == "boundary") return Leg::boundary(as_number(field(j, "length", at), child(at, "length")));
  if (kind == "cone") return Leg::cone(as_number(field(j, "angle", at), child(at, "angle")));
  throw FormatError(child(at, "kind"), "leg kind must be boundary or cone");
}

/// "cone:1.2" or "boundary:2.0".
inline Leg parse_leg_spec(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw FormatError("", "leg '" + s + "' must look like cone:x or boundary:x");
  const std::string kind = s.substr(0, colon), num = s.substr(colon + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(num, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != num.size()) throw FormatError("", "leg '" + s + "' has no valid number");
  if (kind == "cone" || kind == "c") return Leg::cone(v);
  if (kind == "boundary" || kind == "b") return Leg::boundary(v);
  throw FormatError("", "leg '" + s + "' must be cone or boundary");
}

inline json to_json(const SingularPants& p) {
  json j;
  j["schema"] = kSchema;
  j["legs"] = json::array();
  for (const auto& l : p.legs) j["legs"].push_back(to_json(l));
  j["seams"] = triple(p.seams);
  j["area"] = p.area();
  j["triangle"] = to_json(p.triangle);
  j["triangle"].erase("schema");
  return j;
}

// ---- surfaces

struct SurfaceInput {
  MarkedSurface surface;
  PantsDecomposition decomposition;
  FNCoordinates fn;
};

inline SurfaceInput surface_from_json(const json& j) {
  check_schema(j);
  SurfaceInput in;
  const long genus = as_integer(field(j, "genus", ""), "/genus");
  if (genus < 0) throw FormatError("/genus", "must be nonnegative");
  in.surface.genus = static_cast<int>(genus);
  if (j.contains("cone_angles")) in.surface.cone_angles = number_array(j["cone_angles"], "/cone_angles");
  const json& curves = as_array(field(j, "curves", ""), "/curves");
  for (std::size_t i = 0; i < curves.size(); ++i) in.decomposition.curves.push_back(as_string(curves[i], child("/curves", i)));
  const json& pieces = as_array(field(j, "pieces", ""), "/pieces");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string at = child("/pieces", i);
    Piece pc;
    pc.id = pieces[i].contains("id") ? as_string(pieces[i]["id"], child(at, "id")) : "P" + std::to_string(i);
    const json& legs = as_array(field(pieces[i], "legs", at), child(at, "legs"));
    if (legs.size() != 3) throw FormatError(child(at, "legs"), "a piece has exactly three legs");
    for (std::size_t s = 0; s < 3; ++s) {
      const std::string lat = child(child(at, "legs"), s);
      if (legs[s].is_string()) {
        const int c = in.decomposition.curve_index(legs[s].get<std::string>());
        if (c < 0) throw FormatError(lat, "unknown curve '" + legs[s].get<std::string>() + "'");
        pc.legs[s] = LegRef::curve(c);
      } else {
        pc.legs[s] = LegRef::cone(static_cast<int>(as_integer(field(legs[s], "cone", lat), child(lat, "cone"))));
      }
    }
    in.decomposition.pieces.push_back(pc);
  }
  const json& fn = field(j, "fn", "");
  in.fn.lengths = number_array(field(fn, "lengths", "/fn"), "/fn/lengths");
  in.fn.twists = fn.contains("twists") ? number_array(fn["twists"], "/fn/twists")
                                       : std::vector<double>(in.fn.lengths.size(), 0.0);
  return in;
}

inline json surface_to_json(const MarkedSurface& s, const PantsDecomposition& d, const FNCoordinates& fn) {
  json j;
  j["schema"] = kSchema;
  j["genus"] = s.genus;
  j["cone_angles"] = s.cone_angles;
  j["curves"] = d.curves;
  j["pieces"] = json::array();
  for (const auto& pc : d.pieces) {
    json legs = json::array();
    for (const auto& r : pc.legs) legs.push_back(r.is_curve() ? json(d.curves[r.index]) : json{{"cone", r.index}});
    j["pieces"].push_back({{"id", pc.id}, {"legs", legs}});
  }
  j["fn"] = {{"lengths", fn.lengths}, {"twists", fn.twists}};
  return j;
}

inline json geometry_to_json(const SurfaceGeometry& g) {
  json j;
  j["schema"] = kSchema;
  j["admissible_area"] = admissible_area(g.surface);
  j["area"] = g.area();
  j["pieces"] = json::array();
  const auto& d = g.decomposition;
  for (std::size_t i = 0; i < g.pants.size(); ++i) {
    json legs = json::array();
    for (const auto& l : g.pants[i].legs) legs.push_back(to_json(l));
    j["pieces"].push_back(
        {{"id", d.pieces[i].id}, {"legs", legs}, {"seams", triple(g.pants[i].seams)}, {"area", g.pants[i].area()}});
  }
  j["gluings"] = json::array();
  for (std::size_t c = 0; c < g.gluings.size(); ++c) {
    const Gluing& gl = g.gluings[c];
    j["gluings"].push_back({{"curve", d.curves[c]},
                            {"a", {{"piece", d.pieces[gl.a.piece].id}, {"slot", gl.a.slot}, {"mark", gl.mark_a}}},
                            {"b", {{"piece", d.pieces[gl.b.piece].id}, {"slot", gl.b.slot}, {"mark", gl.mark_b}}},
                            {"length", gl.length},
                            {"twist", gl.twist}});
  }
  return j;
}

// ---- words and laminations

inline CurveWord word_from_json(const json& j, const PantsDecomposition& d) {
  CurveWord w;
  const json* steps = &j;
  std::string at;
  if (j.is_object()) {
    check_schema(j);
    if (j.contains("curve")) {
      const std::string name = as_string(j["curve"], "/curve");
      const int c = d.curve_index(name);
      if (c < 0) throw FormatError("/curve", "unknown curve '" + name + "'");
      return CurveWord::around(c);
    }
    steps = &field(j, "steps", "");
    at = "/steps";
  }
  as_array(*steps, at);
  for (std::size_t i = 0; i < steps->size(); ++i) {
    const json& s = (*steps)[i];
    const std::string sat = child(at, i);
    WordStep st;
    const std::string piece = as_string(field(s, "piece", sat), child(sat, "piece"));
    st.piece = d.piece_index(piece);
    if (st.piece < 0) throw FormatError(child(sat, "piece"), "unknown piece '" + piece + "'");
    st.enter = static_cast<int>(as_integer(field(s, "enter", sat), child(sat, "enter")));
    st.exit = static_cast<int>(as_integer(field(s, "exit", sat), child(sat, "exit")));
    if (s.contains("winding")) st.winding = as_integer(s["winding"], child(sat, "winding"));
    if (s.contains("turn")) st.turn = static_cast<int>(as_integer(s["turn"], child(sat, "turn")));
    w.steps.push_back(st);
  }
  return w;
}

inline json word_to_json(const CurveWord& w, const PantsDecomposition& d) {
  if (w.peripheral) return {{"curve", d.curves[*w.peripheral]}};
  json steps = json::array();
  for (const auto& s : w.steps) {
    json o = {{"piece", d.pieces[s.piece].id}, {"enter", s.enter}, {"exit", s.exit}, {"winding", s.winding}};
    if (s.enter == s.exit) o["turn"] = s.turn;
    steps.push_back(o);
  }
  return {{"steps", steps}};
}

inline RationalLamination lamination_from_json(const json& j, const PantsDecomposition& d) {
  const json* leaves = &j;
  std::string at;
  if (j.is_object()) {
    check_schema(j);
    leaves = &field(j, "leaves", "");
    at = "/leaves";
  }
  as_array(*leaves, at);
  RationalLamination lam;
  for (std::size_t i = 0; i < leaves->size(); ++i) {
    const std::string lat = child(at, i);
    const std::string name = as_string(field((*leaves)[i], "curve", lat), child(lat, "curve"));
    const int c = d.curve_index(name);
    if (c < 0) throw FormatError(child(lat, "curve"), "unknown curve '" + name + "'");
    lam.leaves.emplace_back(c, as_number(field((*leaves)[i], "weight", lat), child(lat, "weight")));
  }
  return lam;
}

// ---- bending data

inline BendingData bending_from_json(const json& j) {
  check_schema(j);
  if (!j.is_object()) throw FormatError("", "expected an object");
  BendingData b;
  if (j.contains("particles")) {
    const json& ps = as_array(j["particles"], "/particles");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string at = child("/particles", i);
      Particle p;
      p.angle = as_number(field(ps[i], "angle", at), child(at, "angle"));
      if (ps[i].contains("segment_length"))
        p.segment_length = as_number(ps[i]["segment_length"], child(at, "segment_length"));
      b.particles.push_back(p);
    }
  }
  if (j.contains("pleating")) {
    const json& ps = as_array(j["pleating"], "/pleating");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string at = child("/pleating", i);
      PleatingCurve c;
      c.curve = as_string(field(ps[i], "curve", at), child(at, "curve"));
      const std::string side = as_string(field(ps[i], "side", at), child(at, "side"));
      if (side != "+" && side != "-") throw FormatError(child(at, "side"), "side must be \"+\" or \"-\"");
      c.side = side[0];
      c.weight = as_number(field(ps[i], "weight", at), child(at, "weight"));
      b.pleating.push_back(c);
    }
  }
  return b;
}

inline FillCertificate certificate_from_json(const json& j) {
  check_schema(j);
  FillCertificate c;
  c.genus = static_cast<int>(as_integer(field(j, "genus", ""), "/genus"));
  c.crossings = static_cast<int>(as_integer(field(j, "crossings", ""), "/crossings"));
  const json& faces = as_array(field(j, "faces", ""), "/faces");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string at = child("/faces", i);
    Face f;
    if (faces[i].contains("disk")) {
      if (!faces[i]["disk"].is_boolean()) throw FormatError(child(at, "disk"), "expected a boolean");
      f.disk = faces[i]["disk"].get<bool>();
    }
    if (faces[i].contains("marked_points"))
      f.marked_points = static_cast<int>(as_integer(faces[i]["marked_points"], child(at, "marked_points")));
    c.faces.push_back(f);
  }
  return c;
}

inline json to_json(const DoubledLocus& d) {
  json arr = json::array();
  for (const auto& c : d.curves) {
    json o = {{"type", c.kind == SingularCurve::Kind::Particle ? "particle" : "pleating"},
              {"label", c.label},
              {"angle", c.angle}};
    if (c.length) o["length"] = *c.length;
    if (c.side) o["side"] = std::string(1, c.side);
    arr.push_back(o);
  }
  return arr;
}

// ---- reports

inline json to_json(const BoundReport& r) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = r.kind;
  j["seed"] = r.seed;
  j["samples"] = r.sample_count();
  j["violations"] = r.violations;
  j["min_slack"] = r.min_slack;
  json recs = json::array();
  for (const auto& s : r.records) {
    json o = {{"index", s.index},     {"family", s.family}, {"word", s.word},     {"cone_angles", s.cone_angles},
              {"length", s.length},   {"twist", s.twist},   {"weight", s.weight}, {"left", s.left},
              {"middle", s.middle},   {"right", s.right},   {"slack", s.slack},   {"residual", s.residual},
              {"pass", s.pass}};
    if (!s.error.empty()) o["error"] = s.error;
    recs.push_back(o);
  }
  j["records"] = recs;
  return j;
}

inline std::string to_csv(const BoundReport& r) {
  std::string out = "index,family,word,cone_angles,length,twist,weight,left,middle,right,slack,residual,pass,error\n";
  auto num = [&](double v) {
    detail::write_number(out, v);
    out += ',';
  };
  for (const auto& s : r.records) {
    out += std::to_string(s.index) + ',' + s.family + ',' + s.word + ',';
    for (std::size_t i = 0; i < s.cone_angles.size(); ++i) {
      if (i) out += ';';
      detail::write_number(out, s.cone_angles[i]);
    }
    out += ',';
    for (double v : {s.length, s.twist, s.weight, s.left, s.middle, s.right, s.slack, s.residual}) num(v);
    out += s.pass ? "1," : "0,";
    std::string e = s.error;
    for (char& ch : e)
      if (ch == ',' || ch == '\n') ch = ' ';
    out += e + '\n';
  }
  return out;
}

}  // namespace conesurf::io
