#include "kapranov/json_io.hpp"

#include "kapranov/error.hpp"

namespace kapranov {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(Errc::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<int>();
}

long as_long(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<long>();
}

int read_n(const Json& j) {
  const int n = as_int(field(j, "n"), "n");
  if (n < 1 || n > kMaxMarkings) schema("n out of range");
  return n;
}

mpq_class rational_from_json(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) schema("rational entries are integers or \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

}  // namespace

Json to_json(const IndexSet& s) { return s.members(); }
Json to_json(const BoundaryLabel& l) { return to_json(l.side()); }

Json to_json(const DivisorClass& d) {
  Json e = Json::array();
  const auto& sides = PicardBasis::of(d.ambient()).sides();
  for (std::size_t k = 0; k < sides.size(); ++k)
    if (d.e_coeffs()[k] != 0) e.push_back({{"side", to_json(sides[k])}, {"c", d.e_coeffs()[k].get_str()}});
  return {{"n", d.ambient()}, {"psi1", d.psi1_coeff().get_str()}, {"E", e}, {"text", d.to_string()}};
}

Json to_json(const ForgetfulMorphism& m) {
  Json sets = Json::array();
  for (const auto& s : m.forgotten) sets.push_back(to_json(s));
  return {{"n", m.n}, {"forgotten", sets}};
}

Json to_json(const CurveNumerics& c) {
  Json m = Json::array();
  for (const auto& [label, v] : c.m) m.push_back({{"side", to_json(label)}, {"v", v}});
  Json out = {{"n", c.n}, {"m", m}};
  if (c.g) out["g"] = *c.g;
  if (c.d) {
    Json d = Json::object();
    for (const auto& [i, v] : *c.d) d[std::to_string(i)] = v;
    out["d"] = d;
  }
  return out;
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const LinearSubspace& s) {
  Json rows = Json::array();
  for (const auto& r : s.basis()) rows.push_back(to_json(r));
  return {{"ambient", s.ambient_dim()}, {"dimension", s.dimension()}, {"basis", rows}};
}

Json to_json(const RationalConfig& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(to_json(p));
  return {{"n", c.n}, {"chart", c.chart}, {"seed", c.seed}, {"labels", c.labels}, {"points", pts}};
}

Json to_json(const LinearForm& f) {
  Json terms = Json::array();
  for (const auto& [size, coeff] : f.terms) terms.push_back({{"size", size}, {"coeff", coeff}});
  return {{"n", f.n}, {"terms", terms}, {"rhs", f.rhs}, {"text", f.to_string()}};
}

Json to_json(const FiberDescriptor& d) {
  Json comps = Json::array();
  for (const auto& c : d.components) {
    Json j = {{"kind", c.kind == FiberComponent::Kind::Cone ? "cone" : "linear"},
              {"forgotten", to_json(c.forgotten)},
              {"dimension", c.dimension},
              {"codimension", c.codimension}};
    if (c.kind == FiberComponent::Kind::Cone) {
      j["base_degree"] = c.base_degree;
      j["vertex"] = c.vertex ? Json(to_json(c.vertex->span())) : Json(nullptr);
    }
    comps.push_back(j);
  }
  return {{"chart", d.chart}, {"components", comps}};
}

IndexSet index_set_from_json(int n, const Json& j) {
  if (!j.is_array()) schema("a set must be an array of labels");
  std::vector<int> labels;
  for (const auto& x : j) {
    const int l = as_int(x, "label");
    if (l < 1 || l > n) schema("label " + std::to_string(l) + " outside 1.." + std::to_string(n));
    labels.push_back(l);
  }
  IndexSet s(n, labels);
  if (static_cast<std::size_t>(s.size()) != labels.size()) schema("repeated label in a set");
  return s;
}

std::vector<std::vector<int>> sets_from_json(const Json& j) {
  if (!j.is_array()) schema("'forgotten' must be an array of arrays");
  std::vector<std::vector<int>> out;
  for (const auto& s : j) {
    if (!s.is_array()) schema("'forgotten' must be an array of arrays");
    std::vector<int> labels;
    for (const auto& x : s) labels.push_back(as_int(x, "label"));
    out.push_back(std::move(labels));
  }
  return out;
}

ForgetfulMorphism morphism_from_json(const Json& j) {
  const int n = read_n(j);
  ForgetfulMorphism m{n, {}};
  const Json& sets = field(j, "forgotten");
  if (!sets.is_array()) schema("'forgotten' must be an array of arrays");
  for (const auto& s : sets) m.forgotten.push_back(index_set_from_json(n, s));
  return m;
}

CurveNumerics numerics_from_json(const Json& j) {
  CurveNumerics c;
  c.n = read_n(j);
  if (c.n < 5) schema("numerics need n >= 5");
  const Json& m = field(j, "m");
  if (!m.is_array()) schema("'m' must be an array");
  for (const auto& entry : m) {
    const IndexSet side = index_set_from_json(c.n, field(entry, "side"));
    if (side.size() < 2 || side.size() > c.n - 2) schema("label sides need 2..n-2 elements");
    const long v = as_long(field(entry, "v"), "m value");
    if (v < 0) schema("m values are nonnegative");
    if (c.m_of(side) != 0) schema("label " + side.to_string() + " given twice");
    c.set(side, v);
  }
  if (j.contains("g")) c.g = as_long(j.at("g"), "g");
  if (j.contains("d")) {
    const Json& d = j.at("d");
    if (!d.is_object()) schema("'d' must map charts to integers");
    std::map<int, long> out;
    for (const auto& [key, v] : d.items()) {
      int chart = 0;
      try {
        chart = std::stoi(key);
      } catch (...) {
        schema("bad chart key '" + key + "'");
      }
      if (chart < 1 || chart > c.n) schema("chart key out of range");
      out[chart] = as_long(v, "d value");
    }
    c.d = std::move(out);
  }
  return c;
}

Vec point_from_json(const Json& j) {
  if (!j.is_array()) schema("a point is an array of rationals");
  Vec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

RationalConfig config_from_json(const Json& j) {
  const int n = read_n(j);
  const int chart = as_int(field(j, "chart"), "chart");
  const Json& pts = field(j, "points");
  if (!pts.is_array()) schema("'points' must be an array");
  Matrix points;
  for (const auto& p : pts) points.push_back(point_from_json(p));
  RationalConfig cfg = config_from_points(n, chart, points);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) schema("seed must be a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  return cfg;
}

}  // namespace kapranov
