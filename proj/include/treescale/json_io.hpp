#pragma once

// JSON encodings.  Big integers are decimal strings.

#include <string>

#include <nlohmann/json.hpp>

#include "treescale/hnn.hpp"
#include "treescale/semigroups.hpp"

namespace treescale {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad ") + what + ": " + e.what());
  }
}

}  // namespace detail

inline std::string to_decimal(const BigInt& x) { return x.str(); }
inline std::string to_decimal(const BigRational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

// --- tree ------------------------------------------------------------------

inline json to_json(const TreeParams& p) { return {{"qE", p.qE}, {"qO", p.qO}}; }
inline TreeParams params_from_json(const json& j) {
  TreeParams p{detail::get_as<int>(detail::field(j, "qE"), "qE"), detail::get_as<int>(detail::field(j, "qO"), "qO"),
               1};
  if (j.contains("k")) p.k = detail::get_as<int>(j.at("k"), "k");
  p.validate();
  return p;
}

inline json to_json(const Vertex& v) { return v.address(); }
inline Vertex vertex_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("vertex must be an array of labels");
  return Vertex(detail::get_as<Word>(j, "vertex"));
}

inline json to_json(const End& e) { return {{"prefix", e.prefix()}, {"period", e.period()}}; }
inline End end_from_json(const json& j) {
  return End(detail::get_as<Word>(detail::field(j, "prefix"), "end prefix"),
             detail::get_as<Word>(detail::field(j, "period"), "end period"));
}

inline json to_json(const OrientedEdge& e) { return {{"origin", to_json(e.origin)}, {"terminus", to_json(e.terminus)}}; }
inline OrientedEdge edge_from_json(const json& j) {
  return {vertex_from_json(detail::field(j, "origin")), vertex_from_json(detail::field(j, "terminus"))};
}

inline json to_json(const Segment& s) {
  json a = json::array();
  for (const auto& v : s) a.push_back(to_json(v));
  return a;
}

// --- automorphisms -----------------------------------------------------------

inline json to_json(const Primitive& p) {
  return std::visit(
      [](const auto& r) -> json {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, PortraitRep>) {
          json perms = json::array();
          for (const auto& [u, perm] : r.perms) perms.push_back({{"vertex", to_json(u)}, {"perm", perm}});
          return {{"type", "portrait"}, {"depth", r.depth}, {"perms", perms}};
        } else if constexpr (std::is_same_v<R, SpineShiftRep>) {
          return {{"type", "spineShift"}, {"m", r.m}};
        } else if constexpr (std::is_same_v<R, InversionRep>) {
          return {{"type", "inversion"}, {"edge", to_json(r.edge)}};
        } else if constexpr (std::is_same_v<R, AxisMapRep>) {
          return {{"type", "axisMap"},
                  {"source", {{"minus", to_json(r.source_minus)}, {"plus", to_json(r.source_plus)}}},
                  {"target", {{"minus", to_json(r.target_minus)}, {"plus", to_json(r.target_plus)}}},
                  {"shift", r.shift},
                  {"reflect", r.reflect}};
        } else {
          json c = json::object();
          for (auto [i, v] : r.coeffs) c[std::to_string(i)] = v;
          return {{"type", "horocyclic"}, {"coeffs", c}, {"n", r.n}};
        }
      },
      p);
}

inline json to_json(const Automorphism& g) {
  auto f = g.factors();
  if (f.empty()) return {{"type", "identity"}};
  if (f.size() == 1) return to_json(f[0]->rep());
  json a = json::array();
  for (const auto& x : f) a.push_back(to_json(x->rep()));
  return {{"type", "composite"}, {"factors", a}};
}

inline Automorphism automorphism_from_json(const json& j, const TreeParams& p) {
  using detail::field;
  using detail::get_as;
  const std::string type = get_as<std::string>(field(j, "type"), "automorphism type");
  if (type == "identity") return Automorphism::identity(p);
  if (type == "composite") {
    const json& fs = field(j, "factors");
    if (!fs.is_array()) throw parse_error("composite factors must be an array");
    Automorphism out = Automorphism::identity(p);
    for (const auto& f : fs) out = compose(out, automorphism_from_json(f, p));
    return out;
  }
  if (type == "portrait") {
    PortraitRep r;
    r.depth = get_as<int>(field(j, "depth"), "portrait depth");
    for (const auto& e : field(j, "perms")) {
      Vertex u = vertex_from_json(field(e, "vertex"));
      if (!r.perms.emplace(u, get_as<Word>(field(e, "perm"), "perm")).second)
        throw parse_error("duplicate portrait entry at " + u.str());
    }
    return Automorphism::primitive(p, std::move(r));
  }
  if (type == "spineShift") return Automorphism::spine_shift(p, get_as<long>(field(j, "m"), "shift"));
  if (type == "inversion") return Automorphism::inversion(p, edge_from_json(field(j, "edge")));
  if (type == "axisMap") {
    const json& s = field(j, "source");
    const json& d = field(j, "target");
    return Automorphism::primitive(
        p, AxisMapRep{end_from_json(field(s, "minus")), end_from_json(field(s, "plus")),
                      end_from_json(field(d, "minus")), end_from_json(field(d, "plus")),
                      get_as<long>(field(j, "shift"), "shift"), j.value("reflect", false)});
  }
  if (type == "horocyclic") {
    HorocyclicRep r;
    r.n = get_as<long>(field(j, "n"), "n");
    for (const auto& [k, v] : field(j, "coeffs").items()) r.coeffs[std::stol(k)] = get_as<int>(v, "coefficient");
    return Automorphism::primitive(p, std::move(r));
  }
  throw parse_error("unknown automorphism type '" + type + "'");
}

inline json to_json(const AutType& a) {
  return std::visit(
      [](const auto& x) -> json {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Elliptic>) {
          return {{"type", "elliptic"}, {"fixedVertex", to_json(x.fixed)}};
        } else if constexpr (std::is_same_v<X, EdgeInversion>) {
          return {{"type", "inversion"}, {"edge", to_json(x.edge)}};
        } else {
          return {{"type", "hyperbolic"},
                  {"length", x.length},
                  {"axisAnchor", to_json(x.anchor)},
                  {"attracting", to_json(x.attracting)},
                  {"repelling", to_json(x.repelling)}};
        }
      },
      a);
}

// --- semigroups --------------------------------------------------------------

inline json to_json(const SemigroupSpec& s) {
  return std::visit(
      [&](const auto& x) -> json {
        using X = std::decay_t<decltype(x)>;
        json j = {{"type", spec_kind(s)}};
        if constexpr (std::is_same_v<X, VertexFixator>) j["vertex"] = to_json(x.vertex);
        else if constexpr (std::is_same_v<X, EdgeMidpointFixator>) j["edge"] = to_json(x.edge);
        else if constexpr (std::is_same_v<X, DirectedVertex>) {
          j["vertex"] = to_json(x.vertex);
          j["labels"] = x.labels;
        } else j["end"] = to_json(x.end);
        return j;
      },
      s);
}

inline SemigroupSpec spec_from_json(const json& j, const Tree& t) {
  using detail::field;
  const std::string type = detail::get_as<std::string>(field(j, "type"), "spec type");
  SemigroupSpec s;
  if (type == "vertexFixator") s = VertexFixator{vertex_from_json(field(j, "vertex"))};
  else if (type == "edgeMidpointFixator") s = EdgeMidpointFixator{edge_from_json(field(j, "edge"))};
  else if (type == "directedVertex")
    s = make_directed_vertex(t, vertex_from_json(field(j, "vertex")),
                             detail::get_as<std::vector<Label>>(field(j, "labels"), "labels"));
  else if (type == "endPlus") s = EndPlus{end_from_json(field(j, "end"))};
  else if (type == "endMinus") s = EndMinus{end_from_json(field(j, "end"))};
  else throw parse_error("unknown semigroup type '" + type + "'");
  validate(t, s);
  return s;
}

inline json to_json(const MultiplicativityReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"i", x.i},
                 {"j", x.j},
                 {"productScale", to_decimal(x.product_scale)},
                 {"scaleProduct", to_decimal(x.scale_product)},
                 {"sign", std::string(1, x.sign)}});
  return {{"verdict", r.verdict}, {"violations", v}};
}

// --- HNN -------------------------------------------------------------------

inline json to_json(const HnnElement& x) {
  json c = json::object();
  for (auto [i, v] : x.coeffs) c[std::to_string(i)] = v;
  return {{"coeffs", c}, {"n", x.n}, {"q", x.q}};
}

inline HnnElement hnn_from_json(const json& j) {
  HnnElement x;
  x.q = detail::get_as<int>(detail::field(j, "q"), "q");
  x.n = detail::get_as<long>(detail::field(j, "n"), "n");
  if (j.contains("coeffs"))
    for (const auto& [k, v] : j.at("coeffs").items()) {
      try {
        x.coeffs[std::stol(k)] = detail::get_as<int>(v, "coefficient");
      } catch (const std::logic_error&) {
        throw parse_error("bad coefficient index '" + k + "'");
      }
    }
  return hnn_normalize(std::move(x));
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(e.what());
  }
}

}  // namespace treescale
