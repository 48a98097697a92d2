#include "tropenum/serialization.hpp"

#include <json.hpp>

#include "tropenum/errors.hpp"

namespace tropenum {

using nlohmann::json;

namespace {

json slope_json(const LatticeVector& v) { return json::array({v.x, v.y}); }

json type_document(const CombinatorialType& type, const std::vector<Rational>* lengths) {
  const Graph& g = type.graph();
  json doc;
  doc["vertices"] = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) doc["vertices"].push_back({{"index", v}, {"weight", type.weights()[v]}});
  doc["edges"] = json::array();
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    json e{{"tail", g.edges()[i].tail}, {"head", g.edges()[i].head}, {"slope", slope_json(type.edge_slopes()[i])}};
    if (lengths) e["length"] = fraction_string((*lengths)[i]);
    doc["edges"].push_back(e);
  }
  doc["legs"] = json::array();
  for (std::size_t i = 0; i < g.legs().size(); ++i) {
    doc["legs"].push_back({{"order", i}, {"anchor", g.legs()[i]}, {"slope", slope_json(type.leg_slopes()[i])}});
  }
  return doc;
}

LatticeVector read_slope(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("slope must be [x, y]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

Rational read_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational must be a \"p/q\" string");
}

CombinatorialType read_type(const json& doc, std::vector<Rational>* lengths) {
  const auto& vs = doc.at("vertices");
  std::vector<int> weights(vs.size(), 0);
  for (const auto& v : vs) {
    const auto idx = v.at("index").get<std::size_t>();
    if (idx >= weights.size()) throw ParseError("vertex index out of range");
    weights[idx] = v.value("weight", 0);
  }
  std::vector<GraphEdge> edges;
  std::vector<LatticeVector> slopes;
  for (const auto& e : doc.at("edges")) {
    edges.push_back({e.at("tail").get<std::size_t>(), e.at("head").get<std::size_t>()});
    slopes.push_back(read_slope(e.at("slope")));
    if (lengths) {
      if (!e.contains("length")) throw ParseError("curve edges need lengths");
      lengths->push_back(read_rational(e.at("length")));
    }
  }
  const auto& ls = doc.at("legs");
  std::vector<std::size_t> anchors(ls.size());
  std::vector<LatticeVector> leg_slopes(ls.size());
  std::vector<bool> seen(ls.size(), false);
  for (const auto& l : ls) {
    const auto order = l.at("order").get<std::size_t>();
    if (order >= ls.size() || seen[order]) throw ParseError("leg orders must be a permutation of 0..n-1");
    seen[order] = true;
    anchors[order] = l.at("anchor").get<std::size_t>();
    leg_slopes[order] = read_slope(l.at("slope"));
  }
  Graph graph(weights.size(), std::move(edges), std::move(anchors));
  return CombinatorialType(std::move(graph), std::move(weights),
                           std::move(slopes), std::move(leg_slopes));
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed tropical-curve JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid tropical-curve JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const CombinatorialType& type, int indent) { return type_document(type, nullptr).dump(indent); }

std::string to_json(const ParamTropicalCurve& curve, int indent) {
  json doc = type_document(curve.type, &curve.lengths);
  doc["positions"] = json::array();
  for (const auto& p : curve.positions) doc["positions"].push_back({fraction_string(p.x), fraction_string(p.y)});
  return doc.dump(indent);
}

CombinatorialType type_from_json(std::string_view text) {
  return guarded([&] { return read_type(json::parse(text), nullptr); });
}

ParamTropicalCurve curve_from_json(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    ParamTropicalCurve c;
    c.type = read_type(doc, &c.lengths);
    for (const auto& p : doc.at("positions")) c.positions.push_back({read_rational(p.at(0)), read_rational(p.at(1))});
    c.validate();
    return c;
  });
}

}  // namespace tropenum
