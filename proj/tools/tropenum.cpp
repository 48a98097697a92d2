// tropenum: command-line front end.
//
// Exit codes: 0 success, 1 unexpected failure, 2 malformed or invalid input,
// 3 no generic point configuration found within the retry limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tropenum/enumeration.hpp"
#include "tropenum/errors.hpp"
#include "tropenum/lattice_geometry.hpp"
#include "tropenum/recursions.hpp"
#include "tropenum/serialization.hpp"
#include "tropenum/svg.hpp"
#include "tropenum/valued_curves.hpp"

namespace {

using namespace tropenum;
using nlohmann::ordered_json;

constexpr int kExitInput = 2;
constexpr int kExitGenericity = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

struct PolygonSource {
  std::string vertices;
  std::string file;
  std::int64_t triangle = 0;

  void add_to(CLI::App* cmd, bool with_triangle) {
    auto* v = cmd->add_option("--vertices", vertices, "inline vertices \"x1,y1;x2,y2;...\"");
    auto* f = cmd->add_option("--file", file, "polygon file, one vertex per line");
    v->excludes(f);
    if (with_triangle) {
      auto* t = cmd->add_option("--degree-triangle", triangle, "triangle (0,0),(d,0),(0,d)");
      t->excludes(v)->excludes(f);
    }
  }

  LatticePolygon get() const {
    if (triangle != 0) {
      if (triangle < 1) throw InvalidArgument("degree must be positive");
      return LatticePolygon::triangle(triangle);
    }
    if (!vertices.empty()) return LatticePolygon(parse_vertex_list(vertices));
    if (!file.empty()) return LatticePolygon(parse_polygon_file(read_file(file)));
    throw InvalidArgument("no polygon given");
  }
};

std::string point_string(const LatticePoint& p) { return to_string(p); }

// polygon

struct PolygonArgs {
  PolygonSource source;
  std::int64_t genus = 0;
  bool json = false;
};

int run_polygon(const PolygonArgs& a) {
  const LatticePolygon poly = a.source.get();
  const auto boundary = boundary_points(poly);
  const auto interior = interior_points(poly);
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (const auto& v : poly.vertices()) doc["vertices"].push_back({v.x, v.y});
  doc["twice_area"] = poly.twice_area();
  doc["boundary"] = boundary.count;
  doc["interior"] = interior.count;
  doc["sides"] = ordered_json::array();
  for (const auto& s : poly.sides()) {
    doc["sides"].push_back({{"normal", {s.inner_normal.x, s.inner_normal.y}}, {"length", s.integral_length}});
  }
  doc["dual_degree"] = ordered_json::array();
  for (const auto& [dir, count] : dual_degree(poly).grouped()) {
    doc["dual_degree"].push_back({{"slope", {dir.x, dir.y}}, {"count", count}});
  }
  doc["genus"] = a.genus;
  doc["dim"] = severi_dimension(poly, a.genus);
  doc["delta"] = delta_invariant(poly, a.genus);
  if (a.json) {
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "vertices";
  for (const auto& v : poly.vertices()) std::cout << " " << point_string(v);
  std::cout << "\nboundary=" << boundary.count << "\ninterior=" << interior.count << "\n";
  for (const auto& s : poly.sides()) {
    std::cout << "side " << s.index << " normal=" << point_string(s.inner_normal) << " length=" << s.integral_length
              << "\n";
  }
  std::cout << "dual_degree";
  for (const auto& [dir, count] : dual_degree(poly).grouped()) std::cout << " " << point_string(dir) << "x" << count;
  std::cout << "\ngenus=" << a.genus << "\ndim=" << doc["dim"].get<std::int64_t>()
            << "\ndelta=" << doc["delta"].get<std::int64_t>() << "\n";
  return 0;
}

// count

struct CountArgs {
  PolygonSource source;
  std::int64_t genus = 0;
  bool irreducible = false;
  std::uint64_t seed = 0;
  int max_attempts = 8;
  bool ordered_ends = false;
  std::string format = "text";
  std::string output;
  std::string svg_dir;
};

int run_count(const CountArgs& a) {
  CountRequest req{a.source.get()};
  req.genus = a.genus;
  req.irreducible_only = a.irreducible;
  req.seed = a.seed;
  req.max_attempts = a.max_attempts;
  req.divide_unordered_legs = !a.ordered_ends;
  const CountReport report = count_curves(req);
  std::string text;
  if (a.format == "json") {
    text = report_to_json(report) + "\n";
  } else {
    std::ostringstream out;
    out << "total " << report.total.get_str() << "\n";
    for (const auto& t : report.per_type) {
      out << "type " << t.type_id << " multiplicity " << t.multiplicity.get_str() << " components " << t.components
          << "\n";
    }
    text = out.str();
  }
  write_output(a.output, text);
  if (!a.svg_dir.empty()) {
    std::filesystem::create_directories(a.svg_dir);
    for (const auto& t : report.per_type) {
      SvgOptions opt;
      opt.caption = "multiplicity " + t.multiplicity.get_str();
      std::ofstream svg(std::filesystem::path(a.svg_dir) / (t.type_id + ".svg"), std::ios::binary);
      svg << render_svg(t.curve, opt);
    }
  }
  return 0;
}

// recursion

std::vector<std::int64_t> parse_profile(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw ParseError("bad profile entry: " + item);
    } catch (const std::logic_error&) {
      throw ParseError("bad profile entry: " + item);
    }
  }
  return out;
}

TableFormat table_format(const std::string& name) { return name == "json" ? TableFormat::Json : TableFormat::Tsv; }

struct RecursionArgs {
  std::int64_t max_d = 5;
  std::int64_t d = 0;
  std::int64_t delta = 0;
  std::string alpha;
  std::string beta;
  std::string format = "tsv";
  std::string output;
};

// components

struct ComponentArgs {
  PolygonSource source;
  std::vector<std::int64_t> kite;
  std::int64_t genus = 1;
  bool json = false;
};

int run_components(const ComponentArgs& a) {
  const LatticePolygon poly = a.kite.empty() ? a.source.get() : LatticePolygon::kite(a.kite[0], a.kite[1]);
  const ComponentBound bound = component_lower_bound(poly, a.genus);
  // For kites the sublattices are weighted by the number of admissible kappa.
  const std::int64_t total = a.kite.empty() ? bound.count : kite_lower_bound(a.kite[0], a.kite[1], a.genus);
  if (a.json) {
    ordered_json doc;
    doc["bound"] = total;
    doc["count"] = bound.count;
    doc["sublattices"] = ordered_json::array();
    for (std::size_t i = 0; i < bound.sublattices.size(); ++i) {
      const auto& s = bound.sublattices[i];
      doc["sublattices"].push_back({{"basis", {{s.first.x, s.first.y}, {s.second.x, s.second.y}}},
                                    {"index", s.index},
                                    {"interior", bound.interior_counts[i]}});
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << total << "\n";
  }
  return 0;
}

// tropicalize / nonimmersion

PointOnLine parse_point(const std::string& text) {
  if (text == "inf" || text == "infinity") return PointOnLine::at_infinity();
  return PointOnLine::finite(ValuedScalar::parse(text));
}

// {"vertices": [[x,y],...], "side_points": [["inf"], ["0","1"], ...], "character": ["1","1"],
//  "characteristic": 0, "marks": ["1"]}
struct SpecFile {
  RationalCurveSpec spec;
  std::vector<PointOnLine> marks;
};

SpecFile load_spec(const std::string& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(path));
    std::vector<LatticePoint> vertices;
    for (const auto& v : doc.at("vertices")) vertices.push_back({v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>()});
    std::vector<std::vector<PointOnLine>> sides;
    for (const auto& side : doc.at("side_points")) {
      std::vector<PointOnLine> pts;
      for (const auto& p : side) pts.push_back(parse_point(p.get<std::string>()));
      sides.push_back(std::move(pts));
    }
    SpecFile out{RationalCurveSpec{LatticePolygon(vertices), std::move(sides)}, {}};
    if (doc.contains("character")) {
      out.spec.character = {ValuedScalar::parse(doc["character"].at(0).get<std::string>()),
                            ValuedScalar::parse(doc["character"].at(1).get<std::string>())};
    }
    out.spec.characteristic = doc.value("characteristic", std::int64_t{0});
    if (doc.contains("marks")) {
      for (const auto& p : doc["marks"]) out.marks.push_back(parse_point(p.get<std::string>()));
    }
    out.spec.validate();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad curve description: ") + e.what());
  }
}

struct TropicalizeArgs {
  bool baby = false;
  std::int64_t mu_valuation = 1;
  std::string mu;
  std::string spec_file;
  std::string output;
  std::string svg;
};

int run_tropicalize(const TropicalizeArgs& a) {
  const SpecFile input = [&]() -> SpecFile {
    if (a.baby) {
      ValuedScalar mu;
      if (!a.mu.empty()) {
        mu = ValuedScalar::parse(a.mu);
      } else if (a.mu_valuation == 0) {
        mu = Rational(-1);  // mu = 1 would collide with the mark at 1
      } else {
        mu = ValuedScalar::parse("s^" + std::to_string(a.mu_valuation));
      }
      BabyExample ex = baby_example(mu);
      return {std::move(ex.spec), std::move(ex.marks)};
    }
    if (!a.spec_file.empty()) return load_spec(a.spec_file);
    throw InvalidArgument("give --baby-example or --spec");
  }();
  const ParamTropicalCurve curve = tropicalize_rational(input.spec, input.marks);
  write_output(a.output, to_json(curve, 2) + "\n");
  if (!a.svg.empty()) write_output(a.svg, render_svg(curve));
  return 0;
}

struct NonImmersionArgs {
  bool example = false;
  std::int64_t characteristic = 0;
  std::string spec_file;
};

int run_nonimmersion(const NonImmersionArgs& a) {
  const RationalCurveSpec spec = [&] {
    if (a.example) return cusp_example(a.characteristic);
    if (a.spec_file.empty()) throw InvalidArgument("give --example-4-3 or --spec");
    RationalCurveSpec s = load_spec(a.spec_file).spec;
    if (a.characteristic != 0) s.characteristic = a.characteristic;
    s.validate();
    return s;
  }();
  const auto points = non_immersion_points(spec);
  std::cout << "characteristic " << spec.characteristic << "\n";
  std::cout << "resultant " << numerator_resultant(spec).get_str() << "\n";
  if (points.empty()) std::cout << "none\n";
  for (const auto& p : points) std::cout << "t=" << p.to_string() << "\n";
  return 0;
}

// audit

struct AuditArgs {
  PolygonSource source;
  std::int64_t genus = 0;
};

int run_audit(const AuditArgs& a) {
  const AuditReport report = dimension_bound_audit(a.source.get(), a.genus);
  std::cout << "r=" << report.r << "\ntypes=" << report.types_checked << "\ncontractions=" << report.contractions_checked
            << "\nmax_dimension=" << report.max_dimension << "\nsuperabundant=" << report.superabundant
            << "\nmax_image_dimension=" << report.max_image_dimension << "\n";
  for (const auto& v : report.violations) std::cout << "violation " << v << "\n";
  std::cout << (report.passed() ? "passed" : "failed") << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerative geometry of plane curves via tropical curve counts"};
  app.require_subcommand(1);

  PolygonArgs polygon;
  auto* c_polygon = app.add_subcommand("polygon", "lattice data of a polygon");
  polygon.source.add_to(c_polygon, true);
  c_polygon->add_option("--genus", polygon.genus, "genus for the dimension and delta");
  c_polygon->add_flag("--json", polygon.json, "JSON output");

  CountArgs count;
  auto* c_count = app.add_subcommand("count", "count tropical curves through random points");
  count.source.add_to(c_count, true);
  c_count->add_option("--genus", count.genus);
  c_count->add_flag("--irreducible", count.irreducible, "connected curves only");
  c_count->add_option("--seed", count.seed);
  c_count->add_option("--max-attempts", count.max_attempts, "point configurations to try")->check(CLI::PositiveNumber);
  c_count->add_flag("--ordered-ends", count.ordered_ends, "count labelled ends (no division by k_i!)");
  c_count->add_option("--format", count.format)->check(CLI::IsMember({"text", "json"}));
  c_count->add_option("--output,-o", count.output, "write to a file instead of stdout");
  c_count->add_option("--svg-dir", count.svg_dir, "render each counted curve here");

  RecursionArgs rec;
  auto* c_rec = app.add_subcommand("recursion", "Kontsevich and Caporaso-Harris numbers");
  c_rec->require_subcommand(1);
  auto* r_kont = c_rec->add_subcommand("kontsevich", "table of N(d)");
  r_kont->add_option("--max-d", rec.max_d)->check(CLI::PositiveNumber);
  auto* r_ch = c_rec->add_subcommand("ch", "N^{d,delta}(alpha, beta)");
  r_ch->add_option("--d", rec.d)->required();
  r_ch->add_option("--delta", rec.delta)->required();
  r_ch->add_option("--alpha", rec.alpha, "comma separated, default empty");
  r_ch->add_option("--beta", rec.beta, "comma separated, default (d)");
  auto* r_table = c_rec->add_subcommand("table", "table of Severi degrees");
  r_table->add_option("--max-d", rec.max_d)->check(CLI::PositiveNumber);
  for (auto* sub : {r_kont, r_table}) {
    sub->add_option("--format", rec.format)->check(CLI::IsMember({"tsv", "json"}));
    sub->add_option("--output,-o", rec.output);
  }

  ComponentArgs comp;
  auto* c_comp = app.add_subcommand("components", "lower bound for the number of Severi components");
  comp.source.add_to(c_comp, false);
  c_comp->add_option("--kite", comp.kite, "k k' for the kite polygon")->expected(2);
  c_comp->add_option("--genus", comp.genus);
  c_comp->add_flag("--json", comp.json);

  TropicalizeArgs trop;
  auto* c_trop = app.add_subcommand("tropicalize", "tropicalize a rational curve over Q(s)");
  c_trop->add_flag("--baby-example", trop.baby, "the line x + mu y = z");
  c_trop->add_option("--mu-valuation", trop.mu_valuation, "mu = s^k (k = 0 uses mu = -1)")->check(CLI::NonNegativeNumber);
  c_trop->add_option("--mu", trop.mu, "explicit mu, e.g. \"2*s^3\"");
  c_trop->add_option("--spec", trop.spec_file, "JSON curve description");
  c_trop->add_option("--output,-o", trop.output);
  c_trop->add_option("--svg", trop.svg, "render the tropical curve");

  NonImmersionArgs nonimm;
  auto* c_non = app.add_subcommand("nonimmersion", "points where the curve fails to be an immersion");
  c_non->add_flag("--example-4-3", nonimm.example, "triangle (0,0),(2,1),(1,2) with points 0, 1, infinity");
  c_non->add_option("--char", nonimm.characteristic, "0 or a prime");
  c_non->add_option("--spec", nonimm.spec_file, "JSON curve description");

  AuditArgs audit;
  auto* c_audit = app.add_subcommand("audit", "check stratum dimensions against the point conditions");
  audit.source.add_to(c_audit, true);
  c_audit->add_option("--genus", audit.genus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (c_polygon->parsed()) return run_polygon(polygon);
    if (c_count->parsed()) return run_count(count);
    if (c_rec->parsed()) {
      std::string text;
      if (r_kont->parsed()) {
        text = kontsevich_table(rec.max_d, table_format(rec.format));
      } else if (r_table->parsed()) {
        text = severi_table(rec.max_d, table_format(rec.format));
      } else {
        std::vector<std::int64_t> beta = parse_profile(rec.beta);
        if (rec.beta.empty() && rec.alpha.empty()) beta = {rec.d};
        text = caporaso_harris(rec.d, rec.delta, TangencyProfile(parse_profile(rec.alpha), beta)).get_str() + "\n";
      }
      write_output(rec.output, text);
      return 0;
    }
    if (c_comp->parsed()) return run_components(comp);
    if (c_trop->parsed()) return run_tropicalize(trop);
    if (c_non->parsed()) return run_nonimmersion(nonimm);
    if (c_audit->parsed()) return run_audit(audit);
  } catch (const GenericityExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGenericity;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidPolygon& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InconsistentProfile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const MarkCollision& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
