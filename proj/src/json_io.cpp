#include "shq/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace shq {

json to_json(const Rational& x) { return x.str(); }

json to_json(const CycloElem& x) {
  json coords = json::array();
  for (auto& c : x.coords()) coords.push_back(c.str());
  return json{{"order", x.order()}, {"coords", coords}};
}

namespace {
CycloElem cyclo_from_json(const json& j) {
  long order = j.at("order").get<long>();
  std::vector<Rational> coords;
  for (auto& c : j.at("coords")) coords.push_back(Rational::from_string(c.get<std::string>()));
  return CycloElem(order, std::move(coords));
}
}  // namespace

json to_json(const Poly& f) {
  json coeffs = json::array();
  for (auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  return json{{"order", f.order()}, {"coeffs", coeffs}};
}

json to_json(const QSeries& f) {
  json coeffs = json::array();
  for (auto& [n, c] : f.terms()) {
    json coords = json::array();
    for (auto& x : c.promoted(f.field_order()).coords()) coords.push_back(x.str());
    coeffs.push_back(json::array({n, coords}));
  }
  return json{{"prec", f.prec()}, {"order", f.field_order()}, {"coeffs", coeffs}};
}

QSeries qseries_from_json(const json& j) {
  QSeries f(j.at("prec").get<long>(), j.at("order").get<long>());
  long order = j.at("order").get<long>();
  for (auto& term : j.at("coeffs")) {
    long n = term.at(0).get<long>();
    std::vector<Rational> coords;
    for (auto& c : term.at(1)) coords.push_back(Rational::from_string(c.get<std::string>()));
    f.set_coeff(n, CycloElem(order, std::move(coords)));
  }
  return f;
}

namespace {
json recipe_to_json(const GenRecipe& g) {
  json out;
  switch (g.kind) {
    case GenRecipe::kEis:
      out["kind"] = "eis";
      out["chi"] = g.chi.label();
      out["psi"] = g.psi.label();
      out["k"] = g.k;
      out["t"] = g.t;
      break;
    case GenRecipe::kEis2:
      out["kind"] = "eis2";
      out["t"] = g.t;
      break;
    case GenRecipe::kProduct: {
      out["kind"] = "product";
      json parts = json::array();
      for (auto& p : g.parts) parts.push_back(recipe_to_json(p));
      out["parts"] = parts;
      break;
    }
  }
  return out;
}

GenRecipe recipe_from_json(const json& j) {
  GenRecipe g;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "eis") {
    g.kind = GenRecipe::kEis;
    g.chi = DirichletChar::parse(j.at("chi").get<std::string>());
    g.psi = DirichletChar::parse(j.at("psi").get<std::string>());
    g.k = j.at("k").get<long>();
    g.t = j.at("t").get<long>();
  } else if (kind == "eis2") {
    g.kind = GenRecipe::kEis2;
    g.t = j.at("t").get<long>();
  } else {
    g.kind = GenRecipe::kProduct;
    for (auto& p : j.at("parts")) g.parts.push_back(recipe_from_json(p));
  }
  return g;
}
}  // namespace

json to_json(const ModularFormSpace& sp) {
  json basis = json::array();
  for (auto& b : sp.basis) basis.push_back(to_json(b));
  json gens = json::array();
  for (auto& g : sp.generators) gens.push_back(recipe_to_json(g));
  json coord = json::array();
  for (long i = 0; i < sp.coord.rows(); ++i) {
    json row = json::array();
    for (long j2 = 0; j2 < sp.coord.cols(); ++j2) row.push_back(to_json(sp.coord(i, j2)));
    coord.push_back(row);
  }
  return json{{"version", kCacheVersion},
              {"weight_num", sp.weight_num},
              {"level", sp.level},
              {"character", sp.character.label()},
              {"cuspidal", sp.cuspidal},
              {"prec", sp.prec},
              {"field_order", sp.field_order},
              {"basis", basis},
              {"generators", gens},
              {"coord", coord},
              {"divide_by_theta", sp.divide_by_theta}};
}

ModularFormSpace space_from_json(const json& j) {
  if (j.at("version").get<std::string>() != kCacheVersion)
    throw std::runtime_error("space cache: version mismatch");
  ModularFormSpace sp;
  sp.weight_num = j.at("weight_num").get<long>();
  sp.level = j.at("level").get<long>();
  sp.character = DirichletChar::parse(j.at("character").get<std::string>());
  sp.cuspidal = j.at("cuspidal").get<bool>();
  sp.prec = j.at("prec").get<long>();
  sp.field_order = j.at("field_order").get<long>();
  for (auto& b : j.at("basis")) {
    sp.basis.push_back(qseries_from_json(b));
    long piv = -1;
    for (auto& [n, c] : sp.basis.back().terms()) {
      if (!c.is_zero()) {
        piv = n;
        break;
      }
    }
    sp.pivots.push_back(piv);
  }
  for (auto& g : j.at("generators")) sp.generators.push_back(recipe_from_json(g));
  auto& coord = j.at("coord");
  long rows = static_cast<long>(coord.size());
  long cols = rows ? static_cast<long>(coord.at(0).size()) : 0;
  sp.coord = MatC(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j2 = 0; j2 < cols; ++j2) sp.coord(i, j2) = cyclo_from_json(coord.at(i).at(j2));
  sp.divide_by_theta = j.at("divide_by_theta").get<bool>();
  return sp;
}

json to_json(const EigenSystem& sys) {
  json eig = json::array();
  for (auto& [label, val] : sys.op_value) {
    json entry{{"op", label}};
    if (sys.rational()) {
      CycloElem root = -sys.combo_minpoly.coeff(0) / sys.combo_minpoly.coeff(1);
      entry["value"] = to_json(val.eval(root));
    } else {
      entry["factor"] = to_json(sys.combo_minpoly);
      entry["as_poly"] = to_json(val);
      entry["index"] = 0;  // root indexing is through the shared defining factor
    }
    eig.push_back(entry);
  }
  json slopes = json::array();
  for (auto& [s, m] : sys.slope_multiset) slopes.push_back(json::array({s.str(), m}));
  return json{{"side", sys.half_side ? "half-integral" : "integral"},
              {"lambda", sys.lambda},
              {"j", sys.j},
              {"p", sys.p},
              {"tame_char", sys.tame.label()},
              {"slope", sys.slope.str()},
              {"slope_pure", sys.slope_pure},
              {"slope_multiset", slopes},
              {"multiplicity", sys.multiplicity},
              {"eigenvalues", eig}};
}

json to_json(const LiftRecord& rec) {
  return json{{"source", to_json(rec.source)},
              {"target", to_json(rec.target)},
              {"qexp", to_json(rec.target_qexp.truncated(std::min(rec.target_qexp.prec(), 60L)))},
              {"flags",
               {{"membership", rec.membership},
                {"eigen_match", rec.eigen_match},
                {"recursion", rec.recursion},
                {"cuspidal_target", rec.cuspidal_target}}},
              {"failing_exponent", rec.failing_exponent}};
}

json to_json(const ScanReport& report) {
  json pts = json::array();
  for (auto& pt : report.points) {
    json slices = json::array();
    for (const SpectralSlice* s : {&pt.half, &pt.integral}) {
      json slopes = json::array();
      for (auto& [sl, m] : s->polygon.slopes) slopes.push_back(json::array({sl.str(), m}));
      json factors = json::array();
      for (auto& [sl, f] : s->slope_factors)
        factors.push_back(json{{"slope", sl.str()}, {"factor", to_json(f)}});
      slices.push_back(json{{"side", s->half_side ? "half-integral" : "integral"},
                            {"level", s->level},
                            {"nebentypus", s->nebentypus.label()},
                            {"cuspidal", s->cuspidal},
                            {"dim", s->dim},
                            {"fredholm", to_json(s->fredholm)},
                            {"fredholm_rs", to_json(s->fredholm_rs)},
                            {"slopes", slopes},
                            {"slope_factors", factors},
                            {"slope_factors_rational", s->slope_factors_rational}});
    }
    json hsys = json::array(), isys = json::array();
    for (auto& s : pt.half_systems) hsys.push_back(to_json(s));
    for (auto& s : pt.integral_systems) isys.push_back(to_json(s));
    json matches = json::array();
    for (size_t i = 0; i < pt.matches.size(); ++i) {
      matches.push_back(json{{"half_index", pt.matches[i].half_index},
                             {"integral_index", pt.matches[i].integral_index},
                             {"control", control_flag_name(pt.control[i])},
                             {"diagnostic", pt.matches[i].diagnostic}});
    }
    pts.push_back(json{{"lambda", pt.weight.lambda},
                       {"j", pt.weight.j},
                       {"component", pt.weight.component()},
                       {"tame", pt.tame.label()},
                       {"slices", slices},
                       {"divisibility_ok", pt.divisibility_ok},
                       {"divisibility_quotient", pt.divisibility.ok ? to_json(pt.divisibility.quotient)
                                                                    : json()},
                       {"divisibility_offender",
                        pt.divisibility.ok ? json() : to_json(pt.divisibility.offending_factor)},
                       {"half_systems", hsys},
                       {"integral_systems", isys},
                       {"matches", matches},
                       {"error", pt.error}});
  }
  json pairs = json::array();
  for (auto& pr : report.involution_pairs)
    pairs.push_back(json{{"point_a", pr.point_a},
                         {"point_b", pr.point_b},
                         {"sys_a", pr.sys_a},
                         {"sys_b", pr.sys_b},
                         {"sh_images_equal", pr.sh_images_equal}});
  json tames = json::array();
  for (auto& t : report.config.tame_labels) tames.push_back(t);
  return json{{"config",
               {{"p", report.config.p},
                {"N", report.config.N},
                {"lambdas", report.config.lambdas},
                {"js", report.config.js},
                {"tame_labels", tames},
                {"seed", report.config.seed},
                {"prec_ceiling", report.config.prec_ceiling}}},
              {"points", pts},
              {"involution_pairs", pairs},
              {"all_divisible", report.all_divisible},
              {"all_smallslope_matched", report.all_smallslope_matched},
              {"involution_coherent", report.involution_coherent}};
}

std::string scan_report_csv(const ScanReport& report) {
  std::ostringstream os;
  os << "lambda,j,component,tame,side,slope,matched,control\n";
  for (auto& pt : report.points) {
    for (size_t i = 0; i < pt.half_systems.size(); ++i) {
      const EigenSystem& s = pt.half_systems[i];
      os << pt.weight.lambda << "," << pt.weight.j << "," << pt.weight.component() << ","
         << pt.tame.label() << ",half," << s.slope.str() << ","
         << (pt.matches[i].integral_index >= 0 ? "yes" : "no") << ","
         << control_flag_name(pt.control[i]) << "\n";
    }
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

bool cache_load_space(const std::string& dir, const std::string& key, ModularFormSpace& out) {
  namespace fs = std::filesystem;
  fs::path p = fs::path(dir) / (key + ".json");
  if (!fs::exists(p)) return false;
  std::ifstream in(p);
  json j;
  in >> j;
  try {
    out = space_from_json(j);
  } catch (const std::exception&) {
    return false;  // version mismatch forces a rebuild
  }
  return true;
}

void cache_store_space(const std::string& dir, const ModularFormSpace& sp) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::path p = fs::path(dir) / (sp.cache_key() + ".json");
  write_file_atomic(p.string(), to_json(sp).dump());
}

}  // namespace shq
