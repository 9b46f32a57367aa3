#include "wadams/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wadams {
namespace {

// schema helpers: typed access with invalid_argument on violation
double num(const json& j, const char* key, double fallback,
           bool required = false) {
  if (!j.contains(key)) {
    if (required) throw std::invalid_argument(std::string("missing field: ") + key);
    return fallback;
  }
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string("field must be a number: ") + key);
  return j.at(key).get<double>();
}

bool flag(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean())
    throw std::invalid_argument(std::string("field must be a boolean: ") + key);
  return j.at(key).get<bool>();
}

}  // namespace

json to_json(const ChiSpec& chi) {
  json j;
  if (chi.kind == ChiSpec::Kind::Power) {
    j["kind"] = "power";
    j["a"] = chi.a;
  } else {
    j["kind"] = "table";
    j["r"] = chi.r;
    j["vals"] = chi.vals;
    j["tail_exponent"] = chi.tail_exponent;
  }
  return j;
}

ChiSpec chi_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("chi: expected object with string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return ChiSpec::power(num(j, "a", 3.0, true));
  if (kind == "table") {
    if (!j.contains("r") || !j.contains("vals"))
      throw std::invalid_argument("chi table needs 'r' and 'vals'");
    return ChiSpec::table(j.at("r").get<std::vector<double>>(),
                          j.at("vals").get<std::vector<double>>(),
                          num(j, "tail_exponent", 0.0, true));
  }
  throw std::invalid_argument("chi kind must be 'power' or 'table'");
}

json to_json(const WeightProfile& profile) {
  json j;
  j["beta"] = profile.beta;
  j["chi"] = to_json(profile.chi);
  return j;
}

WeightProfile profile_from_json(const json& j) {
  WeightProfile p;
  p.beta = num(j, "beta", 0.5);
  if (j.contains("chi")) p.chi = chi_from_json(j.at("chi"));
  std::string why;
  if (!p.valid(&why)) throw std::invalid_argument("weight profile: " + why);
  return p;
}

json to_json(const QuadratureSpec& quad) {
  json j;
  j["rel_tol"] = quad.rel_tol;
  j["abs_tol"] = quad.abs_tol;
  j["max_depth"] = quad.max_depth;
  return j;
}

QuadratureSpec quad_from_json(const json& j) {
  QuadratureSpec q;
  q.rel_tol = num(j, "rel_tol", q.rel_tol);
  q.abs_tol = num(j, "abs_tol", q.abs_tol);
  q.max_depth = static_cast<int>(num(j, "max_depth", q.max_depth));
  if (!(q.rel_tol > 0.0 && q.abs_tol >= 0.0 && q.max_depth > 0))
    throw std::invalid_argument("quadrature spec out of range");
  return q;
}

json to_json(const GrowthParams& growth) {
  json j;
  j["p"] = growth.p;
  j["q"] = growth.q;
  j["alpha"] = growth.alpha;
  j["beta"] = growth.beta;
  j["C"] = growth.C;
  j["c0"] = growth.c0;
  return j;
}

GrowthParams growth_from_json(const json& j) {
  GrowthParams g;
  g.p = num(j, "p", g.p);
  g.q = num(j, "q", g.q);
  g.alpha = num(j, "alpha", g.alpha);
  g.beta = num(j, "beta", g.beta);
  g.C = num(j, "C", g.C);
  g.c0 = num(j, "c0", g.c0);
  if (!g.valid())
    throw std::invalid_argument(
        "growth params invalid: need min{p,q} > 2/(1-beta) and positive "
        "alpha, C, c0");
  return g;
}

json to_json(const SolveConfig& config) {
  json j;
  j["growth"] = to_json(config.growth);
  j["profile"] = to_json(config.profile);
  j["R"] = config.R;
  j["n_inner"] = config.n_inner;
  j["n_outer"] = config.n_outer;
  j["tail_element"] = config.tail_element;
  j["path_resolution"] = config.path_resolution;
  j["tol"] = config.tol;
  j["max_iterations"] = config.max_iterations;
  j["gauss_points"] = config.gauss_points;
  j["seed"] = config.seed;
  j["quad"] = to_json(config.quad);
  return j;
}

SolveConfig solve_config_from_json(const json& j) {
  SolveConfig c;
  if (j.contains("growth")) c.growth = growth_from_json(j.at("growth"));
  if (j.contains("profile")) c.profile = profile_from_json(j.at("profile"));
  c.R = num(j, "R", c.R);
  c.n_inner = static_cast<int>(num(j, "n_inner", c.n_inner));
  c.n_outer = static_cast<int>(num(j, "n_outer", c.n_outer));
  c.tail_element = flag(j, "tail_element", c.tail_element);
  c.path_resolution =
      static_cast<int>(num(j, "path_resolution", c.path_resolution));
  c.tol = num(j, "tol", c.tol);
  c.max_iterations =
      static_cast<int>(num(j, "max_iterations", c.max_iterations));
  c.gauss_points = static_cast<int>(num(j, "gauss_points", c.gauss_points));
  c.seed = static_cast<unsigned long>(num(j, "seed", double(c.seed)));
  if (j.contains("quad")) c.quad = quad_from_json(j.at("quad"));
  std::string why;
  if (!c.valid(&why)) throw std::invalid_argument("solve config: " + why);
  return c;
}

json to_json(const ConditionEntry& entry) {
  json j;
  j["name"] = entry.name;
  j["value"] = entry.value;
  j["threshold"] = entry.threshold;
  j["pass"] = entry.pass;
  j["margin"] = entry.margin;
  j["note"] = entry.note;
  return j;
}

json to_json(const ConditionReport& report) {
  json j;
  j["title"] = report.title;
  j["pass"] = report.pass();
  j["entries"] = json::array();
  for (const auto& e : report.entries) j["entries"].push_back(to_json(e));
  return j;
}

json to_json(const MarginReport& report) {
  json j;
  j["pass"] = report.pass;
  j["min_margin"] = report.min_margin;
  j["rows"] = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["r"] = r.r;
    row["lhs"] = r.lhs;
    row["rhs"] = r.rhs;
    row["margin"] = r.margin;
    j["rows"].push_back(row);
  }
  return j;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "BOUNDED";
    case Verdict::Divergent: return "DIVERGENT";
    default: return "INCONCLUSIVE";
  }
}

json to_json(const SweepReport& report) {
  json j;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["alpha"] = row.alpha;
    r["verdict"] = verdict_name(row.verdict);
    r["cells"] = json::array();
    for (const auto& c : row.cells) {
      json cj;
      cj["alpha"] = c.alpha;
      cj["epsilon"] = c.epsilon;
      cj["value"] = c.value;
      cj["overflow"] = c.overflow;
      cj["lower_bound"] = c.lower_bound;
      cj["family_norm"] = c.family_norm;
      r["cells"].push_back(cj);
    }
    j["rows"].push_back(r);
  }
  return j;
}

json to_json(const SolveReport& report) {
  json j;
  j["m_num"] = report.m_num;
  j["residual"] = report.residual;
  j["m_star"] = report.m_star_value;
  j["converged"] = report.converged;
  j["certified"] = report.certified();
  json flags;
  flags["geometry_ok"] = report.geometry_ok;
  flags["level_below_mstar"] = report.level_below_mstar;
  flags["nonneg_ok"] = report.nonneg_ok;
  flags["nehari_ok"] = report.nehari_ok;
  j["certificates"] = flags;
  j["nehari_defect"] = report.nehari_defect;
  j["min_nodal"] = report.min_nodal;
  j["rho0"] = report.rho0;
  j["tau"] = report.tau;
  j["trace"] = json::array();
  for (const auto& t : report.trace) {
    json tj;
    tj["iter"] = t.iter;
    tj["energy"] = t.energy;
    tj["residual"] = t.residual;
    tj["norm"] = t.norm;
    j["trace"].push_back(tj);
  }
  return j;
}

json to_json(const VerifyRecord& record) {
  json j;
  j["weak_identity_ok"] = record.weak_identity_ok;
  j["max_weak_defect"] = record.max_weak_defect;
  j["flags_ok_refined_quadrature"] = record.flags_ok_refined_quadrature;
  j["mesh_refinement_ok"] = record.mesh_refinement_ok;
  j["m_refined"] = record.m_refined;
  j["domain_growth_ok"] = record.domain_growth_ok;
  j["m_wide"] = record.m_wide;
  j["certified"] = record.certified;
  return j;
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string margin_csv(const MarginReport& report) {
  std::ostringstream os;
  os << "r,lhs,rhs,margin\n";
  for (const auto& r : report.rows)
    os << fmt(r.r) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
       << fmt(r.margin) << '\n';
  return os.str();
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "alpha,epsilon,functional_value,lower_bound,overflow,verdict\n";
  for (const auto& row : report.rows)
    for (const auto& c : row.cells)
      os << fmt(c.alpha) << ',' << fmt(c.epsilon) << ',' << fmt(c.value)
         << ',' << fmt(c.lower_bound) << ',' << (c.overflow ? 1 : 0) << ','
         << verdict_name(row.verdict) << '\n';
  return os.str();
}

std::string solution_csv(const RadialFunction& u,
                         const std::vector<double>& radii) {
  std::ostringstream os;
  os << "r,u,lap_u\n";
  for (double r : radii)
    os << fmt(r) << ',' << fmt(u.value(r)) << ',' << fmt(u.laplacian(r))
       << '\n';
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + tmp);
    os << content;
    if (!os.good()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

}  // namespace wadams
