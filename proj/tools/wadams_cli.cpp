// Command-line front end: wires JSON configs to the library and emits
// machine-readable reports. One command per process.
//
// Exit codes: 0 all checks pass, 1 a certified condition fails, 2 invalid
// config, 3 inconclusive classification, 4 solver non-convergence.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wadams/extremals.hpp"
#include "wadams/json_io.hpp"
#include "wadams/nonlinearity.hpp"
#include "wadams/parallel.hpp"
#include "wadams/radial_core.hpp"
#include "wadams/radial_lemma.hpp"
#include "wadams/solver.hpp"
#include "wadams/weights.hpp"

namespace {

constexpr int EXIT_PASS = 0;
constexpr int EXIT_FAIL = 1;
constexpr int EXIT_BAD_CONFIG = 2;
constexpr int EXIT_INCONCLUSIVE = 3;
constexpr int EXIT_NO_CONVERGENCE = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<long long> seed;
  std::optional<double> quad_tol;
  int threads = 0;  // 0 = library default, 1 = serial
};

wadams::json load_config(const CommonOpts& opts) {
  if (opts.config_path.empty()) return wadams::json::object();
  std::ifstream is(opts.config_path);
  if (!is) throw std::invalid_argument("cannot open config: " + opts.config_path);
  wadams::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config root must be an object");
  return j;
}

void apply_common(const CommonOpts& opts, wadams::json& config) {
  if (opts.seed) config["seed"] = *opts.seed;
  if (opts.quad_tol) {
    if (!config.contains("quad")) config["quad"] = wadams::json::object();
    config["quad"]["rel_tol"] = *opts.quad_tol;
  }
  if (opts.threads == 1) {
    wadams::set_parallel(false);
  } else if (opts.threads > 1) {
    wadams::set_parallel(true);
    wadams::set_threads(opts.threads);
  }
}

void emit(const CommonOpts& opts, const std::string& name,
          const std::string& content) {
  std::filesystem::create_directories(opts.out_dir);
  wadams::write_atomic(opts.out_dir + "/" + name, content);
}

unsigned long seed_of(const wadams::json& config) {
  if (!config.contains("seed")) return 12345ul;
  if (!config.at("seed").is_number())
    throw std::invalid_argument("seed must be a number");
  return config.at("seed").get<unsigned long>();
}

wadams::QuadratureSpec quad_of(const wadams::json& config) {
  if (!config.contains("quad")) return {};
  return wadams::quad_from_json(config.at("quad"));
}

int cmd_check_weight(const CommonOpts& opts) {
  wadams::json config = load_config(opts);
  apply_common(opts, config);
  wadams::WeightProfile profile =
      config.contains("profile") ? wadams::profile_from_json(config.at("profile"))
                                 : wadams::WeightProfile{};
  wadams::QuadratureSpec quad = quad_of(config);

  auto structural = wadams::check_structural_conditions(profile, quad);
  auto a2 = wadams::check_a2(profile, wadams::default_ball_suite(), quad);
  auto growth = wadams::check_growth_conditions_D(profile, 12, quad);

  wadams::json out;
  out["command"] = "check-weight";
  out["config"] = config;
  out["resolved_profile"] = wadams::to_json(profile);
  out["structural"] = wadams::to_json(structural);
  out["a2"] = wadams::to_json(a2);
  out["growth_D"] = wadams::to_json(growth);
  bool pass = structural.pass() && a2.pass() && growth.pass();
  out["pass"] = pass;
  emit(opts, "check_weight.json", out.dump(2) + "\n");
  return pass ? EXIT_PASS : EXIT_FAIL;
}

int cmd_dichotomy(const CommonOpts& opts) {
  wadams::json config = load_config(opts);
  apply_common(opts, config);
  wadams::WeightProfile profile =
      config.contains("profile") ? wadams::profile_from_json(config.at("profile"))
                                 : wadams::WeightProfile{};
  wadams::QuadratureSpec quad = quad_of(config);
  const double beta = profile.beta;
  const double ab = wadams::alpha_beta(beta);

  std::vector<double> alphas;
  if (config.contains("alphas")) {
    alphas = config.at("alphas").get<std::vector<double>>();
  } else if (config.contains("alphas_rel")) {
    for (double rel : config.at("alphas_rel").get<std::vector<double>>())
      alphas.push_back(rel * ab);
  } else {
    for (double rel : {0.9, 1.0, 1.2}) alphas.push_back(rel * ab);
  }
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  std::vector<double> epsilons =
      config.contains("epsilons")
          ? config.at("epsilons").get<std::vector<double>>()
          : wadams::default_epsilon_ladder(beta);
  if (epsilons.empty()) throw std::invalid_argument("empty epsilon list");
  bool normalized = config.value("normalized", false);

  auto rep = wadams::dichotomy_sweep(alphas, beta, profile, epsilons, quad,
                                     normalized);

  wadams::json out;
  out["command"] = "dichotomy";
  out["config"] = config;
  out["alpha_beta"] = ab;
  out["sweep"] = wadams::to_json(rep);

  bool inconclusive = false, mismatch = false;
  for (const auto& row : rep.rows) {
    wadams::Verdict expect = row.alpha <= ab * (1.0 + 1e-12)
                                 ? wadams::Verdict::Bounded
                                 : wadams::Verdict::Divergent;
    if (row.verdict == wadams::Verdict::Inconclusive)
      inconclusive = true;
    else if (row.verdict != expect)
      mismatch = true;
  }
  out["matches_threshold_dichotomy"] = !mismatch && !inconclusive;
  emit(opts, "dichotomy.json", out.dump(2) + "\n");
  emit(opts, "dichotomy.csv", wadams::sweep_csv(rep));
  if (inconclusive) return EXIT_INCONCLUSIVE;
  return mismatch ? EXIT_FAIL : EXIT_PASS;
}

int cmd_solve(const CommonOpts& opts) {
  wadams::json config = load_config(opts);
  apply_common(opts, config);
  wadams::SolveConfig sc = wadams::solve_config_from_json(config);

  wadams::SolveReport rep = wadams::mountain_pass_solve(sc);
  wadams::json out;
  out["command"] = "solve";
  out["config"] = wadams::to_json(sc);
  out["report"] = wadams::to_json(rep);

  bool verified = false;
  if (rep.converged) {
    wadams::VerifyRecord ver = wadams::verify_solution(rep, sc);
    out["verification"] = wadams::to_json(ver);
    verified = ver.certified;

    wadams::FemSpace space = wadams::FemSpace::make(sc.R, sc.n_inner,
                                                    sc.n_outer, sc.tail_element);
    wadams::Operator op(space, sc.profile, sc.growth, sc.gauss_points, sc.quad);
    std::vector<double> radii;
    for (int i = 0; i <= 400; ++i) radii.push_back(sc.R * i / 400.0);
    emit(opts, "solution.csv",
         wadams::solution_csv(op.to_radial(rep.solution.coeffs), radii));
  }
  emit(opts, "solve.json", out.dump(2) + "\n");
  if (!rep.converged) return EXIT_NO_CONVERGENCE;
  return verified ? EXIT_PASS : EXIT_FAIL;
}

int cmd_radial_lemma(const CommonOpts& opts) {
  wadams::json config = load_config(opts);
  apply_common(opts, config);
  wadams::WeightProfile profile =
      config.contains("profile") ? wadams::profile_from_json(config.at("profile"))
                                 : wadams::WeightProfile{};
  wadams::QuadratureSpec quad = quad_of(config);
  int n = config.value("corpus_size", 20);
  double tol = config.value("tol", 1e-8);
  std::vector<double> radii =
      config.contains("radii") ? config.at("radii").get<std::vector<double>>()
                               : std::vector<double>{1, 2, 5, 10, 100, 1000};
  if (n < 0 || radii.empty()) throw std::invalid_argument("bad lemma config");

  auto corpus = wadams::random_radial_corpus(n, seed_of(config));
  // optional extra closed-form members: A e^(-a r^2) + B (1 + c r^2)^(-m);
  // the declared decay exponent must not exceed what the form guarantees
  if (config.contains("extra")) {
    for (const auto& e : config.at("extra")) {
      double A = e.value("A", 0.0), a = e.value("a", 1.0);
      double B = e.value("B", 0.0), c = e.value("c", 1.0);
      int m = e.value("m", 2);
      double guaranteed = (A != 0.0 && B == 0.0)
                              ? std::numeric_limits<double>::infinity()
                              : 2.0 * m;
      double decay = e.value("decay", guaranteed == INFINITY ? 4.0 : guaranteed);
      if (decay > guaranteed + 1e-12)
        throw std::invalid_argument(
            "extra member declares faster decay than its closed form has");
      wadams::Piece p;
      p.r_lo = 0.0;
      p.r_hi = std::numeric_limits<double>::infinity();
      p.value = [=](double r) {
        return A * std::exp(-a * r * r) + B * std::pow(1.0 + c * r * r, -m);
      };
      p.derivative = [=](double r) {
        return -2.0 * A * a * r * std::exp(-a * r * r) -
               2.0 * B * m * c * r * std::pow(1.0 + c * r * r, -m - 1);
      };
      p.laplacian = [=](double r) {
        double g = A * std::exp(-a * r * r) * (4 * a * a * r * r - 8 * a);
        double qd = 1.0 + c * r * r;
        return g + B * (-8.0 * m * c * std::pow(qd, -m - 1) +
                        4.0 * m * (m + 1) * c * c * r * r *
                            std::pow(qd, -m - 2));
      };
      corpus.push_back(wadams::RadialFunction::closed_form({p}, decay));
    }
  }

  wadams::json out;
  out["command"] = "radial-lemma";
  out["config"] = config;
  out["members"] = wadams::json::array();
  std::ostringstream csv;
  csv << "member,r,lhs,rhs,margin\n";
  bool all_pass = true;
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto mr = wadams::verify_radial_lemma(corpus[i], profile, radii, tol, quad);
    all_pass = all_pass && mr.pass;
    min_margin = std::min(min_margin, mr.min_margin);
    wadams::json mj = wadams::to_json(mr);
    mj["member"] = i;
    out["members"].push_back(mj);
    for (const auto& row : mr.rows) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", i,
                    row.r, row.lhs, row.rhs, row.margin);
      csv << buf;
    }
  }
  out["pass"] = all_pass;
  out["min_margin"] = min_margin;
  emit(opts, "radial_lemma.json", out.dump(2) + "\n");
  emit(opts, "radial_lemma.csv", csv.str());
  return all_pass ? EXIT_PASS : EXIT_FAIL;
}

int cmd_norms(const CommonOpts& opts) {
  wadams::json config = load_config(opts);
  apply_common(opts, config);
  wadams::WeightProfile profile =
      config.contains("profile") ? wadams::profile_from_json(config.at("profile"))
                                 : wadams::WeightProfile{};
  wadams::QuadratureSpec quad = quad_of(config);

  // the profile whose norms are requested: the concentrating family member
  // (default) or a Gaussian A e^(-a r^2)
  wadams::RadialFunction u = [&]() {
    std::string type = "family";
    wadams::json fn = config.value("function", wadams::json::object());
    if (fn.contains("type")) type = fn.at("type").get<std::string>();
    if (type == "family") {
      wadams::AdamsFamilyParams fp;
      fp.beta = profile.beta;
      fp.epsilon = fn.value("epsilon", 1e-4);
      return wadams::adams_family(fp);
    }
    if (type == "gaussian") {
      double A = fn.value("A", 1.0), a = fn.value("a", 1.0);
      wadams::Piece p;
      p.r_lo = 0.0;
      p.r_hi = std::numeric_limits<double>::infinity();
      p.value = [=](double r) { return A * std::exp(-a * r * r); };
      p.derivative = [=](double r) {
        return -2.0 * A * a * r * std::exp(-a * r * r);
      };
      p.laplacian = [=](double r) {
        return A * std::exp(-a * r * r) * (4 * a * a * r * r - 8 * a);
      };
      return wadams::RadialFunction::closed_form({p}, 6.0);
    }
    throw std::invalid_argument("function type must be 'family' or 'gaussian'");
  }();

  double alpha = config.value("alpha", wadams::alpha_beta(profile.beta));
  std::vector<double> ps = config.contains("p_list")
                               ? config.at("p_list").get<std::vector<double>>()
                               : std::vector<double>{4.0, 6.0, 8.0};

  wadams::json out;
  out["command"] = "norms";
  out["config"] = config;
  out["alpha"] = alpha;
  double sn = wadams::weighted_seminorm(u, profile, quad);
  out["weighted_seminorm"] = sn;
  out["lp_norms"] = wadams::json::array();
  for (double p : ps) {
    bool below = false;
    double v = wadams::lp_norm(u, p, profile.beta, quad, &below);
    wadams::json lj;
    lj["p"] = p;
    lj["value"] = v;
    lj["below_embedding_range"] = below;
    out["lp_norms"].push_back(lj);
  }
  auto av = wadams::adams_functional(u, alpha, profile.beta, quad);
  out["adams_functional"] = av.overflow ? wadams::json("overflow")
                                        : wadams::json(av.value);
  if (sn <= 1.0)
    out["concentration_limit"] =
        wadams::concentration_limit_pbeta(sn, profile.beta);
  emit(opts, "norms.json", out.dump(2) + "\n");
  return EXIT_PASS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted fourth-order inequality toolkit"};
  app.require_subcommand(1);
  CommonOpts opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON config path");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", opts.seed, "override RNG seed");
    sub->add_option("--quad-tol", opts.quad_tol,
                    "override quadrature relative tolerance");
    sub->add_option("--threads", opts.threads,
                    "worker threads (1 = serial, 0 = default)");
  };
  auto* c1 = app.add_subcommand("check-weight",
                                "certify the structural weight conditions");
  auto* c2 = app.add_subcommand("dichotomy",
                                "sharp-exponent sweep on the concentrating family");
  auto* c3 = app.add_subcommand("solve", "mountain-pass solve + certification");
  auto* c4 = app.add_subcommand("radial-lemma",
                                "pointwise decay bound on a random corpus");
  auto* c5 = app.add_subcommand("norms", "norms and functionals of a profile");
  for (auto* s : {c1, c2, c3, c4, c5}) add_common(s);

  CLI11_PARSE(app, argc, argv);
  try {
    if (c1->parsed()) return cmd_check_weight(opts);
    if (c2->parsed()) return cmd_dichotomy(opts);
    if (c3->parsed()) return cmd_solve(opts);
    if (c4->parsed()) return cmd_radial_lemma(opts);
    if (c5->parsed()) return cmd_norms(opts);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return EXIT_BAD_CONFIG;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return EXIT_FAIL;
  }
  return EXIT_BAD_CONFIG;
}
