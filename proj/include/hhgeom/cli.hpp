#pragma once

// Command-line front end: verify, construct, search and profile.

#include "hhgeom/io.hpp"
#include "hhgeom/symmetrize.hpp"
#include "hhgeom/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hhgeom::cli {

/// Bad flags or configuration; maps to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { verify, construct, search, profile };

struct RunConfig {
  Command command = Command::verify;
  std::string theorem;
  std::string body_path;
  std::string family;  // family name, or a family JSON file
  int n = 3;
  int i = 1;
  int sides = 8;
  int count = 0;
  bool symmetric = false;
  std::string c0_path;
  std::string c1_path;
  std::vector<int> coords;  // 1-based axes spanning H
  std::string subspace_path;
  std::string f_path;
  std::string u_path;
  std::string gauge;
  double alpha = 2.0;
  int m = 1;
  std::size_t samples = kDefaultSamples;
  std::optional<std::uint64_t> seed;
  bool monte_carlo = false;
  std::string out_path;
  std::string best_path;
  std::optional<std::string> format;
  int jobs = 0;
  std::vector<double> axis;
  std::size_t knots = 2001;
  std::size_t trials = 100;
  std::string generator;
  double amplitude = 0.05;
};

namespace detail {

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::string format_of(const RunConfig& c, const char* fallback) {
  const std::string f = c.format.value_or(fallback);
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

inline std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void apply_jobs(const RunConfig& c) {
  int jobs = c.jobs;
  if (jobs <= 0) {
    if (const char* env = std::getenv("HHGEOM_JOBS"); env && *env) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v < 1) throw UsageError("HHGEOM_JOBS must be a positive integer");
      jobs = static_cast<int>(v);
    }
  }
  worker_count() = jobs > 0 ? jobs : 1;
}

inline void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
  } else {
    write_text_file(c.out_path, text);
  }
}

inline BodyFamily family_of(const RunConfig& c) {
  if (ends_with(c.family, ".json")) return family_from_json(read_json_file(c.family));
  BodyFamily f;
  f.tag = body_tag_from_string(c.family);
  f.n = c.n;
  f.i = c.i;
  f.m = c.sides;
  f.count = c.count;
  f.symmetric = c.symmetric;
  if (f.tag == BodyTag::random_hull) {
    if (!c.seed) throw UsageError("--seed is required for family random_hull");
    f.seed = *c.seed;
  }
  if (!c.c0_path.empty()) f.base = body_from_json(read_json_file(c.c0_path));
  if (!c.c1_path.empty()) f.c1 = body_from_json(read_json_file(c.c1_path));
  if ((f.tag == BodyTag::cone_over_base || f.tag == BodyTag::generalized_cylinder) && !f.base)
    f.base = cube(f.n - 1);
  return f;
}

inline Polytope load_body(const RunConfig& c) {
  if (!c.body_path.empty()) return body_from_json(read_json_file(c.body_path));
  if (c.family.empty()) throw UsageError("need --body or --family");
  return make_body(family_of(c));
}

inline std::optional<Subspace> load_subspace(const RunConfig& c, const Polytope& body) {
  const int n = body.dim();
  if (!c.subspace_path.empty()) {
    Subspace h = subspace_from_json(read_json_file(c.subspace_path));
    if (h.ambient() != n) throw UsageError("subspace ambient dimension does not match the body");
    return h;
  }
  if (!c.coords.empty()) {
    std::vector<int> axes;
    for (int a : c.coords) axes.push_back(a - 1);
    return Subspace::coordinate(n, axes);
  }
  if (!c.family.empty() && !ends_with(c.family, ".json") &&
      body_tag_from_string(c.family) == BodyTag::scaled_slab_body) {
    std::vector<int> axes;
    for (int j = 0; j < c.i; ++j) axes.push_back(j);
    return Subspace::coordinate(n, axes);
  }
  return std::nullopt;
}

inline ConvexGauge parse_gauge(const RunConfig& c) {
  const std::string& g = c.gauge;
  if (g.empty() || g == "power") return ConvexGauge::power(c.alpha);
  if (g.rfind("power:", 0) == 0) {
    try {
      return ConvexGauge::power(std::stod(g.substr(6)));
    } catch (const std::logic_error&) {
      throw UsageError("bad gauge '" + g + "'");
    }
  }
  if (g == "exp_minus_one" || g == "exp-minus-one") return ConvexGauge::exp_minus_one();
  if (ends_with(g, ".json")) return gauge_from_json(read_json_file(g));
  throw UsageError("bad gauge '" + g + "'; use power:ALPHA, exp_minus_one or a JSON file");
}

inline IntegrationMode mode_of(const RunConfig& c) {
  return c.monte_carlo ? IntegrationMode::monte_carlo : IntegrationMode::automatic;
}

inline TheoremTag theorem_of(const RunConfig& c) {
  if (c.theorem.empty()) throw UsageError("--theorem is required");
  try {
    return theorem_from_string(c.theorem);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline const char* kCsvHeader = "name,lhs,rhs,ratio,slack,verdict,seed,instance_path\n";

inline std::string report_csv_row(const InequalityReport& r, const std::string& instance_path) {
  return r.name + "," + number(r.lhs) + "," + number(r.rhs) + "," + number(r.ratio) + "," +
         number(r.slack) + "," + std::string(to_string(r.verdict)) + "," + std::to_string(r.seed) +
         "," + instance_path + "\n";
}

inline int run_verify(const RunConfig& c, std::ostream& out) {
  const TheoremTag theorem = theorem_of(c);
  const std::string format = format_of(c, "json");
  Instance in;
  in.body = load_body(c);
  in.subspace = load_subspace(c, in.body);
  const std::string fpath = !c.u_path.empty() ? c.u_path : c.f_path;
  if (!fpath.empty()) in.function = concave_from_json(read_json_file(fpath), in.body);
  if (theorem == TheoremTag::thm2) in.gauge = parse_gauge(c);
  in.alpha = c.alpha;
  in.m = c.m;
  const IntegrationMode mode = mode_of(c);
  if (uses_monte_carlo(theorem, in, mode) && !c.seed)
    throw UsageError("--seed is required when the check uses Monte Carlo");
  const InequalityReport r = run_check(theorem, in, {c.samples, c.seed.value_or(0), mode});
  std::string instance_path;
  if (!c.out_path.empty()) {
    instance_path = c.out_path + ".instance.json";
    write_text_file(instance_path, r.instance.dump(2) + "\n");
  }
  if (format == "csv") {
    emit(c, kCsvHeader + report_csv_row(r, instance_path), out);
  } else {
    json j = report_to_json(r);
    j["instance_path"] = instance_path;
    emit(c, json::array({j}).dump(2) + "\n", out);
  }
  return r.holds() ? 0 : 1;
}

inline int run_construct(const RunConfig& c, std::ostream& out) {
  const TheoremTag theorem = theorem_of(c);
  if (format_of(c, "json") != "json") throw UsageError("construct writes JSON only");
  json j;
  j["theorem"] = std::string(to_string(theorem));
  int code = 0;
  if (theorem == TheoremTag::thm1 || theorem == TheoremTag::santos) {
    const int i = theorem == TheoremTag::santos ? 1 : c.i;
    const Polytope c1 = c.c1_path.empty() ? box(c.n - i, 0.0, 1.0) : body_from_json(read_json_file(c.c1_path));
    std::optional<Polytope> c0;
    if (i > 1) c0 = c.c0_path.empty() ? cube(i - 1) : body_from_json(read_json_file(c.c0_path));
    const auto [body, h] = construct_equality_thm1(c.n, i, c0, c1);
    const InequalityReport r = theorem == TheoremTag::santos ? check_santos(body) : check_thm1(body, h);
    j["body"] = body_to_json(body);
    j["subspace"] = subspace_to_json(h);
    j["report"] = report_to_json(r);
    code = r.holds() ? 0 : 1;
  } else if (theorem == TheoremTag::thm2 || theorem == TheoremTag::cor_alpha ||
             theorem == TheoremTag::thm3) {
    if (c.n < 2) throw UsageError("construct needs --n >= 2");
    const Polytope c0 = c.c0_path.empty() ? cube(c.n - 1) : body_from_json(read_json_file(c.c0_path));
    const Polytope body = generalized_cylinder(unit_vector(c.n, 0), c0);
    const ConcaveFn f = ConcaveFn::affine(body, unit_vector(c.n, 0), 1.0);
    j["body"] = body_to_json(body);
    j[theorem == TheoremTag::thm3 ? "exponent" : "function"] = concave_to_json(f);
  } else {
    throw UsageError("construct supports thm1, santos, thm2, cor_alpha and thm3");
  }
  emit(c, j.dump(2) + "\n", out);
  return code;
}

inline InstanceGenerator make_generator(const RunConfig& c, TheoremTag theorem) {
  const int n = c.n;
  const int count = c.count > 0 ? c.count : 2 * n + 2;
  std::string name = c.generator;
  if (name.empty()) {
    switch (theorem) {
      case TheoremTag::thm1: name = "symmetric-hulls"; break;
      case TheoremTag::santos: name = "slab-normalized"; break;
      case TheoremTag::mp_centroid:
      case TheoremTag::proj_centroid: name = "random-hulls"; break;
      default: name = "cubes-with-functions"; break;
    }
  }
  std::replace(name.begin(), name.end(), '_', '-');
  InstanceGenerator gen;
  if (name == "perturbed-slab") {
    gen = generators::perturbed_scaled_slab(n, c.amplitude);
  } else if (name == "symmetric-hulls") {
    gen = generators::symmetric_hulls(n, c.i, count);
  } else if (name == "slab-normalized") {
    gen = generators::slab_normalized(n, count);
  } else if (name == "random-hulls") {
    gen = generators::random_hulls(n, theorem == TheoremTag::proj_centroid ? n - 1 : c.i, count);
  } else if (name == "cubes-with-functions") {
    gen = generators::cubes_with_functions(n, 3, parse_gauge(c));
  } else {
    throw UsageError("unknown generator '" + c.generator + "'");
  }
  const double alpha = c.alpha;
  const int m = c.m;
  return [gen, alpha, m](Rng& rng) {
    Instance in = gen(rng);
    in.alpha = alpha;
    in.m = m;
    return in;
  };
}

inline int run_search(const RunConfig& c, std::ostream& out) {
  const TheoremTag theorem = theorem_of(c);
  if (format_of(c, "json") != "json") throw UsageError("search writes JSON only");
  if (!c.seed) throw UsageError("--seed is required for search");
  if (c.trials < 1) throw UsageError("--trials must be at least 1");
  const auto res = tightness_search(make_generator(c, theorem), theorem, c.trials, *c.seed, c.samples);
  json j;
  j["theorem"] = std::string(to_string(theorem));
  j["trials"] = res.trials;
  j["seed"] = *c.seed;
  j["best_ratio"] = res.best_ratio;
  j["best_trial"] = res.best_trial;
  j["failures"] = res.failures;
  j["histogram"] = {{"lo", res.histogram_lo}, {"hi", res.histogram_hi}, {"counts", res.ratio_histogram}};
  j["best_report"] = report_to_json(res.best_report);
  std::string best_path = c.best_path;
  if (best_path.empty() && !c.out_path.empty()) best_path = c.out_path + ".best.json";
  if (best_path.empty()) {
    j["best_body"] = body_to_json(res.best_body);
  } else {
    write_text_file(best_path, body_to_json(res.best_body).dump(2) + "\n");
    j["best_instance_path"] = best_path;
  }
  emit(c, j.dump(2) + "\n", out);
  return res.failures == 0 ? 0 : 1;
}

inline int run_profile(const RunConfig& c, std::ostream& out) {
  const std::string format = format_of(c, "csv");
  const Polytope body = load_body(c);
  Vector u = c.axis.empty() ? unit_vector(body.dim(), 0) : Vector(static_cast<Eigen::Index>(c.axis.size()));
  for (std::size_t j = 0; j < c.axis.size(); ++j) u[static_cast<Eigen::Index>(j)] = c.axis[j];
  if (u.size() != body.dim()) throw UsageError("--axis must have one entry per body dimension");
  const SchwarzProfile p = schwarz_profile(body, u, c.knots);
  if (format == "csv") {
    emit(c, profile_to_csv(p), out);
  } else {
    json j;
    j["axis"] = vector_to_json(p.axis);
    j["t"] = p.t;
    j["r_t"] = p.r;
    j["volume"] = schwarz_volume(p);
    emit(c, j.dump(2) + "\n", out);
  }
  return 0;
}

}  // namespace detail

/// Runs one command. Exit status: 0 all checks hold, 1 some check fails,
/// 2 usage, configuration or precondition error.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    detail::apply_jobs(c);
    switch (c.command) {
      case Command::verify: return detail::run_verify(c, out);
      case Command::construct: return detail::run_construct(c, out);
      case Command::search: return detail::run_search(c, out);
      case Command::profile: return detail::run_profile(c, out);
    }
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    err << "hhgeom: usage error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "hhgeom: precondition violated: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "hhgeom: error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "hhgeom: malformed input: " << e.what() << "\n";
  }
  return 2;
}

/// Parses argv into a RunConfig and runs it.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volume, section and integral inequality checks for convex polytopes", "hhgeom"};
  app.require_subcommand(1);
  RunConfig c;
  std::uint64_t seed = 0;
  std::map<std::string, CLI::Option*> seeds;
  auto add_body = [&](CLI::App* sub) {
    sub->add_option("--body", c.body_path, "Body JSON file (vertices or halfspaces)");
    sub->add_option("--family", c.family, "Body family name or family JSON file");
    sub->add_option("--n", c.n, "Ambient dimension")->check(CLI::Range(1, kMaxDim));
    sub->add_option("--i", c.i, "Subspace dimension for family bodies")->check(CLI::Range(1, kMaxDim));
    sub->add_option("--sides", c.sides, "Polygon vertex count for regular_mgon_prism");
    sub->add_option("--count", c.count, "Point count for random bodies");
    sub->add_flag("--symmetric", c.symmetric, "Symmetrize random_hull bodies");
    sub->add_option("--c0", c.c0_path, "Body JSON for C0");
    sub->add_option("--c1", c.c1_path, "Body JSON for C1");
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--theorem", c.theorem, "thm1, santos, thm2, cor_alpha, thm3, classical_hh, "
                                            "hh_center_of_mass, mp_centroid or proj_centroid");
    sub->add_option("--samples", c.samples, "Monte Carlo sample count");
    seeds[sub->get_name()] = sub->add_option("--seed", seed, "Seed for random paths");
    sub->add_option("--out", c.out_path, "Output file (default stdout)");
    sub->add_option("--format", c.format, "json or csv");
    sub->add_option("--jobs", c.jobs, "Worker threads (default HHGEOM_JOBS or 1)");
    sub->add_option("--gauge", c.gauge, "power:ALPHA, exp_minus_one or a gauge JSON file");
    sub->add_option("--alpha", c.alpha, "Exponent for cor_alpha and the bare power gauge");
    sub->add_option("--m", c.m, "Power for hh_center_of_mass");
  };
  auto* verify = app.add_subcommand("verify", "Check one theorem on one instance");
  add_body(verify);
  add_run(verify);
  verify->add_option("--subspace", c.subspace_path, "Subspace JSON file");
  verify->add_option("--coords", c.coords, "1-based coordinate axes spanning H")->delimiter(',');
  verify->add_option("--f", c.f_path, "Concave function JSON file");
  verify->add_option("--u", c.u_path, "Concave exponent JSON file for thm3");
  verify->add_flag("--monte-carlo", c.monte_carlo, "Force Monte Carlo integration");
  auto* construct = app.add_subcommand("construct", "Write an equality body");
  add_body(construct);
  add_run(construct);
  auto* search = app.add_subcommand("search", "Tightness search over random instances");
  add_body(search);
  add_run(search);
  search->add_option("--trials", c.trials, "Number of random instances");
  search->add_option("--generator", c.generator,
                     "perturbed-slab, symmetric-hulls, slab-normalized, random-hulls or "
                     "cubes-with-functions");
  search->add_option("--amplitude", c.amplitude, "Perturbation size for perturbed-slab");
  search->add_option("--best", c.best_path, "File for the best body (default OUT.best.json)");
  auto* profile = app.add_subcommand("profile", "Schwarz symmetrization profile");
  add_body(profile);
  profile->add_option("--axis", c.axis, "Axis direction, comma separated")->delimiter(',');
  profile->add_option("--knots", c.knots, "Knot count")->check(CLI::Range(3, 1000000));
  profile->add_option("--out", c.out_path, "Output file (default stdout)");
  profile->add_option("--format", c.format, "csv or json");
  profile->add_option("--jobs", c.jobs, "Worker threads (default HHGEOM_JOBS or 1)");
  seeds["profile"] = profile->add_option("--seed", seed, "Seed for random_hull bodies");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  if (verify->parsed()) c.command = Command::verify;
  if (construct->parsed()) c.command = Command::construct;
  if (search->parsed()) c.command = Command::search;
  if (profile->parsed()) c.command = Command::profile;
  for (const auto& [name, opt] : seeds)
    if (app.get_subcommand(name)->parsed() && opt->count() > 0) c.seed = seed;
  return run(c, out, err);
}

}  // namespace hhgeom::cli
