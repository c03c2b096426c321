#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "psbm/axioms.hpp"
#include "psbm/comparison.hpp"
#include "psbm/contraction.hpp"
#include "psbm/errors.hpp"
#include "psbm/fixpoint.hpp"
#include "psbm/kernels/kernels.hpp"
#include "psbm/numeric.hpp"
#include "psbm/repro.hpp"
#include "psbm/serialize.hpp"
#include "psbm/topology.hpp"

using namespace psbm;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string space = "builtin:quintic_ray";
  std::string format = "text";
  double tol = kDefaultIterationTol;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  double bound = 64.0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PartialSbSpace load_space(const std::string& selector, double bound) {
  if (selector.rfind("builtin:", 0) == 0) return builtin_space(selector.substr(8)).with_bound(bound);
  if (selector.rfind("file:", 0) == 0) {
    const auto path = selector.substr(5);
    return load_tabulated_space(read_file(path), path).with_bound(bound);
  }
  throw Error(ErrorCode::InvalidArgument,
              "space selector must be builtin:<name> or file:<path>, got '" + selector + "'");
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "-";
  if (v.is_number_float()) return format_real(v.get<double>());
  return v.dump();
}

bool is_flat(const Json& v) {
  for (const auto& e : v) {
    if (e.is_structured() && !(e.is_array() && is_flat(e))) return false;
  }
  return true;
}

std::string flat_text(const Json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string out = "{";
  bool first = true;
  for (const auto& e : v) {
    out += (first ? "" : ",") + flat_text(e);
    first = false;
  }
  return out + "}";
}

void render_text(std::ostream& out, const Json& v, const std::string& indent = "") {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const auto& e = it.value();
    const std::string key = v.is_array() ? "-" : it.key() + ":";
    if (!e.is_structured() || (e.is_array() && is_flat(e))) {
      out << indent << key << ' ' << flat_text(e) << '\n';
    } else if (e.empty()) {
      out << indent << key << ' ' << (e.is_array() ? "{}" : "-") << '\n';
    } else {
      out << indent << key << '\n';
      render_text(out, e, indent + "  ");
    }
  }
}

int emit(const Common& c, const Json& report, bool passed) {
  if (c.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    render_text(std::cout, report);
  }
  return passed ? kExitPass : kExitFail;
}

std::vector<Point> candidate_points(const PartialSbSpace& space, const Common& c) {
  if (space.is_finite()) return space.points();
  return sample_carrier(space, c.samples, c.seed);
}

ComparisonFn load_comparison(const std::string& selector, ComparisonFn::Kind kind) {
  if (selector.rfind("file:", 0) == 0) return ComparisonFn::from_json(read_file(selector.substr(5)), kind);
  return ComparisonFn::builtin(selector, kind);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "not a number: '" + part + "'");
    }
  }
  return out;
}

struct SpecOptions {
  std::string spec = "paper";
  bool matkowski = false;
  std::string exponents;
  std::string fn;
  std::string map;
};

void add_spec_options(CLI::App* sub, SpecOptions& o) {
  sub->add_option("--spec", o.spec, "contraction spec")->check(CLI::IsMember({"paper"}));
  sub->add_flag("--matkowski", o.matkowski, "use the Matkowski form (default fn: half)");
  sub->add_option("--exponents", o.exponents, "p,q,r,s overriding the spec");
  sub->add_option("--fn", o.fn, "comparison function: builtin name or file:<json>");
  sub->add_option("--map", o.map, "self-map builtin name");
}

InterpolativeSpec build_spec(const SpecOptions& o) {
  const auto kind = o.matkowski ? ComparisonFn::Kind::Matkowski : ComparisonFn::Kind::BoydWong;
  auto spec = InterpolativeSpec::paper(kind);
  if (!o.exponents.empty()) {
    const auto e = parse_list(o.exponents);
    if (e.size() != 4) throw Error(ErrorCode::InvalidExponents, "--exponents needs four values");
    spec.p = e[0];
    spec.q = e[1];
    spec.r = e[2];
    spec.s = e[3];
  }
  if (!o.fn.empty()) spec.comparison = load_comparison(o.fn, kind);
  if (!o.map.empty()) spec.map = SelfMap::builtin(o.map);
  spec.validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for partial S_b-metric spaces"};
  app.require_subcommand(1);
  Common c;
  if (const char* env = std::getenv("PSBM_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "PSBM_SEED must be an unsigned integer\n";
      return kExitUsage;
    }
  }

  auto add_common = [&](CLI::App* sub, std::vector<std::string> formats = {"text", "json"}) {
    sub->add_option("--space", c.space, "builtin:<name> or file:<path>");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--tol", c.tol, "tolerance for continuous points");
    sub->add_option("--samples", c.samples, "sample count on continuous carriers");
    sub->add_option("--seed", c.seed, "random seed (default 0, or PSBM_SEED)");
    sub->add_option("--bound", c.bound, "upper sampling bound on unbounded carriers");
  };

  std::string axiom_set = "partial-sb";
  auto* verify = app.add_subcommand("verify-axioms", "check the axioms on a space");
  add_common(verify);
  verify->add_option("--axioms", axiom_set, "s-metric | partial-s | sb-metric | partial-sb");

  std::string center = "1";
  double radius = 1.0;
  auto* ball = app.add_subcommand("ball", "compute an open ball");
  add_common(ball);
  ball->add_option("--center", center)->required();
  ball->add_option("--radius", radius)->required();

  auto* topology = app.add_subcommand("topology", "generate the topology of a finite space");
  add_common(topology);
  auto* separation = app.add_subcommand("separation", "T0/T1/T2 report");
  add_common(separation);
  auto* connected = app.add_subcommand("connected", "connectedness check");
  add_common(connected);

  std::string subfamily;
  double scale = 1.0, offset = 0.0;
  auto* cover = app.add_subcommand("cover-witness", "find a point missed by a finite subfamily of balls");
  add_common(cover);
  cover->add_option("--center", center, "ball center (default 1)");
  cover->add_option("--subfamily", subfamily, "comma-separated indices n")->required();
  cover->add_option("--scale", scale, "radius = scale*n + offset");
  cover->add_option("--offset", offset);

  std::string fn_name = "paper_tau";
  std::string kind_name = "boyd-wong";
  std::size_t budget = 64;
  auto* comparison = app.add_subcommand("check-comparison", "check comparison-function properties");
  add_common(comparison);
  comparison->add_option("--fn", fn_name, "builtin name or file:<json>");
  comparison->add_option("--kind", kind_name, "boyd-wong or matkowski");
  comparison->add_option("--budget", budget, "iterate budget for the decay check");

  SpecOptions spec_opts;
  std::size_t grid = 0;
  auto* certify_cmd = app.add_subcommand("certify", "certify the interpolative contraction inequality");
  add_common(certify_cmd);
  add_spec_options(certify_cmd, spec_opts);
  certify_cmd->add_option("--grid", grid, "restrict to isolated points plus an N-point grid, checked exhaustively");

  std::size_t table_grid = 50;
  auto* case_table = app.add_subcommand("case-table", "reproduce the subcase table");
  add_common(case_table);
  add_spec_options(case_table, spec_opts);
  case_table->add_option("--grid", table_grid, "grid points on the continuous part");

  std::string start = "7";
  std::string map_name = "paper_S";
  std::string envelope_fn = "half";
  std::size_t max_iter = kDefaultMaxIter;
  std::size_t tail = 1;
  auto* fixpoint = app.add_subcommand("fixpoint", "Picard iteration with convergence diagnostics");
  add_common(fixpoint, {"text", "json", "csv"});
  fixpoint->add_option("--start", start, "initial point a0");
  fixpoint->add_option("--map", map_name, "self-map builtin name");
  fixpoint->add_option("--max-iter", max_iter);
  fixpoint->add_option("--tail", tail, "orbit tail for the Cauchy diagnostic");
  fixpoint->add_option("--envelope", envelope_fn, "Matkowski function bounding the gaps");

  std::vector<std::string> overrides;
  auto* repro = app.add_subcommand("repro", "re-run every reference check");
  add_common(repro);
  repro->add_option("--override", overrides, "name=path replaces a builtin table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return kExitPass;
    }
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*repro) {
      ReproOptions options;
      options.seed = c.seed;
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--override expects name=path");
        const auto name = o.substr(0, eq);
        builtin_space(name);
        options.overrides.emplace(name, load_tabulated_space(read_file(o.substr(eq + 1)), name));
      }
      const auto items = run_repro(options);
      const bool all = std::all_of(items.begin(), items.end(), [](const auto& i) { return i.passed; });
      if (c.format == "json") {
        std::cout << to_json(items).dump(2) << '\n';
      } else {
        std::cout << render_repro(items);
      }
      return all ? kExitPass : kExitFail;
    }

    if (*comparison) {
      const auto kind = parse_comparison_kind(kind_name);
      const auto fn = load_comparison(fn_name, kind);
      const auto grid_values = default_comparison_grid();
      const auto report = kind == ComparisonFn::Kind::BoydWong
                              ? check_boyd_wong_properties(fn, grid_values)
                              : check_matkowski_properties(fn, grid_values, budget);
      return emit(c, to_json(report), report.passed);
    }

    const auto space = load_space(c.space, c.bound);

    if (*verify) {
      const auto source = space.is_finite() ? QuadrupleSource::exhaustive()
                                            : QuadrupleSource::sampled(c.samples, c.seed);
      const auto report = check_axioms(space, parse_axiom_set(axiom_set), source);
      return emit(c, to_json(space, report), report.passed);
    }
    if (*ball) {
      const auto result = open_ball(space, space.parse_point(center), radius, candidate_points(space, c));
      return emit(c, to_json(space, result), true);
    }
    if (*topology) {
      const auto t = generate_topology(space);
      auto report = to_json(t);
      report["is_topology"] = verify_topology_axioms(t);
      return emit(c, report, report["is_topology"].get<bool>());
    }
    if (*separation) {
      const auto t = generate_topology(space);
      return emit(c, to_json(t, separation_report(t)), true);
    }
    if (*connected) {
      const auto t = generate_topology(space);
      return emit(c, to_json(t, is_connected(t)), true);
    }
    if (*cover) {
      CoverFamily family{space.parse_point(center), scale, offset, {}};
      for (double n : parse_list(subfamily)) family.indices.push_back(static_cast<long>(n));
      const auto witness = uncovered_witness(space, family, family.indices, c.bound);
      auto report = to_json(space, family);
      report["subfamily"] = family.indices;
      report["search_bound"] = c.bound;
      report["witness"] = witness ? point_json(space, *witness) : Json(nullptr);
      return emit(c, report, witness.has_value());
    }
    if (*certify_cmd) {
      const auto spec = build_spec(spec_opts);
      if (grid > 0) {
        const auto finite = restrict_to(space, grid_carrier(space, grid));
        const auto report = certify(finite, spec, TripleSource::exhaustive());
        return emit(c, to_json(finite, report), report.passed);
      }
      const auto source = space.is_finite() ? TripleSource::exhaustive()
                                            : TripleSource::sampled(c.samples, c.seed);
      const auto report = certify(space, spec, source);
      return emit(c, to_json(space, report), report.passed);
    }
    if (*case_table) {
      const auto table = reproduce_case_table(space, build_spec(spec_opts), table_grid);
      if (c.format == "text") {
        std::cout << render_case_table(table);
        return table.all_hold ? kExitPass : kExitFail;
      }
      return emit(c, to_json(table), table.all_hold);
    }
    if (*fixpoint) {
      const auto map = SelfMap::builtin(map_name);
      const auto trace = picard_iterate(space, map, space.parse_point(start), c.tol, max_iter);
      if (c.format == "csv") {
        std::cout << trace_csv(space, trace);
        return trace.converged ? kExitPass : kExitFail;
      }
      auto report = to_json(space, trace);
      if (trace.orbit.size() >= tail + 2) report["convergence"] = to_json(cauchy_diagnostic(space, trace, tail));
      const auto env = matkowski_envelope_check(
          trace, load_comparison(envelope_fn, ComparisonFn::Kind::Matkowski));
      report["envelope"] = {{"function", envelope_fn},
                            {"holds", env.holds},
                            {"first_violation", env.first_violation ? Json(*env.first_violation) : Json(nullptr)}};
      if (trace.limit) {
        const auto check = verify_fixed_point(space, map, *trace.limit, c.tol);
        report["fixed_point"] = {{"is_fixed", check.is_fixed},
                                 {"self_distance_zero", check.self_distance_zero},
                                 {"self_distance", check.self_distance}};
      }
      return emit(c, report, trace.converged);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
