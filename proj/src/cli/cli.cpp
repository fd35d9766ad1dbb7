#include "malle/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <ostream>
#include <sstream>

#include "json_io.hpp"
#include "malle/error.hpp"
#include "malle/invariants.hpp"
#include "malle/local_factors.hpp"
#include "malle/primes.hpp"
#include "malle/selmer.hpp"
#include "verify.hpp"

namespace malle {

namespace {

using cli::json;

struct GroupArgs {
  std::string group;
  std::string target;
  std::string action = "trivial-pi-over-Q";
  std::uint64_t field_modulus = 1;
  std::vector<std::uint64_t> field_gens;
};

void add_group_options(CLI::App* cmd, GroupArgs& g, bool with_action) {
  cmd->add_option("--group", g.group, "catalog name or JSON group file")->required()->envname("MALLE_GROUP");
  cmd->add_option("--target", g.target, "abelian normal subgroup T as ';'-separated cycles")
      ->envname("MALLE_TARGET");
  if (with_action) {
    cmd->add_option("--action", g.action, "twist preset, 'cyclotomic', or JSON action file")
        ->envname("MALLE_ACTION");
    cmd->add_option("--field-modulus", g.field_modulus, "base field: modulus of the cyclotomic image")
        ->envname("MALLE_FIELD_MODULUS");
    cmd->add_option("--field-gen", g.field_gens, "base field: generators of the cyclotomic image")
        ->envname("MALLE_FIELD_GEN");
  }
}

CyclotomicModel field_model(const GroupArgs& g) { return CyclotomicModel{g.field_modulus, g.field_gens}; }

json invariants_cmd(const GroupArgs& args) {
  const auto [name, G] = cli::resolve_group(args.group);
  const PermGroup T = cli::resolve_target(G, args.target);
  const CyclotomicModel K = field_model(args);
  const TwistGroup gamma = cli::resolve_action(args.action, G, T, K);
  const auto report = b_twisted(T, gamma);
  const auto lb = lower_bound_exponents(G, K);

  json orbits = json::array();
  for (const auto& orbit : report.orbits) {
    json o = json::array();
    for (const auto& point : orbit) o.push_back(cli::cycles(point));
    orbits.push_back(o);
  }
  json j;
  j["group"] = cli::group_json(name, G);
  j["target"] = cli::group_json("", T);
  j["action"] = {{"name", args.action}, {"exponent", gamma.exponent()}, {"order", gamma.order()}};
  j["field"] = {{"modulus", K.modulus}, {"generators", K.generators}};
  j["a"] = report.a;
  j["b"] = report.b;
  j["minimal_index_set"] = cli::cycles(report.minimal_set);
  j["orbits"] = orbits;
  j["burnside_b"] = cli::to_json(burnside_b(T, gamma));
  j["b_malle"] = b_malle(G, K);
  j["turkelli_B"] = turkelli_B(G, T, gamma);
  // B has only been cross-checked when the unit projection of gamma is all of (Z/e)^x.
  std::set<std::uint64_t> units;
  for (const auto& p : gamma.pairs()) units.insert(p.unit % gamma.exponent());
  std::uint64_t phi = 0;
  for (std::uint64_t u = 1; u <= gamma.exponent(); ++u) phi += std::gcd(u, gamma.exponent()) == 1;
  j["turkelli_B_unverified"] = units.size() != phi;
  j["lower_bound"] = {{"power_of_X", cli::to_json(lb.power_of_X)},
                      {"power_of_log", lb.power_of_log},
                      {"a", lb.a},
                      {"b", lb.b},
                      {"target", cli::group_json("", lb.T)}};
  return j;
}

struct LocalArgs {
  GroupArgs g;
  std::string conjugator = "()";
  std::uint64_t unit = 1;
  bool ramified = false;
  std::string ordering = "disc";
  std::vector<std::size_t> valuations;
};

json local_factor_cmd(const LocalArgs& args) {
  const auto [name, G] = cli::resolve_group(args.g.group);
  const PermGroup T = cli::resolve_target(G, args.g.target);
  LocalClass cls{Permutation::from_cycles(args.conjugator, G.degree()), args.unit, args.ramified};
  if (!G.contains(cls.conjugator)) throw ValidationError("conjugator is not in the group");
  const Ordering ord = parse_ordering(args.ordering);
  json j;
  j["group"] = cli::group_json(name, G);
  j["target"] = cli::group_json("", T);
  j["class"] = {{"conjugator", cls.conjugator.cycle_string()}, {"unit", cls.unit}, {"pi_ramified", cls.pi_ramified}};
  j["ordering"] = std::string(to_string(ord));
  if (cls.pi_ramified) {
    // No Euler factor where pi ramifies; only the valuation range.
    const auto caps = disc_caps(T, cls, args.valuations);
    j["caps"] = {{"lower_exponent", caps.lower_exponent}, {"upper_exponent", caps.upper_exponent}};
    return j;
  }
  const auto f = euler_factor(T, cls, ord);
  const auto sizes = cohomology_sizes(T, cls);
  j["factor"] = cli::factor_json(f);
  j["cohomology"] = {{"z1", sizes.z1},  {"b1", sizes.b1},       {"h0", sizes.h0},
                     {"h1", sizes.h1},  {"z1_ur", sizes.z1_ur}, {"h1_ur", sizes.h1_ur}};
  return j;
}

struct EulerArgs {
  GroupArgs g;
  std::string ordering = "disc";
  bool by_residue = false;
  std::string prime_bound = "1e5";
  std::string coeff_bound = "1e5";
  std::optional<double> s;
  std::size_t show = 30;
};

json euler_cmd(const EulerArgs& args) {
  const auto [name, G] = cli::resolve_group(args.g.group);
  const PermGroup T = cli::resolve_target(G, args.g.target);
  const TwistGroup gamma = cli::resolve_action(args.g.action, G, T, field_model(args.g));
  const Ordering ord = parse_ordering(args.ordering);
  const std::uint64_t P = cli::parse_bound(args.prime_bound, "--prime-bound");
  const std::uint64_t N = cli::parse_bound(args.coeff_bound, "--coeff-bound");

  auto family = family_from_twist(T, gamma, ord, args.by_residue);
  // Trivial action on a regular abelian T: the primes dividing |T| come
  // from the local hom counts.
  const bool trivial_pi = std::all_of(gamma.pairs().begin(), gamma.pairs().end(),
                                      [](const ActionPair& p) { return p.conjugator.is_identity(); });
  if (args.by_residue && trivial_pi && T.is_abelian() && T.is_transitive() && T.order() == T.degree()) {
    const auto A = abelian_structure(T);
    for (std::uint64_t p = 2; p <= T.order(); ++p) {
      if (T.order() % p == 0 && is_prime(p)) family.overrides[p] = local_count_factor(A, p, ord);
    }
  }
  const auto pole = aq_bq(family);
  const auto coeffs = expand(family, P, N);

  json j;
  j["group"] = cli::group_json(name, G);
  j["target"] = cli::group_json("", T);
  j["action"] = {{"name", args.g.action}, {"exponent", gamma.exponent()}, {"order", gamma.order()}};
  j["ordering"] = std::string(to_string(ord));
  j["pole"] = {{"a", cli::to_json(pole.a)}, {"b", cli::to_json(pole.b)}};
  json classes = json::array();
  for (const auto& c : family.classes) {
    classes.push_back({{"label", c.label}, {"factor", cli::factor_json(c.factor)}, {"weight", c.weight.str()},
                       {"residues", c.residues}});
  }
  j["classes"] = classes;
  json overrides = json::object();
  for (const auto& [p, f] : family.overrides) overrides[std::to_string(p)] = cli::factor_json(f);
  j["overrides"] = overrides;
  j["prime_bound"] = P;
  j["coeff_bound"] = N;
  json shown = json::array();
  for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(N, args.show); ++n) shown.push_back(coeffs.at(n).str());
  j["coefficients"] = shown;
  if (args.s) {
    json at = {{"s", *args.s}, {"partial_product", partial_product(family, *args.s, P)}};
    if (pole.a && *args.s * static_cast<double>(*pole.a) > 1) {
      at["zeta_factor_estimate"] = zeta_factor_estimate(family, *args.s, P);
    } else {
      at["zeta_factor_skipped"] = "needs s > 1/a";
    }
    j["at_s"] = at;
  }
  if (pole.a) {
    const double g = g_at_pole(family, P);
    const auto pred = delange_predict(*pole.a, pole.b, g);
    j["g_at_pole"] = g;
    j["prediction"] = {{"degenerate", pred.degenerate},
                       {"c", pred.c},
                       {"x_power", cli::to_json(pred.x_power)},
                       {"log_power", cli::to_json(pred.log_power)}};
    json rows = json::array();
    if (!pred.degenerate) {
      const auto grid = default_grid(N, 3, 1);
      for (const auto& r : partial_sum_compare(coeffs, pred, grid)) {
        rows.push_back({{"x", r.x}, {"actual", r.actual}, {"predicted", r.predicted}, {"ratio", r.ratio}});
      }
    }
    j["comparison"] = rows;
  } else {
    j["g_at_pole"] = nullptr;
    j["prediction"] = nullptr;
    j["comparison"] = json::array();
  }
  return j;
}

struct CountArgs {
  std::string group;
  std::string ordering = "disc";
  std::string X = "1e6";
  bool surjective = false;
  bool fields = false;
  std::uint64_t decades = 4;
  std::uint64_t per_decade = 4;
  std::string prime_cap = "1e7";
  std::string svg;
};

json count_cmd(const CountArgs& args) {
  const auto [name, G] = cli::resolve_group(args.group);
  const auto T = abelian_structure(G);
  const Ordering ord = parse_ordering(args.ordering);
  const auto grid = default_grid(cli::parse_bound(args.X, "--X"), args.decades, args.per_decade);
  CountOptions opt;
  opt.surjective_only = args.surjective;
  opt.fields = args.fields;
  opt.prime_cap = cli::parse_bound(args.prime_cap, "--prime-cap");
  const auto series = count(T, ord, grid, opt);

  std::optional<Fit> fit;
  json fit_json = nullptr;
  std::string fit_note;
  try {
    fit = fit_exponents(series);
    fit_json = {{"a_hat", fit->a_hat}, {"b_hat", fit->b_hat}, {"alpha", fit->alpha}, {"beta", fit->beta},
                {"gamma", fit->gamma}};
  } catch (const ValidationError& e) {
    fit_note = e.what();
  }
  json j;
  j["group"] = cli::group_json(name, G);
  j["invariant_factors"] = T.invariant_factors();
  j["ordering"] = series.ordering;
  j["surjective_only"] = series.surjective_only;
  j["fields"] = series.fields;
  j["grid"] = series.grid;
  j["counts"] = series.counts;
  j["fit"] = fit_json;
  if (!fit_note.empty()) j["fit_skipped"] = fit_note;
  j["predicted"] = {{"a", cli::to_json(series.predicted_a)}, {"b", cli::to_json(series.predicted_b)}};
  if (!args.svg.empty()) {
    std::ofstream svg(args.svg);
    if (!svg) throw ValidationError("cannot write " + args.svg);
    svg << cli::series_svg(series, fit, name + " " + series.ordering);
  }
  return j;
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw ValidationError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

json mobius_cmd(const std::string& shape_text) {
  FiniteAbelianGroup A(parse_list(shape_text));
  const auto nodes = cyclic_subgroups(A);
  if (nodes.size() > 400) throw CapExceeded("more than 400 cyclic subgroups");
  std::vector<ElementSet> sets;
  json subs = json::array();
  for (const auto& c : nodes) {
    sets.push_back(c.elements);
    subs.push_back({{"generator", A.element(c.generator)}, {"order", c.order}});
  }
  PosetMobiusOracle oracle(sets);
  json matrix = json::array();
  bool agrees = true;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const int m = mobius(nodes[i], nodes[k]);
      agrees = agrees && m == oracle(i, k);
      row.push_back(m);
    }
    matrix.push_back(row);
  }
  return {{"invariant_factors", A.invariant_factors()},
          {"order", A.order()},
          {"cyclic_subgroups", subs},
          {"mobius", matrix},
          {"oracle_agrees", agrees}};
}

struct WilesArgs {
  std::string input;
  std::vector<std::string> locals;
  std::uint64_t h0_T = 1;
  std::uint64_t h0_Tstar = 1;
};

json wiles_cmd(const WilesArgs& args) {
  std::vector<LocalSizes> locals;
  std::uint64_t h0T = args.h0_T, h0Ts = args.h0_Tstar;
  if (!args.input.empty()) {
    std::ifstream in(args.input);
    if (!in) throw ResolutionError("cannot open " + args.input);
    try {
      const json j = json::parse(in);
      for (const auto& l : j.at("locals")) locals.push_back({l.at("L").get<std::uint64_t>(), l.at("H0").get<std::uint64_t>()});
      h0T = j.value("H0_T", h0T);
      h0Ts = j.value("H0_Tstar", h0Ts);
    } catch (const json::exception& e) {
      throw ValidationError(args.input + ": " + e.what());
    }
  }
  for (const auto& l : args.locals) {
    const auto slash = l.find('/');
    if (slash == std::string::npos) throw ValidationError("--local takes L/H0, got '" + l + "'");
    try {
      locals.push_back({std::stoull(l.substr(0, slash)), std::stoull(l.substr(slash + 1))});
    } catch (const std::exception&) {
      throw ValidationError("--local takes L/H0, got '" + l + "'");
    }
  }
  json ls = json::array();
  for (const auto& l : locals) ls.push_back({{"L", l.L_size}, {"H0", l.H0_size}});
  return {{"locals", ls}, {"H0_T", h0T}, {"H0_Tstar", h0Ts}, {"rhs", cli::to_json(wiles_rhs(locals, h0T, h0Ts))}};
}

int verify_cmd(const std::string& suite, const std::string& filter, json& report, std::ostream& out,
               std::ostream& err) {
  const auto results = cli::verify_suite(suite, filter);
  std::size_t failed = 0;
  json cases = json::array();
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << suite << " " << r.name << "  " << r.detail << "\n";
    failed += !r.pass;
    cases.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  if (results.empty()) err << "warning: no cases matched filter '" << filter << "'\n";
  out << suite << ": " << results.size() - failed << " passed, " << failed << " failed\n";
  report = {{"suite", suite}, {"filter", filter}, {"cases", cases}, {"passed", results.size() - failed},
            {"failed", failed}};
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Malle invariants, local Euler factors, Selmer tools and abelian counts"};
  app.name("malle");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "key=value configuration file");
  std::string json_path;
  app.add_option("--json", json_path, "also write the JSON result to this file")->envname("MALLE_JSON");

  GroupArgs inv;
  auto* c_inv = app.add_subcommand("invariants", "a(T), b(K, T(pi)), b(K, G), B and the lower bound");
  add_group_options(c_inv, inv, true);

  LocalArgs loc;
  auto* c_loc = app.add_subcommand("local-factor", "Euler factor and cohomology sizes for one local class");
  add_group_options(c_loc, loc.g, false);
  c_loc->add_option("--conjugator", loc.conjugator, "pi(Fr) as cycles")->envname("MALLE_CONJUGATOR");
  c_loc->add_option("--unit", loc.unit, "cyclotomic unit of the class")->envname("MALLE_UNIT");
  c_loc->add_flag("--ramified", loc.ramified, "pi ramified at the place (irregular)");
  c_loc->add_option("--valuation", loc.valuations, "attainable discriminant valuation at a ramified place");
  c_loc->add_option("--ordering", loc.ordering, "disc or ram")->envname("MALLE_ORDERING");

  EulerArgs eul;
  auto* c_eul = app.add_subcommand("euler", "Frobenian family, pole data, coefficients and Delange prediction");
  add_group_options(c_eul, eul.g, true);
  c_eul->add_option("--ordering", eul.ordering, "disc or ram")->envname("MALLE_ORDERING");
  c_eul->add_flag("--by-residue", eul.by_residue, "classify primes by residue mod exp(T)");
  c_eul->add_option("--prime-bound", eul.prime_bound, "P")->envname("MALLE_PRIME_BOUND");
  c_eul->add_option("--coeff-bound", eul.coeff_bound, "N")->envname("MALLE_COEFF_BOUND");
  c_eul->add_option("--s", eul.s, "evaluate the partial and regularized products at s");
  c_eul->add_option("--show", eul.show, "number of leading coefficients to print");

  CountArgs cnt;
  auto* c_cnt = app.add_subcommand("count", "count homs G_Q -> T by discriminant or ramified product");
  c_cnt->add_option("--group", cnt.group, "abelian catalog name or JSON group file")->required()->envname("MALLE_GROUP");
  c_cnt->add_option("--ordering", cnt.ordering, "disc or ram")->envname("MALLE_ORDERING");
  c_cnt->add_option("--X", cnt.X, "largest bound (counts are of values < X)")->envname("MALLE_X");
  c_cnt->add_flag("--surjective", cnt.surjective, "surjections only, by Moebius sieve");
  c_cnt->add_flag("--fields", cnt.fields, "divide surjection counts by |Aut(T)|");
  c_cnt->add_option("--decades", cnt.decades, "grid span below X")->envname("MALLE_DECADES");
  c_cnt->add_option("--per-decade", cnt.per_decade, "grid points per decade")->envname("MALLE_PER_DECADE");
  c_cnt->add_option("--prime-cap", cnt.prime_cap, "refuse to sieve primes past this")
      ->envname("MALLE_PRIME_CAP");
  c_cnt->add_option("--svg", cnt.svg, "write a log-log plot of the series");

  std::string shape = "60";
  auto* c_mob = app.add_subcommand("mobius", "Moebius function on the cyclic subgroups of a finite abelian group");
  c_mob->add_option("--shape", shape, "invariant factors, comma separated")->envname("MALLE_SHAPE");

  WilesArgs wil;
  auto* c_wil = app.add_subcommand("wiles-eval", "right-hand side of the Greenberg-Wiles formula");
  c_wil->add_option("--input", wil.input, "JSON file {locals: [{L, H0}], H0_T, H0_Tstar}");
  c_wil->add_option("--local", wil.locals, "L/H0 for one place");
  c_wil->add_option("--h0-t", wil.h0_T, "|H^0(K, T)|");
  c_wil->add_option("--h0-tstar", wil.h0_Tstar, "|H^0(K, T*)|");

  std::string suite, filter;
  auto* c_ver = app.add_subcommand("verify", "run a cross-check suite over the catalog");
  c_ver->add_option("suite", suite, "mblocal, mobius, burnside or sieve")->required();
  c_ver->add_option("--filter", filter, "only cases whose name contains this")->envname("MALLE_FILTER");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    json result;
    int code = kExitOk;
    if (*c_inv) {
      result = invariants_cmd(inv);
    } else if (*c_loc) {
      result = local_factor_cmd(loc);
    } else if (*c_eul) {
      result = euler_cmd(eul);
    } else if (*c_cnt) {
      result = count_cmd(cnt);
    } else if (*c_mob) {
      result = mobius_cmd(shape);
    } else if (*c_wil) {
      result = wiles_cmd(wil);
    } else if (*c_ver) {
      code = verify_cmd(suite, filter, result, out, err);
      if (!json_path.empty()) write_file(json_path, cli::render(result));
      return code;
    }
    const std::string text = cli::render(result);
    out << text;
    if (!json_path.empty()) write_file(json_path, text);
    return code;
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResolution;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace malle
