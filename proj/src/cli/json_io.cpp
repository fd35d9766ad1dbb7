#include "json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "malle/error.hpp"

namespace malle::cli {

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResolutionError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Permutation parse_generator(const json& g, std::size_t degree) {
  if (g.is_string()) return Permutation::from_cycles(g.get<std::string>(), degree);
  if (g.is_array()) {
    auto images = g.get<std::vector<std::int64_t>>();
    if (images.size() != degree) throw ValidationError("generator has the wrong degree");
    return Permutation::from_one_based(images);
  }
  throw ValidationError("a generator is a cycle string or a list of images");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
  }
  return out;
}

}  // namespace

NamedGroup resolve_group(const std::string& ref) {
  for (const auto& e : catalog()) {
    if (e.name == ref) return {e.name, e.group};
  }
  if (!std::filesystem::is_regular_file(ref)) {
    throw ResolutionError("'" + ref + "' is neither a catalog group nor a readable file");
  }
  const json j = read_json_file(ref);
  try {
    const auto degree = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators")) gens.push_back(parse_generator(g, degree));
    return {std::filesystem::path(ref).stem().string(), PermGroup(degree, gens)};
  } catch (const json::exception& e) {
    throw ValidationError(ref + ": " + e.what());
  }
}

PermGroup resolve_target(const PermGroup& G, const std::string& spec) {
  if (spec.empty()) {
    if (G.is_abelian()) return G;
    auto targets = abelian_normal_targets(G);
    if (targets.empty()) throw ValidationError("group has no nontrivial abelian normal subgroup");
    return targets.back();
  }
  std::vector<Permutation> gens;
  for (const auto& g : split(spec, ';')) gens.push_back(Permutation::from_cycles(g, G.degree()));
  PermGroup T(G.degree(), gens);
  if (!T.is_abelian()) throw ValidationError("target must be abelian");
  if (!T.is_normal_in(G)) throw ValidationError("target must be a normal subgroup of the group");
  return T;
}

TwistGroup resolve_action(const std::string& ref, const PermGroup& G, const PermGroup& T,
                          const CyclotomicModel& K) {
  if (ref == "cyclotomic") return cyclotomic_twist(G.degree(), T.exponent(), K);
  if (!std::filesystem::is_regular_file(ref)) return twist_preset(ref, G, T);
  const json j = read_json_file(ref);
  try {
    const std::uint64_t e = j.contains("exponent") ? j.at("exponent").get<std::uint64_t>() : T.exponent();
    std::vector<ActionPair> gens;
    for (const auto& p : j.at("pairs")) {
      gens.push_back({Permutation::from_cycles(p.at("conjugator").get<std::string>(), G.degree()),
                      p.at("unit").get<std::uint64_t>()});
    }
    TwistGroup gamma(G.degree(), e, gens);
    require_acts_on(gamma, T);
    return gamma;
  } catch (const json::exception& e) {
    throw ValidationError(ref + ": " + e.what());
  }
}

std::uint64_t parse_bound(const std::string& text, const char* what) {
  std::size_t used = 0;
  long double v = 0;
  try {
    v = std::stold(text, &used);
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + " must be a number, got '" + text + "'");
  }
  if (used != text.size() || !(v >= 1) || v > 1e18L || std::floor(v) != v) {
    throw ValidationError(std::string(what) + " must be an integer in [1, 1e18], got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const std::optional<std::size_t>& a) { return a ? json(*a) : json(nullptr); }

json cycles(std::span<const Permutation> perms) {
  json out = json::array();
  for (const auto& p : perms) out.push_back(p.cycle_string());
  return out;
}

json group_json(const std::string& name, const PermGroup& G) {
  json j;
  if (!name.empty()) j["name"] = name;
  j["degree"] = G.degree();
  j["order"] = G.order();
  j["generators"] = cycles(G.generators());
  return j;
}

json factor_json(const EulerFactor& f) {
  json c = json::object();
  for (const auto& [k, v] : f.coefficients()) c[std::to_string(k)] = v.str();
  return {{"text", f.str()}, {"coefficients", c}};
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

std::string series_svg(const CountSeries& series, const std::optional<Fit>& fit, const std::string& title) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    if (series.counts[i] == 0) continue;
    pts.push_back({std::log10(static_cast<double>(series.grid[i])), std::log10(static_cast<double>(series.counts[i]))});
  }
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << title << "</text>\n";
  if (pts.empty()) {
    s << "</svg>\n";
    return s.str();
  }
  double x0 = pts.front().first, x1 = pts.back().first, y0 = pts.front().second, y1 = pts.front().second;
  for (const auto& [x, y] : pts) {
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 - x0 < 1e-9) x1 = x0 + 1;
  if (y1 - y0 < 1e-9) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">log10 X</text>\n";
  s << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
    << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">log10 N(X)</text>\n";
  for (const auto& [x, y] : pts) {
    s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  if (fit) {
    s << "<polyline fill=\"none\" stroke=\"firebrick\" points=\"";
    for (int i = 0; i <= 64; ++i) {
      const double x = x0 + (x1 - x0) * i / 64.0;
      const double lx = x * std::log(10.0);
      const double ly = fit->alpha * lx + fit->beta * std::log(lx) + fit->gamma;
      s << px(x) << "," << py(ly / std::log(10.0)) << " ";
    }
    s << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace malle::cli
