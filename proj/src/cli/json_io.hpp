#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "malle/catalog.hpp"
#include "malle/counting.hpp"
#include "malle/dirichlet.hpp"
#include "malle/perm_group.hpp"
#include "malle/rational.hpp"
#include "malle/twist.hpp"

namespace malle::cli {

using nlohmann::json;

struct NamedGroup {
  std::string name;
  PermGroup group;
};

// Catalog name, or a JSON file {"degree": n, "generators": [...]} where a
// generator is a cycle string or a list of 1-based images.
NamedGroup resolve_group(const std::string& ref);

// Semicolon-separated generators, or the default target: G itself when
// abelian, otherwise its largest abelian normal subgroup.
PermGroup resolve_target(const PermGroup& G, const std::string& spec);

// Preset name, "cyclotomic" for {1} x image(chi) over the field model, or a
// JSON file {"exponent": e, "pairs": [{"conjugator": "...", "unit": u}]}.
TwistGroup resolve_action(const std::string& ref, const PermGroup& G, const PermGroup& T,
                          const CyclotomicModel& K);

std::uint64_t parse_bound(const std::string& text, const char* what);

json to_json(const Rational& r);
json to_json(const std::optional<std::size_t>& a);
json cycles(std::span<const Permutation> perms);
json group_json(const std::string& name, const PermGroup& G);
json factor_json(const EulerFactor& f);

// Pretty-printed with sorted keys and a trailing newline.
std::string render(const json& j);

// Log-log plot of a count series with its fitted curve.
std::string series_svg(const CountSeries& series, const std::optional<Fit>& fit, const std::string& title);

}  // namespace malle::cli
