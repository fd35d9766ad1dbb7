#include "verify.hpp"

#include <sstream>

#include "malle/catalog.hpp"
#include "malle/counting.hpp"
#include "malle/dirichlet.hpp"
#include "malle/error.hpp"
#include "malle/invariants.hpp"
#include "malle/selmer.hpp"

namespace malle::cli {

namespace {

std::string pair_str(const std::optional<std::size_t>& a, const Rational& b) {
  return "(" + (a ? std::to_string(*a) : std::string("inf")) + ", " + b.str() + ")";
}

template <class F>
void each_case(const std::string& filter, std::vector<CaseResult>& out, F f) {
  for (const auto& entry : catalog()) {
    for (const auto& T : abelian_normal_targets(entry.group)) {
      for (const auto& preset : preset_names(entry.group, T)) {
        const std::string name = entry.name + "/T" + std::to_string(T.order()) + "/" + preset;
        if (name.find(filter) == std::string::npos) continue;
        out.push_back(f(name, entry.group, T, twist_preset(preset, entry.group, T)));
      }
    }
  }
}

std::string shape_name(const std::vector<std::uint64_t>& shape) {
  std::string s = "Z";
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "xZ/" : "/") + std::to_string(shape[i]);
  return shape.empty() ? "Z/1" : s;
}

std::vector<std::vector<std::uint64_t>> shapes_up_to(std::uint64_t n) {
  std::vector<std::vector<std::uint64_t>> out{{}}, frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& s : frontier) {
      std::uint64_t order = 1;
      for (auto d : s) order *= d;
      const std::uint64_t last = s.empty() ? 1 : s.back();
      for (std::uint64_t d = std::max<std::uint64_t>(2, last); order * d <= n; d += last) {
        auto t = s;
        t.push_back(d);
        out.push_back(t);
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<CaseResult> verify_suite(const std::string& suite, const std::string& filter) {
  std::vector<CaseResult> out;
  if (suite == "mblocal") {
    each_case(filter, out, [](const std::string& name, const PermGroup&, const PermGroup& T, const TwistGroup& g) {
      const std::optional<std::size_t> a = a_invariant(T);
      const Rational b(static_cast<std::int64_t>(b_twisted(T, g).b));
      const auto pole = aq_bq(family_from_twist(T, g, Ordering::disc_pi));
      const auto inv = ab_inv(trivial_condition_family(T, g, Ordering::disc_pi));
      std::ostringstream d;
      d << "invariants " << pair_str(a, b) << " aq_bq " << pair_str(pole.a, pole.b) << " ab_inv "
        << pair_str(inv.a_inv, inv.b_inv);
      const bool ok = pole.a == a && pole.b == b && inv.a_inv == a && inv.b_inv == b;
      return CaseResult{name, ok, d.str()};
    });
  } else if (suite == "burnside") {
    each_case(filter, out, [](const std::string& name, const PermGroup& G, const PermGroup& T, const TwistGroup& g) {
      const auto b = b_twisted(T, g).b;
      const Rational avg = burnside_b(T, g);
      const auto B = turkelli_B(G, T, g);
      std::ostringstream d;
      d << "orbits " << b << " burnside " << avg.str() << " B " << B;
      return CaseResult{name, avg == Rational(static_cast<std::int64_t>(b)) && B == b, d.str()};
    });
  } else if (suite == "mobius") {
    for (const auto& shape : shapes_up_to(60)) {
      const std::string name = shape_name(shape);
      if (name.find(filter) == std::string::npos) continue;
      FiniteAbelianGroup A(shape);
      auto nodes = cyclic_subgroups(A);
      std::vector<ElementSet> sets;
      for (const auto& c : nodes) sets.push_back(c.elements);
      PosetMobiusOracle oracle(sets);
      std::size_t bad = 0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < nodes.size(); ++j) bad += mobius(nodes[i], nodes[j]) != oracle(i, j);
      }
      out.push_back({name, bad == 0,
                     std::to_string(nodes.size()) + " cyclic subgroups, " + std::to_string(bad) + " mismatches"});
    }
  } else if (suite == "sieve") {
    for (const auto& entry : catalog()) {
      if (!entry.group.is_abelian()) continue;
      const auto T = abelian_structure(entry.group);
      for (auto ord : {Ordering::disc_pi, Ordering::ram_pi}) {
        const std::string name = entry.name + "/" + std::string(to_string(ord));
        if (name.find(filter) == std::string::npos) continue;
        const std::uint64_t bound = ord == Ordering::disc_pi ? 2000 : 200;
        const auto sieved = value_histogram(T, ord, bound, true);
        const auto direct = reference::enumerate_histogram(T, ord, bound, true);
        std::int64_t total = 0;
        for (const auto& [v, c] : direct) total += c;
        std::ostringstream d;
        d << total << " surjections below " << bound;
        if (sieved != direct) {
          for (const auto& [v, c] : direct) {
            auto it = sieved.find(v);
            const std::int64_t got = it == sieved.end() ? 0 : it->second;
            if (got != c) {
              d << "; first diff at " << v << ": sieve " << got << " direct " << c;
              break;
            }
          }
        }
        out.push_back({name, sieved == direct, d.str()});
      }
    }
  } else {
    throw ResolutionError("unknown verify suite '" + suite + "' (mblocal, mobius, burnside, sieve)");
  }
  return out;
}

}  // namespace malle::cli
