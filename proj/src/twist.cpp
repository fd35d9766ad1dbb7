#include "malle/twist.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <string>
#include <unordered_map>

#include "malle/error.hpp"

namespace malle {

std::uint64_t inverse_mod(std::uint64_t u, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = static_cast<std::int64_t>(u % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw ValidationError(std::to_string(u) + " is not a unit modulo " + std::to_string(m));
  std::int64_t mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

std::vector<std::uint64_t> unit_residues(std::uint64_t m) {
  if (m == 0) throw ValidationError("modulus 0");
  if (m == 1) return {0};
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 1; u < m; ++u) {
    if (std::gcd(u, m) == 1) out.push_back(u);
  }
  return out;
}

Permutation act(const ActionPair& p, const Permutation& t, std::uint64_t exponent) {
  auto k = inverse_mod(p.unit, exponent);
  return conjugate(p.conjugator, t.pow(static_cast<std::int64_t>(k)));
}

TwistGroup::TwistGroup(std::size_t degree, std::uint64_t exponent, std::vector<ActionPair> generators,
                       std::size_t closure_cap)
    : degree_(degree), exponent_(exponent) {
  if (degree == 0) throw ValidationError("twist group of degree 0");
  if (exponent == 0) throw ValidationError("twist exponent must be positive");
  for (auto& g : generators) {
    if (g.conjugator.degree() != degree) throw ValidationError("conjugator degree does not match");
    g.unit %= exponent;
    if (std::gcd(g.unit, exponent) != 1) {
      throw ValidationError("unit " + std::to_string(g.unit) + " is not coprime to " + std::to_string(exponent));
    }
    generators_.push_back(std::move(g));
  }

  std::vector<ActionPair> frontier{identity()};
  index_.emplace(frontier.front(), 0);
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (const auto& g : generators_) {
      ActionPair next = compose(frontier[i], g);
      if (index_.contains(next)) continue;
      if (frontier.size() >= closure_cap) {
        throw CapExceeded("twist group closure exceeds cap of " + std::to_string(closure_cap));
      }
      index_.emplace(next, frontier.size());
      frontier.push_back(std::move(next));
    }
  }
  std::sort(frontier.begin(), frontier.end());
  pairs_ = std::move(frontier);
  for (std::size_t i = 0; i < pairs_.size(); ++i) index_[pairs_[i]] = i;
}

bool TwistGroup::contains(const ActionPair& p) const { return index_.contains(p); }

ActionPair TwistGroup::compose(const ActionPair& p, const ActionPair& q) const {
  return {p.conjugator * q.conjugator, (p.unit * q.unit) % exponent_};
}

Permutation TwistGroup::act(const ActionPair& p, const Permutation& t) const { return malle::act(p, t, exponent_); }

std::vector<std::uint64_t> TwistGroup::unit_projection() const {
  std::set<std::uint64_t> units;
  for (const auto& p : pairs_) units.insert(p.unit);
  return {units.begin(), units.end()};
}

CayleyTable TwistGroup::cayley_table() const {
  const std::size_t n = pairs_.size();
  if (n > 4 * kSubgroupEnumerationCap) {
    throw CapExceeded("Cayley table requested for a twist group of order " + std::to_string(n));
  }
  CayleyTable table;
  table.order = n;
  table.identity = static_cast<std::uint32_t>(index_.at(identity()));
  table.mul.resize(n * n);
  table.inv.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto c = static_cast<std::uint32_t>(index_.at(compose(pairs_[a], pairs_[b])));
      table.mul[a * n + b] = c;
      if (c == table.identity) table.inv[a] = static_cast<std::uint32_t>(b);
    }
  }
  return table;
}

TwistGroup TwistGroup::subgroup(const ElementSet& members) const {
  std::vector<ActionPair> gens;
  TwistGroup current = trivial(degree_, exponent_);
  for (std::size_t i = members.find_first(); i != ElementSet::npos; i = members.find_next(i)) {
    if (current.contains(pairs_[i])) continue;
    gens.push_back(pairs_[i]);
    current = TwistGroup(degree_, exponent_, gens);
  }
  if (current.order() != members.count()) throw InternalError("element set is not a subgroup");
  return current;
}

void require_acts_on(const TwistGroup& gamma, const PermGroup& T) {
  if (gamma.degree() != T.degree()) throw ValidationError("twist group and T have different degrees");
  if (gamma.exponent() % T.exponent() != 0) {
    throw ValidationError("twist exponent " + std::to_string(gamma.exponent()) + " is not a multiple of exponent(T) = " +
                          std::to_string(T.exponent()));
  }
  for (const auto& g : gamma.generators()) {
    if (!T.is_normalized_by(g.conjugator)) {
      throw ValidationError("conjugator " + g.conjugator.cycle_string() + " does not normalize T");
    }
  }
}

namespace {

// Points of the action and an element -> point lookup.
struct PointSet {
  std::vector<ActionPoint> points;
  std::unordered_map<Permutation, std::size_t, PermutationHash> where;
};

PointSet split_points(const PermGroup& T, std::span<const Permutation> S, bool by_conjugacy) {
  PointSet ps;
  std::vector<Permutation> members(S.begin(), S.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const auto& s : members) {
    if (!T.contains(s)) throw ValidationError(s.cycle_string() + " is not an element of T");
    if (ps.where.contains(s)) continue;
    ActionPoint point{s};
    if (by_conjugacy) {
      for (std::size_t k = 0; k < point.size(); ++k) {
        for (const auto& g : T.generators()) {
          Permutation c = conjugate(g, point[k]);
          if (std::find(point.begin(), point.end(), c) == point.end()) point.push_back(std::move(c));
        }
      }
      std::sort(point.begin(), point.end());
    }
    for (const auto& m : point) {
      if (!std::binary_search(members.begin(), members.end(), m)) {
        throw ValidationError("S is not a union of T-conjugacy classes");
      }
      ps.where.emplace(m, ps.points.size());
    }
    ps.points.push_back(std::move(point));
  }
  return ps;
}

std::size_t image_point(const TwistGroup& gamma, const ActionPair& p, const PointSet& ps, std::size_t i) {
  auto it = ps.where.find(gamma.act(p, ps.points[i].front()));
  if (it == ps.where.end()) throw ValidationError("S is not closed under the twisted action");
  return it->second;
}

}  // namespace

std::vector<Orbit> orbits(const TwistGroup& gamma, const PermGroup& T, std::span<const Permutation> S,
                          bool by_conjugacy) {
  require_acts_on(gamma, T);
  PointSet ps = split_points(T, S, by_conjugacy);
  std::vector<bool> seen(ps.points.size(), false);
  std::vector<Orbit> out;
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> queue{i};
    seen[i] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (const auto& g : gamma.generators()) {
        auto j = image_point(gamma, g, ps, queue[k]);
        if (!seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    Orbit orbit;
    for (auto j : queue) orbit.push_back(ps.points[j]);
    out.push_back(std::move(orbit));
  }
  return out;
}

std::size_t fixed_point_count(const TwistGroup& gamma, const ActionPair& p, std::span<const Permutation> S) {
  return static_cast<std::size_t>(
      std::count_if(S.begin(), S.end(), [&](const Permutation& t) { return gamma.act(p, t) == t; }));
}

std::size_t fixed_class_count(const TwistGroup& gamma, const ActionPair& p, const PermGroup& T,
                              std::span<const Permutation> S) {
  PointSet ps = split_points(T, S, true);
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    if (image_point(gamma, p, ps, i) == i) ++fixed;
  }
  return fixed;
}

}  // namespace malle
