#include "malle/invariants.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <optional>

#include "malle/error.hpp"

namespace malle {

std::size_t a_invariant(const PermGroup& T) {
  if (T.is_trivial()) throw ValidationError("a(T) is undefined for trivial T");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& t : T.elements()) {
    if (!t.is_identity()) best = std::min(best, t.ind());
  }
  return best;
}

std::vector<Permutation> minimal_index_set(const PermGroup& T) {
  const std::size_t a = a_invariant(T);
  std::vector<Permutation> out;
  for (const auto& t : T.elements()) {
    if (!t.is_identity() && t.ind() == a) out.push_back(t);
  }
  return out;
}

InvariantReport b_twisted(const PermGroup& T, const TwistGroup& gamma) {
  InvariantReport report;
  report.a = a_invariant(T);
  report.minimal_set = minimal_index_set(T);
  report.orbits = orbits(gamma, T, report.minimal_set, true);
  report.b = report.orbits.size();
  return report;
}

Rational burnside_b(const PermGroup& T, const TwistGroup& gamma) {
  require_acts_on(gamma, T);
  auto A = minimal_index_set(T);
  std::int64_t fixed = 0;
  for (const auto& p : gamma.pairs()) fixed += static_cast<std::int64_t>(fixed_class_count(gamma, p, T, A));
  return Rational(fixed, static_cast<std::int64_t>(gamma.order()));
}

std::size_t b_malle(const PermGroup& G, const CyclotomicModel& K) {
  // {1} x units acts by g -> g^(u^-1); inverting inside a group gives the
  // same orbits as g -> g^u.
  return b_twisted(G, cyclotomic_twist(G.degree(), G.exponent(), K)).b;
}

namespace detail {

std::vector<PermGroup> turkelli_levels(const PermGroup& G, const PermGroup& T) {
  if (!T.is_abelian() || !T.is_normal_in(G)) throw ValidationError("turkelli_B needs T abelian and normal in G");
  const std::size_t a = a_invariant(T);
  std::vector<PermGroup> out;
  for (auto& n : subgroups(T)) {
    if (n.is_trivial() || !n.is_normal_in(G)) continue;
    if (a_invariant(n) == a) out.push_back(std::move(n));
  }
  return out;
}

std::size_t best_lift(const PermGroup& N, const TwistGroup& gamma) {
  const std::uint64_t one = 1 % gamma.exponent();
  std::vector<ActionPair> gens = gamma.generators();
  for (const auto& n : N.generators()) gens.push_back({n, one});
  TwistGroup W(gamma.degree(), gamma.exponent(), std::move(gens));

  auto table = W.cayley_table();
  std::vector<bool> in_N(W.order());
  for (std::size_t i = 0; i < W.order(); ++i) {
    const auto& p = W.pairs()[i];
    in_N[i] = p.unit == one && N.contains(p.conjugator);
  }
  std::size_t best = 0;
  for (const auto& sub : enumerate_subgroups(table)) {
    std::size_t meet = 0;
    for (auto i = sub.elements.find_first(); i != ElementSet::npos; i = sub.elements.find_next(i)) {
      if (in_N[i]) ++meet;
    }
    // |sub (N x 1)| == |W|
    if (sub.order() * N.order() != W.order() * meet) continue;
    best = std::max(best, b_twisted(N, W.subgroup(sub.elements)).b);
  }
  return best;
}

}  // namespace detail

std::size_t turkelli_B(const PermGroup& G, const PermGroup& T, const TwistGroup& gamma) {
  require_acts_on(gamma, T);
  for (const auto& p : gamma.generators()) {
    if (!G.contains(p.conjugator)) throw ValidationError("twist conjugator is not an element of G");
  }
  const auto levels = detail::turkelli_levels(G, T);
  std::size_t best = 0;
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(levels.size());
#pragma omp parallel for schedule(dynamic, 1) reduction(max : best)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      best = std::max(best, detail::best_lift(levels[static_cast<std::size_t>(i)], gamma));
    } catch (...) {
#pragma omp critical(malle_turkelli_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return best;
}

LowerBound lower_bound_exponents(const PermGroup& G, const CyclotomicModel& K) {
  auto targets = abelian_normal_targets(G);
  if (targets.empty()) throw ValidationError("G has no nontrivial abelian normal subgroup");
  std::optional<LowerBound> best;
  for (auto& T : targets) {
    const std::uint64_t e = T.exponent();
    const auto units = K.units_mod(e);
    std::vector<ActionPair> gens;
    for (const auto& g : G.generators()) gens.push_back({g, 1 % e});
    for (auto u : units) gens.push_back({Permutation::identity(G.degree()), u});
    TwistGroup full(G.degree(), e, std::move(gens));

    auto table = full.cayley_table();
    std::size_t b = 0;
    for (const auto& sub : enumerate_subgroups(table)) {
      if (sub.order() < G.order()) continue;
      auto gamma = full.subgroup(sub.elements);
      std::vector<Permutation> conj;
      for (const auto& p : gamma.pairs()) conj.push_back(p.conjugator);
      std::sort(conj.begin(), conj.end());
      conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
      if (conj.size() != G.order() || gamma.unit_projection() != units) continue;
      b = std::max(b, b_twisted(T, gamma).b);
    }
    const std::size_t a = a_invariant(T);
    LowerBound candidate{Rational(1, static_cast<std::int64_t>(a)), static_cast<std::int64_t>(b) - 1, T, a, b};
    if (!best || candidate.power_of_X > best->power_of_X ||
        (candidate.power_of_X == best->power_of_X && candidate.power_of_log > best->power_of_log)) {
      best = std::move(candidate);
    }
  }
  return *best;
}

}  // namespace malle
