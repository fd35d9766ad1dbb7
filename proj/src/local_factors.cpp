#include "malle/local_factors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "malle/error.hpp"

namespace malle {

Ordering parse_ordering(std::string_view text) {
  if (text == "disc" || text == "disc_pi" || text == "disc-pi") return Ordering::disc_pi;
  if (text == "ram" || text == "ram_pi" || text == "ram-pi") return Ordering::ram_pi;
  throw ValidationError("unknown ordering '" + std::string(text) + "' (expected disc or ram)");
}

std::string_view to_string(Ordering o) { return o == Ordering::disc_pi ? "disc" : "ram"; }

void require_regular(const PermGroup& T, const LocalClass& cls) {
  if (cls.pi_ramified) throw ValidationError("irregular class: only disc_caps applies where pi ramifies");
  if (!T.is_abelian()) throw ValidationError("local enumeration supports abelian T only");
  if (cls.conjugator.degree() != T.degree()) throw ValidationError("class conjugator has the wrong degree");
  if (!T.is_normalized_by(cls.conjugator)) throw ValidationError("class conjugator does not normalize T");
  if (std::gcd(cls.unit, T.exponent()) != 1) {
    throw ValidationError("class unit " + std::to_string(cls.unit) + " is not coprime to exponent(T)");
  }
}

namespace {

// t with c_g(t) = t^m
std::vector<Permutation> tau_solutions(const PermGroup& T, const LocalClass& cls) {
  std::vector<Permutation> out;
  const auto m = static_cast<std::int64_t>(cls.unit % T.exponent());
  for (const auto& t : T.elements()) {
    if (conjugate(cls.conjugator, t) == t.pow(m)) out.push_back(t);
  }
  return out;
}

std::size_t weight(const Permutation& t, Ordering ordering) {
  if (ordering == Ordering::disc_pi) return t.ind();
  return t.is_identity() ? 0 : 1;
}

}  // namespace

std::vector<Cocycle> z1_enumerate(const PermGroup& T, const LocalClass& cls) {
  require_regular(T, cls);
  std::vector<Cocycle> out;
  for (const auto& t : tau_solutions(T, cls)) {
    for (const auto& y : T.elements()) out.push_back({t, y});
  }
  return out;
}

CohomologySizes cohomology_sizes(const PermGroup& T, const LocalClass& cls) {
  require_regular(T, cls);
  CohomologySizes s;
  const std::uint64_t order = T.order();
  s.z1 = tau_solutions(T, cls).size() * order;
  s.h0 = static_cast<std::uint64_t>(std::count_if(T.elements().begin(), T.elements().end(), [&](const auto& t) {
    return conjugate(cls.conjugator, t) == t;
  }));
  if (order % s.h0 != 0) throw InternalError("|H^0| does not divide |T|");
  s.b1 = order / s.h0;
  if (s.z1 % s.b1 != 0) throw InternalError("|B^1| does not divide |Z^1|");
  s.h1 = s.z1 / s.b1;
  s.z1_ur = order;
  s.h1_ur = s.h0;
  return s;
}

EulerFactor euler_factor(const PermGroup& T, const LocalClass& cls, Ordering ordering) {
  require_regular(T, cls);
  // Each admissible tau image pairs with all |T| Frobenius images, so the
  // 1/|T| normalization cancels exactly.
  EulerFactor f;
  for (const auto& t : tau_solutions(T, cls)) f.add(weight(t, ordering), Rational(1));
  return f;
}

LocalClass local_class(const ActionPair& p) { return {p.conjugator, p.unit, false}; }

DiscCaps disc_caps(const PermGroup& T, const LocalClass& cls, std::span<const std::size_t> valuations) {
  if (cls.conjugator.degree() != T.degree()) throw ValidationError("class conjugator has the wrong degree");
  if (valuations.empty()) throw ValidationError("disc_caps needs at least one attainable valuation");
  auto [lo, hi] = std::minmax_element(valuations.begin(), valuations.end());
  return {*lo, *hi};
}

}  // namespace malle
