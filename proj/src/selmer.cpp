#include "malle/selmer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "malle/error.hpp"

namespace malle {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint64_t> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  order_ = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw ValidationError("invariant factors must exceed 1");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
      throw ValidationError("invariant factors must divide each other in order");
    }
    if (order_ > kOrderCap / factors_[i]) {
      throw CapExceeded("finite abelian group larger than " + std::to_string(kOrderCap));
    }
    order_ *= factors_[i];
  }
}

std::uint64_t FiniteAbelianGroup::index(const Element& x) const {
  if (x.size() != factors_.size()) throw ValidationError("element has the wrong number of coordinates");
  std::uint64_t idx = 0;
  for (std::size_t i = factors_.size(); i-- > 0;) idx = idx * factors_[i] + x[i] % factors_[i];
  return idx;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::element(std::uint64_t index) const {
  Element x(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    x[i] = index % factors_[i];
    index /= factors_[i];
  }
  return x;
}

std::uint64_t FiniteAbelianGroup::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t idx = 0, stride = 1;
  for (auto d : factors_) {
    idx += ((a % d + b % d) % d) * stride;
    a /= d;
    b /= d;
    stride *= d;
  }
  return idx;
}

std::uint64_t FiniteAbelianGroup::negate(std::uint64_t a) const {
  std::uint64_t idx = 0, stride = 1;
  for (auto d : factors_) {
    idx += ((d - a % d) % d) * stride;
    a /= d;
    stride *= d;
  }
  return idx;
}

std::uint64_t FiniteAbelianGroup::multiple(std::uint64_t k, std::uint64_t a) const {
  std::uint64_t idx = 0, stride = 1;
  for (auto d : factors_) {
    idx += ((k % d) * (a % d) % d) * stride;
    a /= d;
    stride *= d;
  }
  return idx;
}

std::uint64_t FiniteAbelianGroup::order_of(std::uint64_t a) const {
  std::uint64_t ord = 1;
  for (auto d : factors_) {
    const std::uint64_t c = a % d;
    ord = std::lcm(ord, d / std::gcd(c, d));
    a /= d;
  }
  return ord;
}

ElementSet FiniteAbelianGroup::generated(std::span<const std::uint64_t> generators) const {
  ElementSet s(order_);
  s.set(0);
  std::vector<std::uint64_t> frontier{0};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (auto g : generators) {
      auto next = add(frontier[i], g);
      if (!s.test(next)) {
        s.set(next);
        frontier.push_back(next);
      }
    }
  }
  return s;
}

ElementSet FiniteAbelianGroup::full() const {
  ElementSet s(order_);
  s.set();
  return s;
}

bool FiniteAbelianGroup::is_subgroup(const ElementSet& s) const {
  if (s.size() != order_ || !s.test(0)) return false;
  for (auto a = s.find_first(); a != ElementSet::npos; a = s.find_next(a)) {
    for (auto b = s.find_first(); b != ElementSet::npos; b = s.find_next(b)) {
      if (!s.test(add(a, b))) return false;
    }
  }
  return true;
}

std::vector<CyclicNode> cyclic_subgroups(const FiniteAbelianGroup& A) {
  std::set<ElementSet> seen;
  std::vector<CyclicNode> out;
  for (std::uint64_t g = 0; g < A.order(); ++g) {
    std::uint64_t gen[] = {g};
    ElementSet s = A.generated(gen);
    if (!seen.insert(s).second) continue;
    out.push_back({g, A.order_of(g), std::move(s)});
  }
  std::sort(out.begin(), out.end(), [](const CyclicNode& x, const CyclicNode& y) {
    return x.order != y.order ? x.order < y.order : x.generator < y.generator;
  });
  return out;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw ValidationError("mobius(0) is undefined");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

int mobius(const CyclicNode& lower, const CyclicNode& upper) {
  if (lower.elements.size() != upper.elements.size()) throw ValidationError("cyclic subgroups of different groups");
  if (!lower.elements.is_subset_of(upper.elements)) return 0;
  return mobius(upper.order / lower.order);
}

PosetMobiusOracle::PosetMobiusOracle(std::vector<ElementSet> elements) : elements_(std::move(elements)) {}

int PosetMobiusOracle::operator()(std::size_t lower, std::size_t upper) {
  if (lower == upper) return 1;
  if (!leq(lower, upper)) return 0;
  auto key = std::make_pair(lower, upper);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  int sum = 0;
  for (std::size_t z = 0; z < elements_.size(); ++z) {
    if (z == upper || elements_[z] == elements_[upper]) continue;
    if (leq(lower, z) && leq(z, upper)) sum += (*this)(lower, z);
  }
  memo_[key] = -sum;
  return -sum;
}

Pairing::Pairing(FiniteAbelianGroup left, FiniteAbelianGroup right, std::uint64_t modulus,
                 std::vector<std::vector<std::uint64_t>> matrix)
    : left_(std::move(left)), right_(std::move(right)), modulus_(modulus), matrix_(std::move(matrix)) {
  if (modulus_ == 0) throw ValidationError("pairing modulus must be positive");
  if (matrix_.size() != left_.rank()) throw ValidationError("pairing matrix has the wrong number of rows");
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    if (matrix_[i].size() != right_.rank()) throw ValidationError("pairing matrix has the wrong number of columns");
    for (std::size_t j = 0; j < matrix_[i].size(); ++j) {
      auto& m = matrix_[i][j];
      m %= modulus_;
      // Coordinates are only defined mod d_i and d'_j.
      if ((left_.invariant_factors()[i] * m) % modulus_ != 0 || (right_.invariant_factors()[j] * m) % modulus_ != 0) {
        throw ValidationError("pairing matrix entry is not well defined on the invariant factors");
      }
    }
  }
  perfect_ = left_.order() == right_.order();
  for (std::uint64_t x = 1; perfect_ && x < left_.order(); ++x) {
    bool hit = false;
    for (std::uint64_t y = 1; y < right_.order() && !hit; ++y) hit = eval(x, y) != 0;
    perfect_ = hit;
  }
  for (std::uint64_t y = 1; perfect_ && y < right_.order(); ++y) {
    bool hit = false;
    for (std::uint64_t x = 1; x < left_.order() && !hit; ++x) hit = eval(x, y) != 0;
    perfect_ = hit;
  }
}

std::uint64_t Pairing::eval(std::uint64_t x, std::uint64_t y) const {
  auto xs = left_.element(x);
  auto ys = right_.element(y);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0) continue;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      sum = (sum + (xs[i] * matrix_[i][j] % modulus_) * ys[j]) % modulus_;
    }
  }
  return sum;
}

ElementSet annihilator(const Pairing& P, const ElementSet& N) {
  if (!P.is_perfect()) throw ValidationError("annihilator needs a perfect pairing");
  if (N.size() != P.left().order()) throw ValidationError("subset does not live in the left group");
  ElementSet out(P.right().order());
  for (std::uint64_t y = 0; y < P.right().order(); ++y) {
    bool zero = true;
    for (auto x = N.find_first(); x != ElementSet::npos && zero; x = N.find_next(x)) zero = P.eval(x, y) == 0;
    if (zero) out.set(y);
  }
  return out;
}

ElementSet left_annihilator(const Pairing& P, const ElementSet& M) {
  if (!P.is_perfect()) throw ValidationError("annihilator needs a perfect pairing");
  if (M.size() != P.right().order()) throw ValidationError("subset does not live in the right group");
  ElementSet out(P.left().order());
  for (std::uint64_t x = 0; x < P.left().order(); ++x) {
    bool zero = true;
    for (auto y = M.find_first(); y != ElementSet::npos && zero; y = M.find_next(y)) zero = P.eval(x, y) == 0;
    if (zero) out.set(x);
  }
  return out;
}

Rational wiles_rhs(std::span<const LocalSizes> locals, std::uint64_t global_H0_T, std::uint64_t global_H0_Tstar) {
  if (global_H0_T == 0 || global_H0_Tstar == 0) throw ValidationError("global H^0 sizes must be positive");
  Rational r(static_cast<std::int64_t>(global_H0_T), static_cast<std::int64_t>(global_H0_Tstar));
  for (const auto& l : locals) {
    if (l.H0_size == 0) throw ValidationError("local H^0 size must be positive");
    r *= Rational(static_cast<std::int64_t>(l.L_size), static_cast<std::int64_t>(l.H0_size));
  }
  return r;
}

namespace {

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    r *= p;
    while (n % p == 0) n /= p;
  }
  return n > 1 ? r * n : r;
}

ElementSet span_with(const FiniteAbelianGroup& M, const ElementSet& base, std::uint64_t g) {
  std::vector<std::uint64_t> gens;
  for (auto x = base.find_first(); x != ElementSet::npos; x = base.find_next(x)) gens.push_back(x);
  gens.push_back(g);
  return M.generated(gens);
}

}  // namespace

Rational coefficient_c(const FiniteAbelianGroup& M, const ElementSet& unramified, const ElementSet& conditions,
                       const ElementSet& restricted_annihilator, std::uint64_t f) {
  for (const auto* s : {&unramified, &conditions, &restricted_annihilator}) {
    if (!M.is_subgroup(*s)) throw ValidationError("coefficient_c inputs must be subgroups of the local group");
  }
  if (!unramified.is_subset_of(conditions) || !unramified.is_subset_of(restricted_annihilator)) {
    throw ValidationError("the unramified subgroup must lie in the conditions and the restricted annihilator");
  }
  if (f >= M.order() || !conditions.test(f)) throw ValidationError("f is not in the local conditions");

  // Preimages of <f|_I>, its Frattini subgroup and the intersection.
  const ElementSet lambda = span_with(M, unramified, f);
  const std::uint64_t n = lambda.count() / unramified.count();
  const ElementSet frattini = span_with(M, unramified, M.multiple(radical(n), f));
  const ElementSet meet = lambda & restricted_annihilator;

  const int mu = mobius(lambda.count() / meet.count());
  if (mu == 0) return Rational(0);
  std::int64_t hits = 0, total = 0;
  for (auto g = conditions.find_first(); g != ElementSet::npos; g = conditions.find_next(g)) {
    ElementSet gi = span_with(M, unramified, g);
    if (gi == lambda) ++total;
    if ((span_with(M, frattini, g)) == meet) ++hits;
  }
  return Rational(mu) * Rational(hits, total);
}

void LocalModel::validate() const {
  for (const auto* s : {&cocycles, &coboundaries, &unramified, &conditions}) {
    if (s->size() != ambient_size) throw ValidationError("local model set does not match the ambient size");
  }
  if (valuation.size() != ambient_size) throw ValidationError("valuation table does not match the ambient size");
  if (!coboundaries.is_subset_of(unramified) || !unramified.is_subset_of(conditions) ||
      !conditions.is_subset_of(cocycles)) {
    throw ValidationError("local model needs B^1 <= H^1_ur <= L <= Z^1");
  }
  const auto b = coboundaries.count();
  if (b == 0 || cocycles.count() % b != 0 || conditions.count() % b != 0 || unramified.count() % b != 0) {
    throw ValidationError("local model sets are not unions of coboundary cosets");
  }
  if (h0 == 0) throw ValidationError("h0 must be positive");
  if (weight <= Rational(0)) throw ValidationError("class weights must be positive");
}

InvPair ab_inv(const LocalConditionFamily& family) {
  if (family.classes.empty()) throw ValidationError("local condition family has no classes");
  Rational total;
  std::optional<std::size_t> a;
  for (const auto& c : family.classes) {
    c.validate();
    total += c.weight;
    for (auto z = c.conditions.find_first(); z != ElementSet::npos; z = c.conditions.find_next(z)) {
      if (c.unramified.test(z) || c.valuation[z] == 0) continue;
      if (!a || c.valuation[z] < *a) a = c.valuation[z];
    }
  }
  if (total != Rational(1)) throw ValidationError("class weights sum to " + total.str() + ", not 1");
  InvPair out;
  out.a_inv = a;
  if (!a) {
    out.b_inv = Rational(1);
    return out;
  }
  for (const auto& c : family.classes) {
    std::int64_t at_a = 0;
    for (auto z = c.conditions.find_first(); z != ElementSet::npos; z = c.conditions.find_next(z)) {
      if (c.valuation[z] == *a) ++at_a;
    }
    const auto b1 = static_cast<std::int64_t>(c.coboundaries.count());
    out.b_inv += c.weight * Rational(at_a, b1 * static_cast<std::int64_t>(c.h0));
  }
  return out;
}

LocalConditionFamily trivial_condition_family(const PermGroup& T, const TwistGroup& gamma, Ordering ordering) {
  require_acts_on(gamma, T);
  const std::size_t n = T.order();
  LocalConditionFamily family;
  const Rational w(1, static_cast<std::int64_t>(gamma.order()));
  for (const auto& p : gamma.pairs()) {
    const LocalClass cls = local_class(p);
    require_regular(T, cls);
    LocalModel m;
    m.label = "(" + p.conjugator.cycle_string() + ", " + std::to_string(p.unit) + ")";
    m.ambient_size = n * n;
    m.cocycles = ElementSet(n * n);
    m.coboundaries = ElementSet(n * n);
    m.unramified = ElementSet(n * n);
    m.valuation.assign(n * n, 0);
    for (const auto& z : z1_enumerate(T, cls)) {
      const std::size_t idx = *T.index_of(z.tau_image) * n + *T.index_of(z.fr_image);
      m.cocycles.set(idx);
      if (z.tau_image.is_identity()) m.unramified.set(idx);
    }
    for (const auto& t : T.elements()) {
      const std::size_t tau = *T.index_of(t);
      const std::size_t w_t = ordering == Ordering::disc_pi ? t.ind() : (t.is_identity() ? 0 : 1);
      for (std::size_t y = 0; y < n; ++y) m.valuation[tau * n + y] = w_t;
    }
    // Coboundary of s: tau -> 1, Fr -> c_g(s) s^-1.
    std::uint64_t h0 = 0;
    for (const auto& s : T.elements()) {
      const auto image = conjugate(cls.conjugator, s) * s.inverse();
      if (image.is_identity()) ++h0;
      m.coboundaries.set(*T.index_of(T.identity()) * n + *T.index_of(image));
    }
    m.conditions = m.cocycles;
    m.h0 = h0;
    m.weight = w;
    family.classes.push_back(std::move(m));
  }
  return family;
}

}  // namespace malle
