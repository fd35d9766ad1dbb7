#include "malle/counting.hpp"

#include <omp.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>

#include "counting_internal.hpp"
#include "malle/catalog.hpp"
#include "malle/error.hpp"
#include "malle/primes.hpp"

namespace malle {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
  }
  return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::size_t valuation(std::uint64_t n, std::uint64_t p) {
  std::size_t v = 0;
  for (; n % p == 0; n /= p) ++v;
  return v;
}

std::uint64_t primitive_root(std::uint64_t p, std::uint64_t k) {
  if (p == 2) throw InternalError("no primitive root mod 2^k");
  const auto qs = prime_divisors(p - 1);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (auto q : qs) ok = ok && powmod(g, (p - 1) / q, p) != 1;
    if (ok) break;
  }
  if (k >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

std::uint64_t ipow(std::uint64_t p, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= p;
  return r;
}

// Generators of (Z/p^k)^x and their orders.
void unit_generators(std::uint64_t p, std::uint64_t k, std::vector<std::uint64_t>& gens,
                     std::vector<std::uint64_t>& orders) {
  gens.clear();
  orders.clear();
  const std::uint64_t q = ipow(p, k);
  if (p == 2) {
    if (k >= 2) {
      gens.push_back(q - 1);
      orders.push_back(2);
    }
    if (k >= 3) {
      gens.push_back(5);
      orders.push_back(q / 4);
    }
    return;
  }
  if (k == 0) return;
  gens.push_back(primitive_root(p, k) % q);
  orders.push_back(q / p * (p - 1));
}

// The level past which every hom Z_p^x -> T is visible.
std::uint64_t full_level(const FiniteAbelianGroup& T, std::uint64_t p) {
  const std::size_t v = valuation(T.exponent(), p);
  if (v == 0) return p == 2 ? 0 : 1;
  return p == 2 ? v + 2 : v + 1;
}

std::vector<LocalHom> homs_at_level(const FiniteAbelianGroup& T, std::uint64_t p, std::uint64_t k) {
  LocalHom base{p, k, {}, {}};
  std::vector<std::uint64_t> orders;
  unit_generators(p, k, base.generators, orders);
  std::vector<std::vector<std::uint64_t>> candidates;
  for (auto ord : orders) {
    std::vector<std::uint64_t> c;
    for (std::uint64_t t = 0; t < T.order(); ++t) {
      if (T.multiple(ord, t) == 0) c.push_back(t);
    }
    candidates.push_back(std::move(c));
  }
  std::vector<LocalHom> out;
  std::vector<std::size_t> pos(candidates.size(), 0);
  for (;;) {
    LocalHom h = base;
    for (std::size_t i = 0; i < pos.size(); ++i) h.images.push_back(candidates[i][pos[i]]);
    out.push_back(std::move(h));
    std::size_t i = 0;
    for (; i < pos.size(); ++i) {
      if (++pos[i] < candidates[i].size()) break;
      pos[i] = 0;
    }
    if (i == pos.size()) break;
  }
  return out;
}

// chi_c(x) = sum_i c_i x_i (e / d_i) mod e.
std::uint64_t character(const FiniteAbelianGroup& T, std::uint64_t c, std::uint64_t x) {
  const auto& d = T.invariant_factors();
  const std::uint64_t e = T.exponent();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    sum = (sum + (c % d[i]) * (x % d[i]) % e * (e / d[i])) % e;
    c /= d[i];
    x /= d[i];
  }
  return sum;
}

// Images under phi of a generating set of 1 + p^c Z_p (all units for c = 0).
std::vector<std::uint64_t> level_images(const FiniteAbelianGroup& T, const LocalHom& phi, std::uint64_t c) {
  if (phi.p == 2) {
    if (c <= 1) return phi.images;
    if (phi.images.size() < 2) return {};
    return {T.multiple(ipow(2, c - 2), phi.images[1])};
  }
  if (phi.images.empty()) return {};
  if (c == 0) return phi.images;
  return {T.multiple((phi.p - 1) * ipow(phi.p, c - 1), phi.images[0])};
}

template <class Zero>
std::size_t smallest_trivial_level(const FiniteAbelianGroup& T, const LocalHom& phi, Zero is_zero) {
  for (std::uint64_t c = 0; c <= phi.k; ++c) {
    auto imgs = level_images(T, phi, c);
    if (std::all_of(imgs.begin(), imgs.end(), is_zero)) return c;
  }
  throw InternalError("local hom is not trivial at its own level");
}

}  // namespace

FiniteAbelianGroup abelian_structure(const PermGroup& T) {
  if (!T.is_abelian()) throw ValidationError("counting needs an abelian group");
  const std::uint64_t n = T.order();
  // For each prime, the exponents of the cyclic p-factors, largest first.
  std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> parts;
  std::size_t max_parts = 0;
  for (auto p : prime_divisors(n)) {
    std::vector<std::size_t> r{0};
    const std::size_t full = valuation(n, p);
    for (std::uint64_t q = p; r.back() < full; q *= p) {
      std::uint64_t killed = 0;
      for (const auto& t : T.elements()) killed += t.pow(static_cast<std::int64_t>(q)).is_identity();
      r.push_back(valuation(killed, p));
    }
    // r_j - r_{j-1} factors have exponent >= j.
    std::vector<std::size_t> exps;
    for (std::size_t j = r.size() - 1; j >= 1; --j) {
      const std::size_t at_least_j = r[j] - r[j - 1];
      while (exps.size() < at_least_j) exps.push_back(j);
    }
    max_parts = std::max(max_parts, exps.size());
    parts.push_back({p, std::move(exps)});
  }
  std::vector<std::uint64_t> factors(max_parts, 1);
  for (const auto& [p, exps] : parts) {
    for (std::size_t i = 0; i < exps.size(); ++i) factors[max_parts - 1 - i] *= ipow(p, exps[i]);
  }
  return FiniteAbelianGroup(std::move(factors));
}

Permutation regular_element(const FiniteAbelianGroup& T, std::uint64_t x) {
  std::vector<std::uint32_t> images(T.order());
  for (std::uint64_t y = 0; y < T.order(); ++y) images[y] = static_cast<std::uint32_t>(T.add(x, y));
  return Permutation(std::move(images));
}

PermGroup regular_representation(const FiniteAbelianGroup& T) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < T.rank(); ++i) {
    FiniteAbelianGroup::Element e(T.rank(), 0);
    e[i] = 1;
    gens.push_back(regular_element(T, T.index(e)));
  }
  return PermGroup(T.order(), gens);
}

std::vector<ElementSet> all_subgroups(const FiniteAbelianGroup& A) {
  std::set<ElementSet> seen;
  std::vector<ElementSet> todo{A.generated(std::span<const std::uint64_t>{})};
  seen.insert(todo.front());
  while (!todo.empty()) {
    ElementSet H = std::move(todo.back());
    todo.pop_back();
    std::vector<std::uint64_t> gens;
    for (auto x = H.find_first(); x != ElementSet::npos; x = H.find_next(x)) gens.push_back(x);
    for (std::uint64_t g = 0; g < A.order(); ++g) {
      if (H.test(g)) continue;
      gens.push_back(g);
      ElementSet K = A.generated(gens);
      gens.pop_back();
      if (seen.insert(K).second) todo.push_back(std::move(K));
    }
  }
  std::vector<ElementSet> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const ElementSet& x, const ElementSet& y) { return x.count() < y.count(); });
  return out;
}

std::uint64_t automorphism_count(const FiniteAbelianGroup& A) {
  std::vector<std::vector<std::uint64_t>> candidates;
  for (auto d : A.invariant_factors()) {
    std::vector<std::uint64_t> c;
    for (std::uint64_t t = 0; t < A.order(); ++t) {
      if (A.multiple(d, t) == 0) c.push_back(t);
    }
    candidates.push_back(std::move(c));
  }
  std::uint64_t total = 0;
  std::vector<std::size_t> pos(candidates.size(), 0);
  std::vector<std::uint64_t> imgs(candidates.size());
  for (;;) {
    for (std::size_t i = 0; i < pos.size(); ++i) imgs[i] = candidates[i][pos[i]];
    if (A.generated(imgs).count() == A.order()) ++total;
    std::size_t i = 0;
    for (; i < pos.size(); ++i) {
      if (++pos[i] < candidates[i].size()) break;
      pos[i] = 0;
    }
    if (i == pos.size()) break;
  }
  return total;
}

bool LocalHom::is_trivial() const {
  return std::all_of(images.begin(), images.end(), [](std::uint64_t t) { return t == 0; });
}

std::size_t conductor_exponent(const FiniteAbelianGroup& T, const LocalHom& phi) {
  return smallest_trivial_level(T, phi, [](std::uint64_t t) { return t == 0; });
}

std::size_t disc_exponent(const FiniteAbelianGroup& T, const LocalHom& phi) {
  std::size_t total = 0;
  for (std::uint64_t c = 0; c < T.order(); ++c) {
    total += smallest_trivial_level(T, phi, [&](std::uint64_t t) { return character(T, c, t) == 0; });
  }
  return total;
}

std::vector<LocalHom> local_homs(const FiniteAbelianGroup& T, std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  return homs_at_level(T, p, full_level(T, p));
}

EulerFactor local_count_factor(const FiniteAbelianGroup& T, std::uint64_t p, Ordering ordering) {
  std::map<std::size_t, Rational> coeffs;
  for (const auto& phi : local_homs(T, p)) {
    const std::size_t v = ordering == Ordering::disc_pi ? disc_exponent(T, phi) : (phi.is_trivial() ? 0 : 1);
    coeffs[v] += Rational(1);
  }
  return EulerFactor(std::move(coeffs));
}

ElementSet UnitGroupHom::image(const FiniteAbelianGroup& T) const {
  std::vector<std::uint64_t> gens;
  for (const auto& l : locals) gens.insert(gens.end(), l.images.begin(), l.images.end());
  return T.generated(gens);
}

std::vector<UnitGroupHom> homs_with_conductor(const FiniteAbelianGroup& T, std::uint64_t m, std::uint64_t cap) {
  if (m == 0) throw ValidationError("modulus must be positive");
  if (m > cap) throw CapExceeded("modulus " + std::to_string(m) + " exceeds the cap " + std::to_string(cap));
  std::vector<std::vector<LocalHom>> per_prime;
  for (auto p : prime_divisors(m)) {
    const std::uint64_t k = valuation(m, p);
    std::vector<LocalHom> prim;
    if (k <= full_level(T, p)) {
      for (auto& h : homs_at_level(T, p, k)) {
        if (conductor_exponent(T, h) == k) prim.push_back(std::move(h));
      }
    }
    if (prim.empty()) return {};
    per_prime.push_back(std::move(prim));
  }
  std::vector<UnitGroupHom> out;
  std::vector<std::size_t> pos(per_prime.size(), 0);
  for (;;) {
    UnitGroupHom h{m, {}};
    for (std::size_t i = 0; i < pos.size(); ++i) h.locals.push_back(per_prime[i][pos[i]]);
    out.push_back(std::move(h));
    std::size_t i = 0;
    for (; i < pos.size(); ++i) {
      if (++pos[i] < per_prime[i].size()) break;
      pos[i] = 0;
    }
    if (i == pos.size()) break;
  }
  return out;
}

Discriminant discriminant_of(const FiniteAbelianGroup& T, const UnitGroupHom& hom) {
  Discriminant d;
  d.value = 1;
  for (const auto& l : hom.locals) {
    const std::size_t e = disc_exponent(T, l);
    if (e == 0) continue;
    d.factorization[l.p] = e;
    for (std::size_t i = 0; i < e && d.value; ++i) {
      std::uint64_t r;
      if (__builtin_mul_overflow(*d.value, l.p, &r)) {
        d.value.reset();
      } else {
        d.value = r;
      }
    }
  }
  return d;
}

std::uint64_t ramified_product(const UnitGroupHom& hom) {
  std::uint64_t r = 1;
  for (const auto& l : hom.locals) {
    if (!l.is_trivial()) r *= l.p;
  }
  return r;
}

PoleData predicted_exponents(const FiniteAbelianGroup& T, Ordering ordering) {
  if (T.order() < 2) throw ValidationError("counting needs a nontrivial group");
  const PermGroup G = regular_representation(T);
  return aq_bq(family_from_twist(G, twist_preset("trivial-pi-over-Q", G, G), ordering));
}

namespace internal {

std::vector<SearchSpace> build_spaces(const FiniteAbelianGroup& T, Ordering ordering, std::uint64_t bound,
                                      bool surjective_only, std::uint64_t prime_cap) {
  const std::uint64_t n = T.order();
  const std::uint64_t e = T.exponent();
  const std::uint64_t ell = prime_divisors(n).front();
  const std::size_t dmin = ordering == Ordering::disc_pi ? static_cast<std::size_t>(n - n / ell) : 1;

  // Largest prime that can appear: p^dmin < bound.
  std::uint64_t P = static_cast<std::uint64_t>(std::pow(static_cast<double>(bound), 1.0 / static_cast<double>(dmin)));
  while (P > 0 && pow_sat(P, dmin, bound) >= bound) --P;
  while (pow_sat(P + 1, dmin, bound) < bound) ++P;
  if (P > prime_cap) {
    throw CapExceeded("counting below " + std::to_string(bound) + " needs primes up to " + std::to_string(P) +
                      ", past the cap " + std::to_string(prime_cap));
  }
  const auto primes = primes_up_to(P);

  std::vector<std::pair<ElementSet, std::int64_t>> targets;
  if (surjective_only) {
    auto subs = all_subgroups(T);
    PosetMobiusOracle mu(subs);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const int m = mu(i, subs.size() - 1);
      if (m != 0) targets.push_back({subs[i], m});
    }
  } else {
    targets.push_back({T.full(), 1});
  }

  std::vector<SearchSpace> spaces;
  for (const auto& [S, sign] : targets) {
    // Tame choices depend only on g = gcd(p - 1, e).
    std::map<std::uint64_t, std::map<std::size_t, std::uint64_t>> tame;
    for (std::uint64_t g = 1; g <= e; ++g) {
      if (e % g != 0) continue;
      auto& by_exp = tame[g];
      for (auto t = S.find_first(); t != ElementSet::npos; t = S.find_next(t)) {
        if (t == 0 || T.multiple(g, t) != 0) continue;
        by_exp[ordering == Ordering::disc_pi ? n - n / T.order_of(t) : 1] += 1;
      }
    }
    SearchSpace s;
    s.bound = bound;
    s.sign = sign;
    s.offset.push_back(0);
    for (auto p : primes) {
      std::map<std::size_t, std::uint64_t> by_exp;
      if (n % p != 0) {
        by_exp = tame[std::gcd<std::uint64_t>(p - 1, e)];
      } else {
        for (const auto& phi : local_homs(T, p)) {
          if (phi.is_trivial()) continue;
          if (!std::all_of(phi.images.begin(), phi.images.end(), [&](std::uint64_t t) { return S.test(t); })) {
            continue;
          }
          by_exp[ordering == Ordering::disc_pi ? disc_exponent(T, phi) : 1] += 1;
        }
      }
      bool any = false;
      for (const auto& [x, c] : by_exp) {
        const std::uint64_t w = pow_sat(p, x, bound);
        if (w < bound) {
          s.choices.push_back({w, c});
          any = true;
        }
      }
      if (!any) continue;
      s.primes.push_back(p);
      s.min_weight.push_back(pow_sat(p, dmin, bound));
      s.offset.push_back(s.choices.size());
    }
    spaces.push_back(std::move(s));
  }
  return spaces;
}

void validate_count_input(const FiniteAbelianGroup& T, std::span<const std::uint64_t> grid,
                          const CountOptions& options) {
  if (T.order() < 2) throw ValidationError("counting needs a nontrivial group");
  if (grid.empty()) throw ValidationError("count grid is empty");
  if (grid.front() < 1) throw ValidationError("count bounds must be positive");
  if (!std::is_sorted(grid.begin(), grid.end())) throw ValidationError("count grid must be increasing");
  if (options.fields && !options.surjective_only) throw ValidationError("field counts need surjective_only");
}

CountSeries finish_series(const FiniteAbelianGroup& T, Ordering ordering, std::vector<std::uint64_t> grid,
                          const std::vector<std::int64_t>& cells, const CountOptions& options) {
  CountSeries out;
  out.ordering = to_string(ordering);
  out.surjective_only = options.surjective_only;
  out.fields = options.fields;
  const std::uint64_t aut = options.fields ? automorphism_count(T) : 1;
  std::int64_t running = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    running += cells[i];
    if (running < 0) throw InternalError("negative count out of the sieve");
    auto c = static_cast<std::uint64_t>(running);
    if (c % aut != 0) throw InternalError("surjection count not divisible by |Aut(T)|");
    out.counts.push_back(c / aut);
  }
  out.grid = std::move(grid);
  auto pole = predicted_exponents(T, ordering);
  out.predicted_a = pole.a;
  out.predicted_b = pole.b;
  return out;
}

}  // namespace internal

CountSeries count(const FiniteAbelianGroup& T, Ordering ordering, std::span<const std::uint64_t> grid,
                  const CountOptions& options) {
  internal::validate_count_input(T, grid, options);
  std::vector<std::uint64_t> g(grid.begin(), grid.end());
  const auto spaces = internal::build_spaces(T, ordering, g.back(), options.surjective_only, options.prime_cap);

  std::vector<std::int64_t> cells(g.size(), 0);
  for (const auto& s : spaces) {
    // The root (trivial hom) plus one task per first ramified prime choice.
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t j = 0; j < s.primes.size() && s.min_weight[j] < s.bound; ++j) {
      for (std::size_t c = s.offset[j]; c < s.offset[j + 1]; ++c) tasks.push_back({j, c});
    }
    std::exception_ptr error;
#pragma omp parallel
    {
      internal::Buckets local(g);
      local.sign = s.sign;
#pragma omp single nowait
      local(1, 1);
#pragma omp for schedule(dynamic, 64)
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        try {
          const auto [j, c] = tasks[i];
          internal::dfs(s, j + 1, s.choices[c].weight, s.choices[c].count, local);
        } catch (...) {
#pragma omp critical
          if (!error) error = std::current_exception();
        }
      }
#pragma omp critical
      for (std::size_t b = 0; b < cells.size(); ++b) cells[b] += local.cells[b];
    }
    if (error) std::rethrow_exception(error);
  }
  return internal::finish_series(T, ordering, std::move(g), cells, options);
}

std::map<std::uint64_t, std::int64_t> value_histogram(const FiniteAbelianGroup& T, Ordering ordering,
                                                      std::uint64_t bound, bool surjective_only,
                                                      std::uint64_t prime_cap) {
  if (T.order() < 2) throw ValidationError("counting needs a nontrivial group");
  std::map<std::uint64_t, std::int64_t> hist;
  for (const auto& s : internal::build_spaces(T, ordering, bound, surjective_only, prime_cap)) {
    auto sink = [&](std::uint64_t v, std::uint64_t mult) { hist[v] += s.sign * static_cast<std::int64_t>(mult); };
    if (bound > 1) internal::dfs(s, 0, 1, 1, sink);
  }
  std::erase_if(hist, [](const auto& kv) { return kv.second == 0; });
  return hist;
}

std::vector<std::uint64_t> default_grid(std::uint64_t X, std::uint64_t decades, std::uint64_t per_decade) {
  if (X == 0) throw ValidationError("X must be positive");
  if (per_decade == 0) throw ValidationError("need at least one grid point per decade");
  std::vector<std::uint64_t> out;
  const double top = std::log10(static_cast<double>(X));
  const double low = std::max(0.0, top - static_cast<double>(decades));
  const auto first = static_cast<std::int64_t>(std::ceil(low * static_cast<double>(per_decade) - 1e-9));
  for (std::int64_t j = first;; ++j) {
    const double v = std::pow(10.0, static_cast<double>(j) / static_cast<double>(per_decade));
    const auto x = static_cast<std::uint64_t>(std::llround(v));
    if (x >= X) break;
    if (x >= 1 && (out.empty() || x > out.back())) out.push_back(x);
  }
  out.push_back(X);
  return out;
}

Fit fit_exponents(const CountSeries& series) {
  const std::size_t n = series.grid.size();
  if (n < 8 || series.counts.size() != n) throw ValidationError("degenerate grid: need at least 8 points");
  if (series.grid.front() < 3) throw ValidationError("degenerate grid: log log X needs X >= 3");
  if (static_cast<double>(series.grid.back()) < 1000.0 * static_cast<double>(series.grid.front())) {
    throw ValidationError("degenerate grid: need at least 3 decades");
  }
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (series.counts[i] == 0) throw ValidationError("degenerate grid: zero count at X = " + std::to_string(series.grid[i]));
    const double lx = std::log(static_cast<double>(series.grid[i]));
    A(static_cast<Eigen::Index>(i), 0) = lx;
    A(static_cast<Eigen::Index>(i), 1) = std::log(lx);
    A(static_cast<Eigen::Index>(i), 2) = 1.0;
    y(static_cast<Eigen::Index>(i)) = std::log(static_cast<double>(series.counts[i]));
  }
  Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
  Fit f;
  f.alpha = coef(0);
  f.beta = coef(1);
  f.gamma = coef(2);
  if (f.alpha <= 0.0) throw ValidationError("degenerate fit: counts do not grow");
  f.a_hat = 1.0 / f.alpha;
  f.b_hat = f.beta + 1.0;
  return f;
}

}  // namespace malle
