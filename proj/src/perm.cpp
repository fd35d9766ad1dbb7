#include "malle/perm.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "malle/error.hpp"

namespace malle {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw ValidationError("permutation images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_one_based(std::span<const std::int64_t> images) {
  std::vector<std::uint32_t> zero_based;
  zero_based.reserve(images.size());
  for (auto v : images) {
    if (v < 1 || static_cast<std::size_t>(v) > images.size()) {
      throw ValidationError("permutation image " + std::to_string(v) + " outside 1.." + std::to_string(images.size()));
    }
    zero_based.push_back(static_cast<std::uint32_t>(v - 1));
  }
  return Permutation(std::move(zero_based));
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  Permutation result;
  result.images_ = images;

  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw ValidationError("cycle notation: expected '(' in '" + std::string(text) + "'");
    ++i;
    std::vector<std::uint32_t> cycle;
    skip_space();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ValidationError("cycle notation: unexpected '" + std::string(1, text[i]) + "'");
      }
      std::uint64_t point = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        point = point * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (point > degree) break;
        ++i;
      }
      if (point < 1 || point > degree) {
        throw ValidationError("cycle notation: point outside 1.." + std::to_string(degree));
      }
      cycle.push_back(static_cast<std::uint32_t>(point - 1));
      skip_space();
    }
    if (i == text.size()) throw ValidationError("cycle notation: unterminated cycle");
    ++i;
    // Cycles multiply as functions, so the rightmost cycle acts first.
    std::vector<std::uint32_t> cyc(images);
    std::vector<bool> used(degree, false);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (used[cycle[k]]) throw ValidationError("cycle notation: repeated point in a cycle");
      used[cycle[k]] = true;
      cyc[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    result = result * Permutation(std::move(cyc));
    skip_space();
  }
  return result;
}

std::vector<std::int64_t> Permutation::one_based_images() const {
  std::vector<std::int64_t> out;
  out.reserve(images_.size());
  for (auto v : images_) out.push_back(static_cast<std::int64_t>(v) + 1);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return inv;
}

Permutation Permutation::pow(std::int64_t exponent) const {
  Permutation base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1 : static_cast<std::uint64_t>(exponent);
  Permutation result = identity(degree());
  // Reduce by the order first; cycle lengths keep this cheap.
  std::uint64_t ord = order();
  e %= ord;
  while (e > 0) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::size_t Permutation::orbit_count() const {
  std::size_t cycles = 0;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = images_[j]) seen[j] = true;
  }
  return cycles;
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw ValidationError("composing permutations of different degree");
  Permutation out;
  out.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) out.images_[i] = a.images_[b.images_[i]];
  return out;
}

Permutation conjugate(const Permutation& g, const Permutation& h) { return g * h * g.inverse(); }

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace malle
