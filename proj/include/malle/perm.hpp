#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace malle {

// An element of S_n. Points are 0-based internally; every parser and
// formatter in this header speaks 1-based cycle notation.
//
// Products compose right to left like functions: (a * b)(x) == a(b(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t degree);
  // Images of 1..n as 1-based values; validates bijectivity.
  static Permutation from_one_based(std::span<const std::int64_t> images);
  // "(1 2 3)(4 5 6)", "()" or "" for the identity. Commas are accepted as
  // separators as well.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t point) const { return images_[point]; }
  const std::vector<std::uint32_t>& images() const { return images_; }
  std::vector<std::int64_t> one_based_images() const;

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(std::int64_t exponent) const;
  std::uint64_t order() const;

  // Number of cycles on {1..n}, fixed points included.
  std::size_t orbit_count() const;
  // n minus the number of orbits; zero exactly for the identity.
  std::size_t ind() const { return degree() - orbit_count(); }

  std::string cycle_string() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

// g h g^-1
Permutation conjugate(const Permutation& g, const Permutation& h);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace malle
