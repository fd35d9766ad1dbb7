#include <algorithm>

#include "malle/error.hpp"
#include "malle/invariants.hpp"

namespace malle::reference {

std::size_t turkelli_B(const PermGroup& G, const PermGroup& T, const TwistGroup& gamma) {
  require_acts_on(gamma, T);
  for (const auto& p : gamma.generators()) {
    if (!G.contains(p.conjugator)) throw ValidationError("twist conjugator is not an element of G");
  }
  std::size_t best = 0;
  for (const auto& n : detail::turkelli_levels(G, T)) best = std::max(best, detail::best_lift(n, gamma));
  return best;
}

}  // namespace malle::reference
