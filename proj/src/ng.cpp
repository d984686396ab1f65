#include "vrpdecomp/ng.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace vrpdecomp {

NgConfig::NgConfig(const Instance& instance, int delta) : delta_(delta) {
  if (delta < 0) throw std::invalid_argument("ng size must be nonnegative");
  const int n = instance.customers();
  sets_.assign(n + 2, SmallBitset{});
  std::vector<int> order;
  for (int i = 1; i <= n; ++i) {
    order.clear();
    for (int j = 1; j <= n; ++j) {
      if (j != i) order.push_back(j);
    }
    // Closeness by c_ij; pairs without an arc count as infinitely far.
    auto key = [&](int j) {
      return instance.has_arc(i, j) ? instance.cost(i, j) : std::numeric_limits<Scaled>::max();
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    sets_[i].set(i);
    const int take = std::min<int>(delta, static_cast<int>(order.size()));
    for (int k = 0; k < take; ++k) sets_[i].set(order[k]);
  }
}

NgConfig NgConfig::elementary(const Instance& instance) {
  return NgConfig(instance, instance.customers() - 1);
}

bool NgConfig::add(int target, int customer) {
  if (sets_[target].test(customer)) return false;
  sets_[target].set(customer);
  return true;
}

}  // namespace vrpdecomp
