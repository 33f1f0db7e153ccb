#include "npie/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace npie {

const QuadratureRule<double>& reference_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule<double>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<QuadratureRule<double>>(gauss_legendre_rule<double>(order));
  return *slot;
}

}  // namespace npie
