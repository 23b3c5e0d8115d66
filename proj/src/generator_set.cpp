#include "hausflow/generator_set.hpp"

#include <stdexcept>

namespace hausflow {

double GeneratorSet::reach_radius() const {
  GroupElement e = identity(group);
  double r = 0.0;
  for (const auto& x : elements)
    r = std::max(r, chart_distance_inf(group, e, mul(group, e, x)));
  return r;
}

GeneratorSet make_generator_set(const GroupSpec& group, const std::vector<GroupElement>& elements) {
  GeneratorSet out;
  out.group = group;
  GroupElement e = identity(group);
  out.elements.push_back(e);
  for (const auto& raw : elements) {
    if (raw.size() != group.dim)
      throw std::invalid_argument("generator dimension mismatch");
    GroupElement x = reduce(group, raw);
    bool dup = false;
    for (const auto& seen : out.elements)
      if (chart_distance_inf(group, seen, x) <= 1e-9) { dup = true; break; }
    if (!dup) out.elements.push_back(x);
  }
  return out;
}

}  // namespace hausflow
