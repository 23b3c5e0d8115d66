#pragma once

#include "hausflow/group.hpp"

#include <vector>

namespace hausflow {

// Finite translate set X = {e, x_1, ..., x_m}. The identity always sits at
// index 0 so the induced construction can compare points against their own
// translates; isotropy_certified records that x -> d(x s, s) over s in X
// separates x = e from the rest (checked, not assumed).
struct GeneratorSet {
  GroupSpec group;
  std::vector<GroupElement> elements;
  bool isotropy_certified = false;

  int size() const { return static_cast<int>(elements.size()); }

  // Max chart displacement of the identity under the translates. Window
  // padding must cover this radius before a flow step can be evaluated.
  double reach_radius() const;
};

// Dedups within 1e-9 in the chart sup norm, prepends the identity when it is
// missing, keeps first-seen order otherwise.
GeneratorSet make_generator_set(const GroupSpec& group, const std::vector<GroupElement>& elements);

}  // namespace hausflow
