#include "contraplan/state.hpp"

#include <algorithm>

namespace contraplan {

std::size_t SystemState::toppled_count() const {
  return static_cast<std::size_t>(std::count_if(objects.begin(), objects.end(), [](const auto& o) { return o.toppled; }));
}

bool ControlBounds::contains(const Control& u) const {
  for (std::size_t d = 0; d < Control::kDim; ++d)
    if (u[d] < lower[d] || u[d] > upper[d]) return false;
  return true;
}

bool ControlBounds::contains(const ControlSequence& seq) const {
  return std::all_of(seq.begin(), seq.end(), [this](const Control& u) { return contains(u); });
}

Control clamp(const Control& u, const ControlBounds& bounds) {
  Control out;
  for (std::size_t d = 0; d < Control::kDim; ++d) out[d] = std::clamp(u[d], bounds.lower[d], bounds.upper[d]);
  return out;
}

ControlSequence clamp_controls(const ControlSequence& seq, const ControlBounds& bounds) {
  ControlSequence out;
  out.reserve(seq.size());
  for (const Control& u : seq) out.push_back(clamp(u, bounds));
  return out;
}

}  // namespace contraplan
