#include "cslab/site_sequence.hpp"

#include <algorithm>

#include "cslab/errors.hpp"

namespace cslab {

SiteSequence::SiteSequence(std::int64_t origin_index, std::size_t size, std::uint64_t halfstep)
    : bits_(size), origin_(origin_index), halfstep_(halfstep) {}

SiteSequence SiteSequence::step_initial_condition(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("empty or inverted wire window");
  SiteSequence s(lo, static_cast<std::size_t>(hi - lo));
  for (std::int64_t w = lo; w < std::min<std::int64_t>(hi, 0); ++w) s.set(w, true);
  return s;
}

std::size_t SiteSequence::particles_at_or_above(std::int64_t wire) const {
  if (wire >= end_index()) return 0;
  const std::int64_t first = std::max(wire, origin_);
  return bits_.count(position(first), size());
}

std::string SiteSequence::to_trace() const {
  std::string out(size(), '.');
  for (std::size_t p = 0; p < size(); ++p)
    if (bits_.get(p)) out[p] = '*';
  return out;
}

}  // namespace cslab
