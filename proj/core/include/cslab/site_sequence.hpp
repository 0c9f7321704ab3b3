#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "cslab/packed_bits.hpp"

namespace cslab {

/// Particle/hole values on a contiguous window of wires.
///
/// Wire indices follow the network convention: wires entering the grid
/// through the top boundary are 0, 1, 2, ... and those entering through the
/// left boundary are -1, -2, -3, ... . Array position 0 holds wire
/// origin_index(). The half-step counter decides which adjacent pairs are
/// active next: pairs (w - 1, w) with w having the parity of halfstep().
class SiteSequence {
 public:
  SiteSequence() = default;
  SiteSequence(std::int64_t origin_index, std::size_t size, std::uint64_t halfstep = 0);

  /// Particles on every wire < 0, holes on every wire >= 0, over [lo, hi).
  static SiteSequence step_initial_condition(std::int64_t lo, std::int64_t hi);

  std::int64_t origin_index() const { return origin_; }
  std::int64_t end_index() const { return origin_ + static_cast<std::int64_t>(bits_.size()); }
  std::size_t size() const { return bits_.size(); }
  std::uint64_t halfstep() const { return halfstep_; }
  void set_halfstep(std::uint64_t h) { halfstep_ = h; }

  bool contains(std::int64_t wire) const { return wire >= origin_ && wire < end_index(); }
  bool particle(std::int64_t wire) const { return bits_.get(position(wire)); }
  void set(std::int64_t wire, bool particle) { bits_.set(position(wire), particle); }

  std::size_t particle_count() const { return bits_.count(); }
  std::size_t hole_count() const { return size() - particle_count(); }
  /// Particles on wires >= `wire` inside the window.
  std::size_t particles_at_or_above(std::int64_t wire) const;

  /// One character per site, lowest wire first: '*' particle, '.' hole.
  std::string to_trace() const;

  const PackedBits& bits() const { return bits_; }
  PackedBits& bits() { return bits_; }

  friend bool operator==(const SiteSequence&, const SiteSequence&) = default;

 private:
  std::size_t position(std::int64_t wire) const { return static_cast<std::size_t>(wire - origin_); }

  PackedBits bits_;
  std::int64_t origin_ = 0;
  std::uint64_t halfstep_ = 0;
};

}  // namespace cslab
