#pragma once

#include <cstdint>
#include <random>

#include "eiregret/types.hpp"

namespace eiregret {

// SplitMix64 step: advances `state` and returns the next value. Used to derive
// decorrelated substream seeds from a trial seed.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic random stream. Engine output is fully specified by the
// standard (mt19937_64), uniforms take the top 53 bits of one engine draw,
// and normals are Box-Muller over two uniforms, so a fixed seed reproduces
// the same sequence on any conforming platform. One stream, one consumer.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal; consumes exactly two uniforms, no caching.
  double normal();
  // One uniform point in `box`; consumes dim() uniforms in coordinate order.
  Vector uniform_point(const Box& box);

 private:
  std::mt19937_64 engine_;
};

// First `count` points of the Halton sequence (prime bases per coordinate)
// under a Cranley-Patterson rotation drawn from `stream` (dim() uniforms),
// mapped into `box`. Rows are points. Supports dim() <= 16.
Matrix halton_pool(const Box& box, int count, RngStream& stream);

}  // namespace eiregret
