#pragma once
#include <cstdint>

namespace hq {

// Counter-based stream: word k of stream s under seed is a pure function of
// (seed, s, k), so any sample index can be regenerated independently.
class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  double uniform();          // [0,1)
  double uniform_open();     // (0,1)
  double normal();
  double gamma(double shape);  // unit rate

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return ctr_; }

private:
  std::uint64_t seed_, stream_, key_, ctr_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace hq
