#pragma once

#include <cstdint>

namespace tropenum {

// Counter-based generator: every draw is a pure function of (seed, stream, counter),
// so results do not depend on call order, thread count or platform.
std::uint64_t counter_random(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

// Uniform integer in [-bound, bound], by rejection over successive counters.
std::int64_t counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter, std::int64_t bound);

}  // namespace tropenum
