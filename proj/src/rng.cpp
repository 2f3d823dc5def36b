#include "scalebench/rng.hpp"

#include <cmath>
#include <numbers>

namespace scalebench {

double CounterRng::normal_at(std::uint64_t pair_index) const {
    const double u1 = uniform_at(2 * pair_index);
    const double u2 = uniform_at(2 * pair_index + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace scalebench
