#include "qsim/random.hpp"

#include <limits>
#include <stdexcept>

namespace qsim {

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_below: bound must be positive");
    }
    // Reject the tail that would bias the modulo.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw > limit);
    return draw % bound;
}

} // namespace qsim
