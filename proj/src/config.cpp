#include "qsim/config.hpp"

namespace qsim {

SizeLimits& limits() {
    static SizeLimits instance;
    return instance;
}

} // namespace qsim
