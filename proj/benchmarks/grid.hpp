#pragma once

#include "gmr/io.hpp"

namespace bench {

// n x n unit squares sewn along a2, each square eight darts
gmr::GMap grid(int n);

inline gmr::RuleScheme scheme(const char* name) {
    return gmr::parse_scheme(gmr::read_file(std::string(GMR_DATA_DIR) + "/rules/" + name));
}

}  // namespace bench
