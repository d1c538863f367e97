#pragma once

#include <string>

#include "gmr/io.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(GMR_DATA_DIR) + "/" + name; }

inline gmr::GMap house() { return gmr::load_gmap(path("house.gmap")); }

inline gmr::RuleScheme scheme(const std::string& name) {
    return gmr::parse_scheme(gmr::read_file(path("rules/" + name)));
}

inline gmr::RuleDocument rule(const std::string& name) {
    return gmr::parse_rule(gmr::read_file(path("rules/" + name)));
}

}  // namespace fixtures
