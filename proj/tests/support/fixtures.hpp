#pragma once

#include <string>

#include "afsm/format.hpp"

namespace afsm::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(AFSM_FIXTURE_DIR) + "/" + name;
}

inline ModelDocument load_fixture(const std::string& name) {
    return parse_file(fixture_path(name));
}

}  // namespace afsm::testing
