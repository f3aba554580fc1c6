#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "nnbox/box.hpp"

namespace testing_fixtures {

inline std::string read(const std::string& name) {
    std::ifstream in(std::string(NNBOX_FIXTURE_DIR) + "/" + name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nnbox::BoxFamily b3n5() { return nnbox::parse_family(read("b3n5.boxes")); }
inline nnbox::BoxFamily b4n7() { return nnbox::parse_family(read("b4n7.boxes")); }

}  // namespace testing_fixtures
