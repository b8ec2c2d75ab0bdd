#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vfern {

struct PropertyResult {
    std::string module;
    std::string name;
    bool ok = true;
    std::string detail;
};

std::vector<PropertyResult> run_properties(std::uint64_t seed);

}  // namespace vfern
