#include "relnl/errors.hpp"

#include <sstream>

namespace relnl {

namespace {

std::string join(const std::vector<std::string>& violations) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& v : violations) {
        os << "\n  - " << v;
    }
    return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

}  // namespace relnl
