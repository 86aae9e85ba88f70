#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace relnl {

/// Configuration failed validation. Carries one message per violated rule.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Multisimultaneity has no rule for choice events that are simultaneous in
/// either device frame. The boundary is a knife-edge; callers must perturb
/// the geometry instead of expecting a prediction.
class UndefinedRegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace relnl
