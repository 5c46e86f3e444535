#pragma once

#include <stdexcept>
#include <string>

namespace toricdef {

// Domain error: invalid input or violated precondition.  CLI maps this to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Resource guard tripped (enumeration too large to run at desk scale).  CLI exit code 3.
class GuardError : public Error {
public:
    explicit GuardError(const std::string& what) : Error(what) {}
};

} // namespace toricdef
