#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cextdisc {

// All library failures carry a stable machine-readable kind tag next to the
// human-readable message, e.g. kind() == "NotAlternating".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void raise(const std::string& kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace cextdisc
