#pragma once

#include <stdexcept>
#include <string>

namespace achain {

/// An operation's named precondition does not hold for its input.
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(std::string which, const std::string& detail)
        : std::invalid_argument(which + ": " + detail), which_(std::move(which)) {}
    const std::string& which() const noexcept { return which_; }

private:
    std::string which_;
};

}  // namespace achain
