#pragma once

#include <stdexcept>
#include <string>

namespace oscerr {

enum class Status {
    ok = 0,
    io_error = 1,
    parse_error = 2,
    invalid_argument = 3,
    dimension_mismatch = 4,
    empty_input = 5,
    unknown_label = 6,
    format_error = 7,
    trace_mismatch = 8,
    internal_error = 9,
};

const char* status_name(Status s) noexcept;

class Error : public std::runtime_error {
public:
    Error(Status status, const std::string& message)
        : std::runtime_error(message), status_(status) {}

    Status status() const noexcept { return status_; }

private:
    Status status_;
};

[[noreturn]] inline void raise(Status status, const std::string& message) {
    throw Error(status, message);
}

}  // namespace oscerr
