#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zsindex {

enum class Errc {
    invalid_modulus,
    unsupported_modulus,
    invalid_element,
    non_unit,
    overflow,
    domain,
    degenerate,
    out_of_range,
    io,
    fault,
};

std::string_view to_string(Errc code) noexcept;

// Every library failure is reported through this exception. `code()` lets
// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace zsindex
