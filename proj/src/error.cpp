#include "zsindex/error.hpp"

namespace zsindex {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_modulus: return "invalid modulus";
    case Errc::unsupported_modulus: return "unsupported modulus";
    case Errc::invalid_element: return "invalid element";
    case Errc::non_unit: return "non-unit";
    case Errc::overflow: return "overflow";
    case Errc::domain: return "domain error";
    case Errc::degenerate: return "degenerate";
    case Errc::out_of_range: return "out of range";
    case Errc::io: return "I/O error";
    case Errc::fault: return "internal fault";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

} // namespace zsindex
