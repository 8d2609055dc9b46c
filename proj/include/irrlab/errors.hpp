#pragma once

#include <stdexcept>
#include <string>

namespace irrlab {

/// Error categories surfaced by the library. The CLI maps
/// `budget_exceeded` to exit code 2 and everything else to exit code 1.
enum class errc {
    invalid_spec,
    not_mixing,
    no_path,
    orbits_overlap,
    window_too_wide,
    budget_exceeded,
    orbit_escaped,
    bad_params,
    singular,
    range_violation,
    degenerate_range,
    precondition,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_spec: return "invalid_spec";
        case errc::not_mixing: return "not_mixing";
        case errc::no_path: return "no_path";
        case errc::orbits_overlap: return "orbits_overlap";
        case errc::window_too_wide: return "window_too_wide";
        case errc::budget_exceeded: return "budget_exceeded";
        case errc::orbit_escaped: return "orbit_escaped";
        case errc::bad_params: return "bad_params";
        case errc::singular: return "singular";
        case errc::range_violation: return "range_violation";
        case errc::degenerate_range: return "degenerate_range";
        case errc::precondition: return "precondition";
    }
    return "unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

} // namespace irrlab
