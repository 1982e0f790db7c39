#pragma once

#include <stdexcept>
#include <string>

namespace khoval {

enum class errc {
    malformed_token,
    inconsistent_arcs,
    empty_input,
    orientation_conflict,
    generator_out_of_range,
    empty_word,
    disconnected_diagram,
    not_applicable,
    complexity_budget_exceeded,
    nondivisible_euler_characteristic,
    double_normalization,
    internal,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace khoval
