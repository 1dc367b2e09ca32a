#pragma once

#include <stdexcept>
#include <string>

namespace gwl {

enum class errc {
    not_closed,
    no_identity_at_zero,
    not_associative,
    missing_inverse,
    not_normal,
    not_central,
    not_isomorphism,
    cap_exceeded,
    budget,
    timeout,
    too_large,
    parse_error,
    arity_too_large,
    dimension_too_small,
    abelian_input,
    decomposition_mismatch,
    internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

} // namespace gwl
