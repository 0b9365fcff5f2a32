#pragma once

#include <stdexcept>
#include <string>

namespace divcalc {

enum class Errc {
    unknown_tag,
    algebra_mismatch,
    not_invertible,
    shape_mismatch,
    hadamard_undefined,
    quasidet_undefined,
    rc_singular,
    series_budget,
    arity_mismatch,
    bad_argument,
    parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace divcalc
