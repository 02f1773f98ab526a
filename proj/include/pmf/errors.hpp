#pragma once

#include <stdexcept>
#include <string>

namespace pmf {

// Error taxonomy, mirrored by the CLI exit codes:
//   bad_input            -> exit 2 (caller gave us something malformed)
//   precision_error,
//   separability_error   -> exit 3 (the computation is fine but cannot be
//                                   carried out at this precision / depth)
//   invariant_violation  -> exit 4 (always a bug)

struct bad_input : std::runtime_error {
    explicit bad_input(const std::string& what) : std::runtime_error(what) {}
};

struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

struct separability_error : std::runtime_error {
    explicit separability_error(const std::string& what) : std::runtime_error(what) {}
};

struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pmf
