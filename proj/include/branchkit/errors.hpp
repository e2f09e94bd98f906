#pragma once

#include <stdexcept>
#include <string>

namespace branchkit {

enum class ErrorKind {
    parse,
    basis_mismatch,
    unknown_pair,
    unimplemented_pair,
    singular,
    non_integral,
    non_admissible,
    invalid_input,
    ceiling,
    acyclicity,
    window,
    consistency
};

inline const char* kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::basis_mismatch: return "basis mismatch";
    case ErrorKind::unknown_pair: return "unknown pair";
    case ErrorKind::unimplemented_pair: return "pair listed but unimplemented";
    case ErrorKind::singular: return "parameter is singular";
    case ErrorKind::non_integral: return "parameter is not integral";
    case ErrorKind::non_admissible: return "parameter is not admissible";
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::ceiling: return "group order exceeds ceiling";
    case ErrorKind::acyclicity: return "multiset is not acyclic";
    case ErrorKind::window: return "window error";
    case ErrorKind::consistency: return "consistency failure";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& detail)
        : std::runtime_error(detail.empty() ? std::string(kind_name(k))
                                            : std::string(kind_name(k)) + ": " + detail),
          kind_(k)
    {
    }
    ErrorKind kind() const { return kind_; }

    // 2 for internal consistency failures, 1 for anything caused by the input
    int exit_code() const { return kind_ == ErrorKind::consistency ? 2 : 1; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& detail = {})
{
    throw Error(k, detail);
}

inline void check(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(ErrorKind::consistency, what);
}

}
