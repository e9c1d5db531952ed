#pragma once

#include <stdexcept>
#include <string>

namespace meancurv {

enum class ErrorKind {
    invalid_argument, // bad parameters (shape spec, config, sizes)
    structural,       // inconsistent mesh data (indices, counts)
    non_manifold,     // topological defect at a named vertex/edge
    degenerate,       // geometrically collapsed element
    parse,            // malformed file content
    io,               // stream / filesystem failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace meancurv
