#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbfimex {

/// Invalid parameters or mismatched inputs detected before any numerics run.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The augmented local RBF system of a node could not be factorized.
class StencilDegeneracyError : public std::runtime_error {
public:
    StencilDegeneracyError(std::size_t node, const std::string& what)
        : std::runtime_error("degenerate stencil at node " + std::to_string(node) + ": " + what),
          node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// BiCGSTAB hit a breakdown twice (once after a restart).
class SolverBreakdownError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; the message names the file and line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rbfimex
