#pragma once

#include <stdexcept>
#include <string>

namespace colombeau {

// Evaluation hit a point outside a node's domain (reciprocal of an exact
// zero, log of a nonpositive value, ...). The message names the node.
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation's stated precondition failed (non-near-standard argument to
// the Fermat pseudometric, catalog point outside a GSF domain, ...).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text input could not be parsed; carries 1-based line/column.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
    int line;
    int col;
};

// Requested configuration is outside the supported envelope (dimension > 2
// convex hulls, unknown suite names, ...).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace colombeau
