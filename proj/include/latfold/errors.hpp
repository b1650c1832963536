#pragma once

#include <stdexcept>
#include <string>

namespace latfold {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
struct domain_error : error {
    using error::error;
};

// Index out of range in a chain-edit operation.
struct range_error : error {
    using error::error;
};

// Exact rational arithmetic left the representable range, or an
// operation that must stay exact was asked to produce an inexact value.
struct exactness_error : error {
    using error::error;
};

// Unknown amino-acid identifier.
struct lookup_error : error {
    using error::error;
};

// Malformed input text; carries the 1-based line number when known.
struct parse_error : error {
    explicit parse_error(const std::string& what, long line = 0)
        : error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_number(line) {}
    long line_number;
};

// A residue is missing atoms required by the requested computation.
struct incomplete_residue_error : error {
    using error::error;
};

// A realized chain lacks sites (e.g. R-sites) the operation needs.
struct incomplete_chain_error : error {
    using error::error;
};

struct empty_chain_error : error {
    using error::error;
};

// Torsion angle undefined because of degenerate geometry.
struct undefined_dihedral_error : error {
    using error::error;
};

// Point sets too degenerate for a well-conditioned superposition.
struct conditioning_error : error {
    using error::error;
};

// An energy was requested for a chain that is not self-avoiding.
struct invalid_conformation_error : error {
    using error::error;
};

// Annealing could not find a self-avoiding start within its retry budget.
struct initialization_error : error {
    using error::error;
};

// Refusal to enumerate a search space above the configured cap.
struct size_limit_error : error {
    using error::error;
};

}  // namespace latfold
