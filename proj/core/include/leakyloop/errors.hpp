#pragma once

#include <stdexcept>
#include <string>

namespace leakyloop {

// Closure projection left the deformation outside its Newton basin.
class non_closable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative solve exhausted its budget; the message carries diagnostics.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The dominant Birman-Schwinger eigenvalue stayed below one over the whole
// bracket search: the grid is too coarse to resolve the bound state that the
// continuum operator is guaranteed to have.
class no_bound_state_error : public convergence_error {
public:
    using convergence_error::convergence_error;
};

// A negative-exponent chord moment met a vanishing chord (self-touching curve).
class singular_chord_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Eigenfunction evaluation requested on (or numerically on top of) the curve.
class point_on_support_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace leakyloop
