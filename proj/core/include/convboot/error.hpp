#pragma once

#include <stdexcept>
#include <string>

namespace convboot {

/// Caller supplied inputs that violate an operation's preconditions
/// (off-grid values in exact mode, grids too small to hold a convolution,
/// brackets that do not straddle the target, ...).
class PreconditionError : public std::invalid_argument {
  public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// The computation itself went wrong: residues after an inverse transform,
/// vanishing spectral denominators, a root finder that did not converge.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace convboot
