#pragma once

#include <cmath>
#include <sstream>

#include "convboot/error.hpp"

namespace convboot {

inline constexpr int kMaxBisectionIterations = 200;

/*!
 * Locate where a nondecreasing function first reaches `target`.
 *
 * Maintains f(lo) < target <= f(hi) and halves [lo, hi] until it is no wider
 * than `tol`, then returns its midpoint. Works for step functions, where the
 * answer is the jump location.
 */
template<class F>
double bisect_monotone(F&& f, double target, double lo, double hi, double tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw PreconditionError("bisection bracket must satisfy lo < hi");
    }
    if (!(tol > 0.0)) {
        throw PreconditionError("bisection tolerance must be positive");
    }
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (!(f_lo < target && target <= f_hi)) {
        std::ostringstream msg;
        msg << "bracket [" << lo << ", " << hi << "] does not straddle " << target
            << " (values " << f_lo << ", " << f_hi << ")";
        throw PreconditionError(msg.str());
    }
    for (int iter = 0; iter < kMaxBisectionIterations; ++iter) {
        if (hi - lo <= tol) {
            return 0.5 * (lo + hi);
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            // bracket has collapsed to adjacent doubles
            return mid;
        }
        if (f(mid) >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    throw NumericalError("bisection did not converge within the iteration cap");
}

} // namespace convboot
