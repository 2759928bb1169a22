#ifndef GPR_EVENODD_HPP
#define GPR_EVENODD_HPP

#include "gpr/ratfun.hpp"

namespace gpr {

/// f_even = (f + f#)/2, computed over the common denominator d d#.
RationalFunction even_part(const RationalFunction& f,
                           const Tolerances& tol = default_tolerances());

/// f_odd = (f - f#)/2, computed over the common denominator d d#.
RationalFunction odd_part(const RationalFunction& f,
                          const Tolerances& tol = default_tolerances());

/// Whether (f g)_even = f_even * g holds as a rational identity; true for all
/// f exactly when g is even.
bool even_product_law(const RationalFunction& f, const RationalFunction& g,
                      const Tolerances& tol = default_tolerances());

/// -f^2 for odd f; always even generalized positive. Throws NotOdd otherwise.
RationalFunction odd_square_gpe(const RationalFunction& f,
                                const Tolerances& tol = default_tolerances());

}  // namespace gpr

#endif
