#ifndef GPR_CLASSIFY_HPP
#define GPR_CLASSIFY_HPP

#include <optional>

#include "gpr/ratfun.hpp"

namespace gpr {

struct Witness {
    enum class Kind {
        Frequency,    // an offending imaginary-axis point with the value there
        Point,        // an offending open-right-half-plane point with the value there
        PoleResidue,  // an offending pole with its residue (or the pole itself)
    };
    Kind kind = Kind::Frequency;
    Cpx location{0.0};
    Cpx value{0.0};
};

/// Outcome of a class membership test. `margin` is the minimum of the tested
/// (normalized) inequality over the sample set; `tolerance_used` is the bound
/// the verdict was decided against, so verdict <=> margin >= -tolerance_used.
struct ClassReport {
    bool verdict = false;
    double margin = 0.0;
    double tolerance_used = 0.0;
    std::optional<Witness> witness;

    explicit operator bool() const { return verdict; }
};

ClassReport is_even(const RationalFunction& f, const Tolerances& tol = default_tolerances());
ClassReport is_odd(const RationalFunction& f, const Tolerances& tol = default_tolerances());

/// Generalized positive: Re f(i w) >= 0 for all real w (including infinity).
/// Decided symbolically through the sign pattern of a real polynomial; the
/// margin and witness come from a dense axis scan.
ClassReport is_gp(const RationalFunction& f, const Tolerances& tol = default_tolerances());

/// Positive (positive real): no poles in the open right half plane, Re >= 0 on
/// the axis, simple axis poles with positive real residues, and at most a
/// simple pole at infinity with positive real ratio.
ClassReport is_p(const RationalFunction& f, const Tolerances& tol = default_tolerances());

ClassReport is_para_positive(const RationalFunction& f,
                             const Tolerances& tol = default_tolerances());

/// Positive and odd (Foster / lossless). Decided twice: as P intersect Odd and
/// through the partial-fraction form; disagreement throws InconsistentRoutes.
ClassReport is_po(const RationalFunction& f, const Tolerances& tol = default_tolerances());

/// Even generalized positive: maps the axis into the closed nonnegative reals.
ClassReport is_gpe(const RationalFunction& f, const Tolerances& tol = default_tolerances());

/// Generalized bounded: |f(i w)| <= 1 for all real w.
ClassReport is_gb(const RationalFunction& f, const Tolerances& tol = default_tolerances());

/// Bounded: generalized bounded plus analyticity in the closed right half plane.
ClassReport is_bounded(const RationalFunction& f, const Tolerances& tol = default_tolerances());

/// Membership of psi in the cone {g p g# : p positive} for the prescribed g.
/// Throws BadG when g or 1/g is not analytic in the closed left half plane.
ClassReport in_gp_g(const RationalFunction& psi, const RationalFunction& g,
                    const Tolerances& tol = default_tolerances());

/// Requires every zero and pole of g to lie in the closed right half plane.
void require_admissible_g(const RationalFunction& g, const Tolerances& tol = default_tolerances());

// Symbolic axis restrictions, exposed for the factorization module and the
// test oracles. Both return real-coefficient polynomials in the frequency w.

/// q with sign(q(w)) = sign(Re f(iw)); q = Re[ n(iw) conj(d(iw)) ].
Polynomial axis_real_numerator(const RationalFunction& f,
                               const Tolerances& tol = default_tolerances());
/// m with sign(m(w)) = sign(Im f(iw)).
Polynomial axis_imag_numerator(const RationalFunction& f,
                               const Tolerances& tol = default_tolerances());
/// u with sign(u(w)) = sign(1 - |f(iw)|^2); u = |d(iw)|^2 - |n(iw)|^2.
Polynomial axis_bound_numerator(const RationalFunction& f,
                                const Tolerances& tol = default_tolerances());

struct SignAnalysis {
    bool nonneg = false;
    std::optional<double> negative_at;  // a frequency where the polynomial is negative
};

/// Whether a real-coefficient polynomial is nonnegative on the whole real
/// line: every real root has even multiplicity, even degree, positive leading
/// coefficient.
SignAnalysis poly_nonneg_on_reals(const Polynomial& q,
                                  const Tolerances& tol = default_tolerances());

/// The log-spaced frequency grid used by every dense axis scan.
std::vector<double> axis_grid(const Tolerances& tol = default_tolerances());

/// min over the axis grid of Re f(iw) / (1 + |f(iw)|), with the argmin.
double axis_min_normalized_re(const RationalFunction& f, double* argmin_omega,
                              const Tolerances& tol = default_tolerances());

/// A point in the open right half plane where Re f < 0, if one can be found by
/// an escalating sample search (grids, rings around poles, a large circle).
std::optional<std::pair<Cpx, Cpx>> find_negative_point(
    const RationalFunction& f, const Tolerances& tol = default_tolerances());

}  // namespace gpr

#endif
