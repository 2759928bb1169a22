#ifndef GPR_BOUNDED_HPP
#define GPR_BOUNDED_HPP

#include "gpr/classify.hpp"

namespace gpr {

/// Finite Blaschke product prod_j (s - w_j)/(s + conj(w_j)), w_j in the open
/// right half plane; unimodular on the imaginary axis, gain 1 at infinity.
struct BlaschkeProduct {
    std::vector<Cpx> factors;

    bool empty() const { return factors.empty(); }
    RationalFunction to_rational(const Tolerances& tol = default_tolerances()) const;
};

/// f = (1 - p)/(1 + p); carries positive to bounded and GP to GB.
RationalFunction cayley(const RationalFunction& p, const Tolerances& tol = default_tolerances());
/// p = (1 - f)/(1 + f); the transform is an involution.
RationalFunction cayley_inv(const RationalFunction& f,
                            const Tolerances& tol = default_tolerances());

/// Splits a generalized bounded function as f_gb = f_b / beta with f_b bounded
/// and beta the Blaschke product over the C+ poles of f_gb.
std::pair<RationalFunction, BlaschkeProduct> blaschke_extract(
    const RationalFunction& f_gb, const Tolerances& tol = default_tolerances());

/// (g g# - p)(g g# + p)^{-1} for positive p and admissible g; always GB.
RationalFunction gb_representation(const RationalFunction& g, const RationalFunction& p,
                                   const Tolerances& tol = default_tolerances());

/// Demonstration data for the GB_g pole/zero instability: the two cone members
/// built from the perturbed numerator and denominator, with their C+ pole and
/// zero sets and the verified non-coincidence.
struct GbInstabilityReport {
    RationalFunction f1;
    RationalFunction f2;
    std::vector<Cpx> f1_plus_poles, f1_plus_zeros;
    std::vector<Cpx> f2_plus_poles, f2_plus_zeros;
    bool pole_sets_distinct = false;
    bool zero_sets_distinct = false;
    ClassReport p1_positive, p2_positive;
    ClassReport f1_gb, f2_gb;
};

/// g = n/d with every root of n and d in the open right half plane; the zeros
/// of n are shifted by eps and the roots of d by delta to build the two
/// members p1 = n/n~, p2 = d~/d of the construction.
GbInstabilityReport gb_g_instability_demo(const RationalFunction& g, double eps, double delta,
                                          const Tolerances& tol = default_tolerances());

}  // namespace gpr

#endif
