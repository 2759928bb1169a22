#ifndef GPR_FACTOR_HPP
#define GPR_FACTOR_HPP

#include <optional>
#include <vector>

#include "gpr/ratfun.hpp"

namespace gpr {

/// psi = g * p * g# with p positive, g and 1/g analytic in the closed left
/// half plane, normalized by g(s_o) = 1 (hence p(s_o) = psi(s_o)).
struct GpFactorization {
    RationalFunction g;
    RationalFunction p;
    Cpx s_o{0.0};
};

/// Partial-fraction data of a lossless positive function:
/// p(s) = i r_o + a_o s + sum_j a_j / (s - i r_j).
struct FosterForm {
    double r_o = 0.0;
    double a_o = 0.0;
    std::vector<std::pair<double, double>> terms;  // (a_j > 0, r_j)

    RationalFunction to_rational(const Tolerances& tol = default_tolerances()) const;
};

/// Product-form parameters of an even generalized positive function:
/// psi = c * prod_j (1 - alpha_j (1 + (s - i beta_j)^2))
///         / prod_k (1 - gamma_k (1 + (s - i delta_k)^2)).
struct GpeProductForm {
    double c = 1.0;
    std::vector<std::pair<double, double>> numerator_terms;    // (alpha_j, beta_j)
    std::vector<std::pair<double, double>> denominator_terms;  // (gamma_k, delta_k)

    RationalFunction to_rational(const Tolerances& tol = default_tolerances()) const;
};

/// Canonical factorization of a generalized positive function. When s_o is not
/// supplied it is taken from a fixed axis sweep (0, +-i, +-2i, ..., then the
/// half-integer multiples) at the first point where psi is finite and nonzero.
GpFactorization factor_gp(const RationalFunction& psi, std::optional<Cpx> s_o = std::nullopt,
                          const Tolerances& tol = default_tolerances());

/// The minimal-degree member of the cone {g p g# : p positive}: split g = g1 g2
/// with g1# positive and deg(g1) maximal, and return g * g2#.
RationalFunction minimal_degree_in_gp_g(const RationalFunction& g,
                                        const Tolerances& tol = default_tolerances());

/// For a non-positive h with an interior witness h(alpha + i beta) = -gamma + i delta
/// (gamma > 0), the degree-one positive function p(s) = (gamma/alpha) s
/// - i (beta gamma / alpha + delta), which makes (p + h) vanish at the witness.
RationalFunction positive_counterexample(const RationalFunction& h,
                                         const Tolerances& tol = default_tolerances());

/// Spectral factor of an even generalized positive function: g with
/// psi = g g#, zeros and poles of g in the closed right half plane.
RationalFunction spectral_factor_gpe(const RationalFunction& psi,
                                     const Tolerances& tol = default_tolerances());

GpeProductForm gpe_product_form(const RationalFunction& psi,
                                const Tolerances& tol = default_tolerances());

/// Canonical form of an odd function: factor_gp plus the Foster data of the
/// resulting (lossless) positive part.
std::pair<RationalFunction, FosterForm> odd_canonical(
    const RationalFunction& psi, const Tolerances& tol = default_tolerances());

/// Oddness via the inner-product route: Re((1/g)(iw) * g(iw)^2) vanishes
/// identically. Must agree with is_odd.
bool odd_orthogonality_check(const RationalFunction& g,
                             const Tolerances& tol = default_tolerances());

/// Partial-fraction decomposition into the Foster form, when f has one:
/// at most a simple pole at infinity with a_o >= 0, i r_o constant part,
/// simple axis poles with positive real residues.
std::optional<FosterForm> foster_decompose(const RationalFunction& f,
                                           const Tolerances& tol = default_tolerances());

}  // namespace gpr

#endif
