#include "gpr/bounded.hpp"

#include <algorithm>
#include <cmath>

namespace gpr {

RationalFunction BlaschkeProduct::to_rational(const Tolerances& tol) const {
    RationalFunction beta(Cpx(1.0));
    for (const Cpx& w : factors) {
        RationalFunction factor = RationalFunction::make(
            Polynomial({-w, Cpx(1.0)}, tol), Polynomial({std::conj(w), Cpx(1.0)}, tol), tol);
        beta = beta.mul(factor, tol);
    }
    return beta;
}

RationalFunction cayley(const RationalFunction& p, const Tolerances& tol) {
    RationalFunction one(Cpx(1.0));
    RationalFunction denom = one.add(p, tol);
    if (denom.is_zero())
        throw Error(ErrorCode::DegenerateTransform, "1 + input vanishes identically");
    return one.sub(p, tol).div(denom, tol);
}

RationalFunction cayley_inv(const RationalFunction& f, const Tolerances& tol) {
    return cayley(f, tol);
}

std::pair<RationalFunction, BlaschkeProduct> blaschke_extract(const RationalFunction& f_gb,
                                                              const Tolerances& tol) {
    if (!is_gb(f_gb, tol).verdict)
        throw Error(ErrorCode::NotGB, "input is not generalized bounded");
    BlaschkeProduct beta;
    if (!f_gb.is_zero() && f_gb.den().degree() > 0) {
        RegionSplit poles = region_split(find_roots(f_gb.den(), tol), tol);
        for (const auto& pole : poles.plus.roots)
            for (int j = 0; j < pole.multiplicity; ++j) beta.factors.push_back(pole.location);
    }
    RationalFunction f_b = f_gb.mul(beta.to_rational(tol), tol);
    if (!is_bounded(f_b, tol).verdict)
        throw Error(ErrorCode::VerificationFailure, "extracted factor is not bounded");
    if (!approx_equal(f_b.div(beta.to_rational(tol), tol), f_gb, tol))
        throw Error(ErrorCode::VerificationFailure, "f_b / beta does not reproduce the input");
    return {f_b, beta};
}

RationalFunction gb_representation(const RationalFunction& g, const RationalFunction& p,
                                   const Tolerances& tol) {
    require_admissible_g(g, tol);
    if (!is_p(p, tol).verdict) throw Error(ErrorCode::NotPositive, "p must be positive");
    RationalFunction gg = g.mul(g.sharp(tol), tol);
    RationalFunction denom = gg.add(p, tol);
    if (denom.is_zero()) throw Error(ErrorCode::Degenerate, "g g# + p vanishes identically");
    RationalFunction f = gg.sub(p, tol).div(denom, tol);
    if (!is_gb(f, tol).verdict)
        throw Error(ErrorCode::VerificationFailure, "representation is not generalized bounded");
    return f;
}

namespace {

std::vector<Cpx> plus_roots(const Polynomial& poly, const Tolerances& tol) {
    std::vector<Cpx> out;
    if (poly.degree() < 1) return out;
    RegionSplit split = region_split(find_roots(poly, tol), tol);
    for (const auto& r : split.plus.roots)
        for (int j = 0; j < r.multiplicity; ++j) out.push_back(r.location);
    std::sort(out.begin(), out.end(), [](Cpx a, Cpx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

bool sets_distinct(const std::vector<Cpx>& a, const std::vector<Cpx>& b, const Tolerances& tol) {
    if (a.size() != b.size()) return true;
    for (size_t j = 0; j < a.size(); ++j)
        if (std::abs(a[j] - b[j]) > tol.cluster_radius(std::abs(a[j]))) return true;
    return false;
}

}  // namespace

GbInstabilityReport gb_g_instability_demo(const RationalFunction& g, double eps, double delta,
                                          const Tolerances& tol) {
    if (g.is_zero()) throw Error(ErrorCode::BadG, "g must not vanish");
    if (eps < 0.0 || delta < 0.0)
        throw Error(ErrorCode::BadData, "perturbations must be nonnegative");
    PoleZeroGain pzg = g.pole_zero(tol);
    RegionSplit zeros = region_split(pzg.zeros, tol);
    RegionSplit poles = region_split(pzg.poles, tol);
    if (!zeros.axis.roots.empty() || !zeros.minus.roots.empty() || !poles.axis.roots.empty() ||
        !poles.minus.roots.empty())
        throw Error(ErrorCode::BadG, "every zero and pole of g must lie in the open right half plane");

    auto shifted = [&](const RootList& roots, double shift) {
        std::vector<std::pair<Cpx, int>> out;
        for (const auto& r : roots.roots) out.emplace_back(r.location + shift, r.multiplicity);
        return out;
    };
    Polynomial n_shift = Polynomial::from_roots(shifted(zeros.plus, eps), pzg.gain);
    Polynomial d_shift = Polynomial::from_roots(shifted(poles.plus, delta), Cpx(1.0));

    RationalFunction p1 = RationalFunction::make(g.num(), n_shift, tol);
    RationalFunction p2 = RationalFunction::make(d_shift, g.den(), tol);

    // Build the two members from the substituted forms (n~ g# -+ d and
    // n g# -+ d~); the divided-out p1, p2 swing negative between the original
    // and shifted roots, so their positivity reports are informational.
    RationalFunction gsharp = g.sharp(tol);
    RationalFunction a1 = RationalFunction::from_polynomial(n_shift, tol).mul(gsharp, tol);
    RationalFunction d_orig = RationalFunction::from_polynomial(g.den(), tol);
    RationalFunction a2 =
        RationalFunction::from_polynomial(g.num(), tol).mul(gsharp, tol);
    RationalFunction d_pert = RationalFunction::from_polynomial(d_shift, tol);

    GbInstabilityReport report;
    report.p1_positive = is_p(p1, tol);
    report.p2_positive = is_p(p2, tol);
    report.f1 = a1.sub(d_orig, tol).div(a1.add(d_orig, tol), tol);
    report.f2 = a2.sub(d_pert, tol).div(a2.add(d_pert, tol), tol);
    report.f1_gb = is_gb(report.f1, tol);
    report.f2_gb = is_gb(report.f2, tol);
    report.f1_plus_poles = plus_roots(report.f1.den(), tol);
    report.f1_plus_zeros = plus_roots(report.f1.num(), tol);
    report.f2_plus_poles = plus_roots(report.f2.den(), tol);
    report.f2_plus_zeros = plus_roots(report.f2.num(), tol);
    report.pole_sets_distinct = sets_distinct(report.f1_plus_poles, report.f2_plus_poles, tol);
    report.zero_sets_distinct = sets_distinct(report.f1_plus_zeros, report.f2_plus_zeros, tol);
    return report;
}

}  // namespace gpr
