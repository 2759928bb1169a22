#include "gpr/ratfun.hpp"

#include <algorithm>
#include <cmath>

namespace gpr {

namespace {

// Cancels common root clusters of num and den by synthetic division, so the
// surviving coefficients stay close to the exact ones.
void cancel_common_roots(Polynomial& num, Polynomial& den, const Tolerances& tol) {
    if (num.degree() < 1 || den.degree() < 1) return;
    RootList num_roots = find_roots(num, tol);
    RootList den_roots = find_roots(den, tol);
    bool changed = false;
    for (auto& nr : num_roots.roots) {
        for (auto& dr : den_roots.roots) {
            if (dr.multiplicity == 0 || nr.multiplicity == 0) continue;
            if (std::abs(nr.location - dr.location) <=
                tol.cluster_radius(std::abs(nr.location))) {
                int m = std::min(nr.multiplicity, dr.multiplicity);
                Cpx shared = (nr.location + dr.location) / 2.0;
                for (int j = 0; j < m; ++j) {
                    num = num.deflate(shared);
                    den = den.deflate(shared);
                }
                nr.multiplicity -= m;
                dr.multiplicity -= m;
                changed = true;
            }
        }
    }
    (void)changed;
}

}  // namespace

RationalFunction::RationalFunction() : num_(), den_(Cpx(1.0)) {}

RationalFunction::RationalFunction(Cpx constant) : num_(constant), den_(Cpx(1.0)) {}

RationalFunction RationalFunction::make(const Polynomial& num, const Polynomial& den,
                                        const Tolerances& tol) {
    if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator is identically zero");
    RationalFunction f;
    if (num.is_zero()) return f;
    Polynomial n = num;
    Polynomial d = den;
    cancel_common_roots(n, d, tol);
    if (n.is_zero()) return f;
    if (d.is_zero()) throw Error(ErrorCode::Indeterminate, "normalization cancelled the denominator");
    Cpx lead = d.leading();
    f.num_ = n.scaled(Cpx(1.0) / lead);
    f.den_ = d.scaled(Cpx(1.0) / lead);
    return f;
}

RationalFunction RationalFunction::from_polynomial(const Polynomial& num, const Tolerances& tol) {
    return make(num, Polynomial(Cpx(1.0)), tol);
}

RationalFunction RationalFunction::variable() {
    RationalFunction f;
    f.num_ = Polynomial::variable();
    f.den_ = Polynomial(Cpx(1.0));
    return f;
}

RationalFunction RationalFunction::from_pole_zero(const PoleZeroGain& pzg, const Tolerances& tol) {
    std::vector<std::pair<Cpx, int>> zs, ps;
    for (const auto& r : pzg.zeros.roots) zs.emplace_back(r.location, r.multiplicity);
    for (const auto& r : pzg.poles.roots) ps.emplace_back(r.location, r.multiplicity);
    Polynomial num = Polynomial::from_roots(zs, pzg.gain);
    Polynomial den = Polynomial::from_roots(ps, Cpx(1.0));
    return make(num, den, tol);
}

int RationalFunction::degree() const {
    if (is_zero()) return 0;
    return std::max(num_.degree(), den_.degree());
}

RationalFunction RationalFunction::sharp(const Tolerances& tol) const {
    if (is_zero()) return RationalFunction();
    return make(num_.paraconjugate(), den_.paraconjugate(), tol);
}

RationalFunction RationalFunction::add(const RationalFunction& rhs, const Tolerances& tol) const {
    return make(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_, tol);
}

RationalFunction RationalFunction::sub(const RationalFunction& rhs, const Tolerances& tol) const {
    return make(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_, tol);
}

RationalFunction RationalFunction::mul(const RationalFunction& rhs, const Tolerances& tol) const {
    return make(num_ * rhs.num_, den_ * rhs.den_, tol);
}

RationalFunction RationalFunction::div(const RationalFunction& rhs, const Tolerances& tol) const {
    if (rhs.is_zero())
        throw Error(ErrorCode::DivisionByZeroFunction, "division by the zero function");
    return make(num_ * rhs.den_, den_ * rhs.num_, tol);
}

RationalFunction RationalFunction::invert(const Tolerances& tol) const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZeroFunction, "inverse of the zero function");
    return make(den_, num_, tol);
}

RationalFunction RationalFunction::scale(Cpx factor, const Tolerances& tol) const {
    return make(num_.scaled(factor), den_, tol);
}

RationalFunction RationalFunction::compose(const RationalFunction& inner,
                                           const Tolerances& tol) const {
    if (inner.is_constant() || inner.is_zero()) {
        Cpx c = inner.is_zero() ? Cpx(0.0) : inner.num_.coeff(0) / inner.den_.coeff(0);
        EvalResult v = evaluate(c, tol);
        if (v.is_pole)
            throw Error(ErrorCode::DegenerateComposition, "inner function is a constant pole of the outer one");
        return RationalFunction(v.value);
    }
    // Horner over rational arithmetic for numerator and denominator, sharing
    // the common power so cancellation happens once at the end.
    auto horner = [&](const Polynomial& poly) {
        RationalFunction acc;
        for (int k = poly.degree(); k >= 0; --k) {
            acc = acc.mul(inner, tol).add(RationalFunction(poly.coeff(k)), tol);
        }
        return acc;
    };
    RationalFunction top = horner(num_);
    RationalFunction bottom = horner(den_);
    if (bottom.is_zero())
        throw Error(ErrorCode::DegenerateComposition, "composed denominator vanishes identically");
    return top.div(bottom, tol);
}

EvalResult RationalFunction::evaluate(Cpx s, const Tolerances& tol) const {
    Cpx nv = num_.eval(s);
    Cpx dv = den_.eval(s);
    double den_floor = tol.coeff_trim_rel * std::max(den_.eval_scale(s), 1.0) * 1e3;
    if (std::abs(dv) <= den_floor) {
        double num_floor = tol.coeff_trim_rel * std::max(num_.eval_scale(s), 1.0) * 1e3;
        if (std::abs(nv) <= num_floor && !num_.is_zero())
            throw Error(ErrorCode::Indeterminate, "numerator and denominator both vanish");
        return {Cpx(0.0), true};
    }
    return {nv / dv, false};
}

Cpx RationalFunction::value_at(Cpx s, const Tolerances& tol) const {
    EvalResult r = evaluate(s, tol);
    if (r.is_pole) throw Error(ErrorCode::Indeterminate, "evaluation at a pole");
    return r.value;
}

PoleZeroGain RationalFunction::pole_zero(const Tolerances& tol) const {
    if (is_zero()) throw Error(ErrorCode::Indeterminate, "pole-zero form of the zero function");
    PoleZeroGain out;
    out.gain = num_.leading();  // den is monic
    if (num_.degree() > 0) out.zeros = find_roots(num_, tol);
    if (den_.degree() > 0) out.poles = find_roots(den_, tol);
    return out;
}

RegionSplit region_split(const RootList& roots, const Tolerances& tol) {
    RegionSplit out;
    for (const auto& r : roots.roots) {
        double a = tol.axis_tol(std::abs(r.location));
        if (std::abs(r.location.real()) <= a)
            out.axis.roots.push_back({Cpx(0.0, r.location.imag()), r.multiplicity});
        else if (r.location.real() > 0.0)
            out.plus.roots.push_back(r);
        else
            out.minus.roots.push_back(r);
    }
    out.plus.residual_bound = out.axis.residual_bound = out.minus.residual_bound =
        roots.residual_bound;
    return out;
}

bool approx_zero(const RationalFunction& f, double reference_scale, const Tolerances& tol) {
    if (f.is_zero()) return true;
    double scale = std::max(reference_scale, f.den().max_abs_coeff());
    return f.num().max_abs_coeff() <= tol.equality_rel * scale;
}

bool approx_equal(const RationalFunction& a, const RationalFunction& b, const Tolerances& tol) {
    // Layer 1: cross-multiplied coefficient identity.
    Polynomial cross = a.num() * b.den() - b.num() * a.den();
    double scale = std::max({(a.num() * b.den()).max_abs_coeff(),
                             (b.num() * a.den()).max_abs_coeff(), 1e-300});
    if (cross.max_abs_coeff() > tol.equality_rel * scale) return false;
    // Layer 2: sampled values on |s| = 2, skipping near-poles; catches
    // cancellation bugs that leave the coefficient identity intact.
    int agreed = 0;
    for (int k = 0; k < 16; ++k) {
        double angle = 2.0 * M_PI * k / 16.0 + 0.31;
        Cpx s = 2.0 * Cpx(std::cos(angle), std::sin(angle));
        EvalResult va = a.evaluate(s, tol);
        EvalResult vb = b.evaluate(s, tol);
        if (va.is_pole || vb.is_pole) continue;
        double mag = std::max({std::abs(va.value), std::abs(vb.value), 1.0});
        if (std::abs(va.value - vb.value) > 1e3 * tol.equality_rel * mag) return false;
        ++agreed;
    }
    return agreed > 0 || a.degree() == 0;
}

}  // namespace gpr
