#include "gpr/evenodd.hpp"

#include "gpr/classify.hpp"

namespace gpr {

namespace {

// Half-sum (or half-difference) of n d# and n# d over the common denominator
// d d#. A numerator that is pure roundoff against the product scale means the
// part vanishes identically.
RationalFunction part_over_common_den(const RationalFunction& f, double sign,
                                      const Tolerances& tol) {
    const Polynomial& n = f.num();
    const Polynomial& d = f.den();
    Polynomial lhs = n * d.paraconjugate();
    Polynomial num = (lhs + (n.paraconjugate() * d).scaled(Cpx(sign))).scaled(Cpx(0.5));
    if (num.max_abs_coeff() <= 1e3 * tol.coeff_trim_rel * lhs.max_abs_coeff())
        return RationalFunction();
    return RationalFunction::make(num, d * d.paraconjugate(), tol);
}

}  // namespace

RationalFunction even_part(const RationalFunction& f, const Tolerances& tol) {
    if (f.is_zero()) return f;
    return part_over_common_den(f, 1.0, tol);
}

RationalFunction odd_part(const RationalFunction& f, const Tolerances& tol) {
    if (f.is_zero()) return f;
    return part_over_common_den(f, -1.0, tol);
}

bool even_product_law(const RationalFunction& f, const RationalFunction& g,
                      const Tolerances& tol) {
    RationalFunction lhs = even_part(f.mul(g, tol), tol);
    RationalFunction rhs = even_part(f, tol).mul(g, tol);
    return approx_equal(lhs, rhs, tol);
}

RationalFunction odd_square_gpe(const RationalFunction& f, const Tolerances& tol) {
    if (!is_odd(f, tol).verdict) throw Error(ErrorCode::NotOdd, "input is not odd");
    return f.mul(f, tol).scale(Cpx(-1.0), tol);
}

}  // namespace gpr
