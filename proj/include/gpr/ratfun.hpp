#ifndef GPR_RATFUN_HPP
#define GPR_RATFUN_HPP

#include <optional>
#include <vector>

#include "gpr/polynomial.hpp"

namespace gpr {

/// Value of a rational function at a point. A pole on the evaluation point is
/// first-class data in this theory, not an error.
struct EvalResult {
    Cpx value{0.0};
    bool is_pole = false;
};

struct PoleZeroGain;

/// Normalized quotient of two complex polynomials: common root clusters of
/// numerator and denominator are cancelled, the denominator is monic, and the
/// gain is absorbed into the numerator. Immutable value type.
class RationalFunction {
public:
    /// The zero function.
    RationalFunction();
    explicit RationalFunction(Cpx constant);

    static RationalFunction make(const Polynomial& num, const Polynomial& den,
                                 const Tolerances& tol = default_tolerances());
    static RationalFunction from_polynomial(const Polynomial& num,
                                            const Tolerances& tol = default_tolerances());
    static RationalFunction variable();
    static RationalFunction from_pole_zero(const PoleZeroGain& pzg,
                                           const Tolerances& tol = default_tolerances());

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    /// max(deg num, deg den).
    int degree() const;

    /// f#(s) = conj(f(-conj(s))).
    RationalFunction sharp(const Tolerances& tol = default_tolerances()) const;

    RationalFunction add(const RationalFunction& rhs,
                         const Tolerances& tol = default_tolerances()) const;
    RationalFunction sub(const RationalFunction& rhs,
                         const Tolerances& tol = default_tolerances()) const;
    RationalFunction mul(const RationalFunction& rhs,
                         const Tolerances& tol = default_tolerances()) const;
    RationalFunction div(const RationalFunction& rhs,
                         const Tolerances& tol = default_tolerances()) const;
    RationalFunction invert(const Tolerances& tol = default_tolerances()) const;
    RationalFunction scale(Cpx factor, const Tolerances& tol = default_tolerances()) const;

    RationalFunction operator+(const RationalFunction& rhs) const { return add(rhs); }
    RationalFunction operator-(const RationalFunction& rhs) const { return sub(rhs); }
    RationalFunction operator*(const RationalFunction& rhs) const { return mul(rhs); }
    RationalFunction operator/(const RationalFunction& rhs) const { return div(rhs); }
    RationalFunction operator-() const { return scale(Cpx(-1.0)); }

    /// outer(inner(s)) as a rational function.
    RationalFunction compose(const RationalFunction& inner,
                             const Tolerances& tol = default_tolerances()) const;

    EvalResult evaluate(Cpx s, const Tolerances& tol = default_tolerances()) const;
    /// Value at s, throwing Indeterminate on a pole; convenience for call sites
    /// that have already excluded poles.
    Cpx value_at(Cpx s, const Tolerances& tol = default_tolerances()) const;

    PoleZeroGain pole_zero(const Tolerances& tol = default_tolerances()) const;

private:
    Polynomial num_;
    Polynomial den_;
};

/// Factored view of a rational function: gain, zeros and poles with multiplicity.
struct PoleZeroGain {
    Cpx gain{1.0};
    RootList zeros;
    RootList poles;
};

/// Roots partitioned by the sign of the real part; |Re| within the axis
/// tolerance counts as on-axis.
struct RegionSplit {
    RootList plus;
    RootList axis;
    RootList minus;
};

RegionSplit region_split(const RootList& roots, const Tolerances& tol = default_tolerances());

/// Two-layer equality predicate: the cross-multiplied coefficient identity
/// within the relative tolerance, plus a value cross-check on the circle |s|=2.
bool approx_equal(const RationalFunction& a, const RationalFunction& b,
                  const Tolerances& tol = default_tolerances());

/// Whether f is the zero function up to the relative tolerance against a
/// reference scale (defaults to f's own coefficient scale).
bool approx_zero(const RationalFunction& f, double reference_scale = 0.0,
                 const Tolerances& tol = default_tolerances());

}  // namespace gpr

#endif
