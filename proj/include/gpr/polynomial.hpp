#ifndef GPR_POLYNOMIAL_HPP
#define GPR_POLYNOMIAL_HPP

#include <span>
#include <utility>
#include <vector>

#include "gpr/types.hpp"

namespace gpr {

/// Dense polynomial with complex coefficients stored in ascending degree.
/// Canonical form: the highest-degree coefficient is nonzero unless the
/// polynomial is identically zero. Instances are immutable values.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Cpx constant);
    explicit Polynomial(std::vector<Cpx> ascending_coeffs,
                        const Tolerances& tol = default_tolerances());

    /// The monomial s.
    static Polynomial variable();
    /// c * (s - r1)^m1 * (s - r2)^m2 * ...
    static Polynomial from_roots(std::span<const std::pair<Cpx, int>> roots, Cpx leading);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Cpx coeff(int k) const;
    const std::vector<Cpx>& coeffs() const { return coeffs_; }
    Cpx leading() const { return coeffs_.empty() ? Cpx(0.0) : coeffs_.back(); }
    double max_abs_coeff() const;

    Cpx eval(Cpx s) const;
    /// Sum_k |c_k| |s|^k, the natural backward-error scale at s.
    double eval_scale(Cpx s) const;

    Polynomial derivative() const;
    /// Coefficient-wise complex conjugate.
    Polynomial conj_coeffs() const;
    /// g#(s) = conj(g(-conj(s))): coefficient k maps to (-1)^k conj(c_k).
    Polynomial paraconjugate() const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator-() const;
    Polynomial scaled(Cpx factor) const;

    /// Long division: *this = q * divisor + r with deg r < deg divisor.
    std::pair<Polynomial, Polynomial> divrem(const Polynomial& divisor) const;
    /// Synthetic division by (s - root); the remainder is discarded.
    Polynomial deflate(Cpx root) const;

    bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

private:
    std::vector<Cpx> coeffs_;

    void trim(double rel_tol);
};

struct RootCluster {
    Cpx location;
    int multiplicity = 1;
};

/// Roots of a polynomial with multiplicities merged within the clustering
/// radius. residual_bound is the certified maximum of |p(root)| relative to
/// the largest coefficient modulus.
struct RootList {
    std::vector<RootCluster> roots;
    double residual_bound = 0.0;

    int total_multiplicity() const;
};

/// All complex roots of a nonzero polynomial. Simultaneous (Aberth-Ehrlich)
/// iteration with a companion-matrix fallback; clusters within the clustering
/// radius are merged and refined on the appropriate derivative order.
/// A constant input yields an empty list. Throws NonConvergence when the
/// iteration budget is exhausted with a bad residual.
RootList find_roots(const Polynomial& p, const Tolerances& tol = default_tolerances());

}  // namespace gpr

#endif
