#ifndef GPR_INTERPOLATE_HPP
#define GPR_INTERPOLATE_HPP

#include <optional>
#include <vector>

#include "gpr/classify.hpp"
#include "gpr/factor.hpp"

namespace gpr {

enum class ConstraintClass {
    P,                 // classical positive interpolant
    PO,                // positive and odd (Foster form)
    GP_g,              // g p g# with the prescribed g
    Odd_g,             // odd member of the same cone
    GPE_symmetric,     // even GP interpolant, conditions at +-x_j
    GP_onesided_real,  // GP interpolant, conditions at x_j only
};

const char* constraint_name(ConstraintClass c);

struct InterpProblem {
    std::vector<Cpx> nodes;   // open right half plane, pairwise distinct
    std::vector<Cpx> values;
    ConstraintClass constraint = ConstraintClass::P;
    std::optional<RationalFunction> g;  // required for GP_g and Odd_g
};

struct Inertia {
    int negative = 0;
    int zero = 0;
    int positive = 0;
};

/// Hermitian matrix with entries (w_j + conj(w_k)) / (s_j + conj(s_k)) and its
/// eigenvalue summary.
struct PickMatrix {
    int n = 0;
    std::vector<Cpx> entries;  // row-major
    double min_eigenvalue = 0.0;
    int det_sign = 0;
    Inertia inertia;

    Cpx at(int j, int k) const { return entries[static_cast<size_t>(j * n + k)]; }
};

class PickIndefiniteError : public Error {
public:
    PickIndefiniteError(Inertia inertia, double min_eigenvalue, const std::string& message)
        : Error(ErrorCode::PickIndefinite, message),
          inertia(inertia),
          min_eigenvalue(min_eigenvalue) {}

    Inertia inertia;
    double min_eigenvalue = 0.0;
};

/// A solved problem: the interpolant, its class certificate (always true), and
/// the per-node residuals |psi(s_j) - w_j|.
struct InterpSolution {
    InterpProblem problem;
    RationalFunction psi;
    ClassReport certificate;
    std::vector<double> node_residuals;
};

PickMatrix pick_matrix(const std::vector<Cpx>& nodes, const std::vector<Cpx>& values,
                       const Tolerances& tol = default_tolerances());

/// Dispatch on problem.constraint.
InterpSolution solve(const InterpProblem& problem, const Tolerances& tol = default_tolerances());

/// Classical Nevanlinna-Pick in P via the Schur recursion with the terminal
/// parameter fixed to zero. Requires a PSD Pick matrix; the result has degree
/// at most the number of nodes.
InterpSolution solve_p(const InterpProblem& problem, const Tolerances& tol = default_tolerances());

/// Foster-form interpolant: pole sets from a deterministic ladder, linear
/// least squares in (r_o, a_o, a_j), first admissible fit wins.
InterpSolution solve_po(const InterpProblem& problem,
                        const Tolerances& tol = default_tolerances());

/// Rescale targets by g g#, solve in P (or PO for Odd_g), and conjugate back.
InterpSolution solve_gp_g(const InterpProblem& problem,
                          const Tolerances& tol = default_tolerances());

/// Lagrange-style sum of even GP basis polynomials matching values at +-x_j.
InterpSolution solve_gpe_symmetric(const InterpProblem& problem,
                                   const Tolerances& tol = default_tolerances());

/// One-sided real interpolation: each basis term multiplied by a degree-one
/// positive factor cancelling its right-half-plane root pair.
InterpSolution solve_gp_onesided_real(const InterpProblem& problem,
                                      const Tolerances& tol = default_tolerances());

/// Weighted combination of solutions of one problem; residuals and the class
/// certificate are re-verified, never assumed.
InterpSolution blend(const std::vector<InterpSolution>& solutions,
                     const std::vector<double>& weights,
                     const Tolerances& tol = default_tolerances());

/// Certificate of psi against the problem's constraint.
ClassReport certify(const InterpProblem& problem, const RationalFunction& psi,
                    const Tolerances& tol = default_tolerances());

}  // namespace gpr

#endif
