#ifndef GPR_TYPES_HPP
#define GPR_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace gpr {

using Cpx = std::complex<double>;

/// Every tolerance used by the library lives in this record so that
/// classification verdicts are reproducible under a single configuration.
struct Tolerances {
    /// Leading coefficients with modulus <= coeff_trim_rel * max|coeff| are dropped.
    double coeff_trim_rel = 1e-12;
    /// Root clustering radius: cluster_base * (1 + |root|).
    double cluster_base = 1e-6;
    /// Roots with |Re| <= axis_base * (1 + |root|) count as lying on the imaginary axis.
    double axis_base = 1e-7;
    /// Relative coefficient distance for the rational-function equality predicate.
    double equality_rel = 1e-8;
    /// Sign tests pass when margin >= -nonneg_margin * (1 + scale).
    double nonneg_margin = 1e-9;
    /// Pick matrix solvability: min eigenvalue >= -pick_psd_rel * trace/n.
    double pick_psd_rel = 1e-8;
    /// Interpolation node residual bound: |psi(s_j) - w_j| <= node_residual * (1 + |w_j|).
    double node_residual = 1e-7;
    /// Unimodularity of Blaschke products on the axis.
    double blaschke_unimod = 1e-10;
    /// Backward-error acceptance for refined roots.
    double root_backward = 1e-10;
    /// Iteration budget for the simultaneous root iteration.
    int root_max_iter = 400;
    /// Dense-grid sign oracle: number of log-spaced sample frequencies per sign.
    int grid_points = 4096;
    double grid_lo = 1e-4;
    double grid_hi = 1e4;

    double cluster_radius(double mag) const { return cluster_base * (1.0 + mag); }
    double axis_tol(double mag) const { return axis_base * (1.0 + mag); }
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

enum class ErrorCode {
    ZeroDenominator,
    DivisionByZeroFunction,
    DegenerateComposition,
    Indeterminate,
    NonConvergence,
    BadG,
    NotGP,
    NotGPE,
    NotOdd,
    NotPositive,
    NotGB,
    UnpairedRoot,
    VerificationFailure,
    NoWitness,
    InconsistentRoutes,
    NodeOnAxis,
    DuplicateNode,
    PickIndefinite,
    BudgetExhausted,
    InfeasibleBasis,
    BadData,
    NodeHitsGZero,
    MixedProblems,
    CertificateFailure,
    Degenerate,
    DegenerateTransform,
    SyntaxError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gpr

#endif
