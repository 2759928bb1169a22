#include "gpr/interpolate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace gpr {

const char* constraint_name(ConstraintClass c) {
    switch (c) {
        case ConstraintClass::P: return "P";
        case ConstraintClass::PO: return "PO";
        case ConstraintClass::GP_g: return "GP_g";
        case ConstraintClass::Odd_g: return "Odd_g";
        case ConstraintClass::GPE_symmetric: return "GPE_symmetric";
        case ConstraintClass::GP_onesided_real: return "GP_onesided_real";
    }
    return "?";
}

namespace {

void check_nodes(const std::vector<Cpx>& nodes, const std::vector<Cpx>& values,
                 const Tolerances& tol) {
    if (nodes.empty() || nodes.size() != values.size())
        throw Error(ErrorCode::BadData, "node and value lists must be nonempty and equal length");
    for (const Cpx& s : nodes)
        if (s.real() <= tol.axis_tol(std::abs(s)))
            throw Error(ErrorCode::NodeOnAxis, "interpolation nodes must lie in the open right half plane");
    for (size_t j = 0; j < nodes.size(); ++j)
        for (size_t k = j + 1; k < nodes.size(); ++k)
            if (std::abs(nodes[j] - nodes[k]) <= tol.cluster_radius(std::abs(nodes[j])))
                throw Error(ErrorCode::DuplicateNode, "interpolation nodes must be pairwise distinct");
}

std::vector<double> verify_residuals(const InterpProblem& problem, const RationalFunction& psi,
                                     bool also_mirrored, const Tolerances& tol) {
    std::vector<double> residuals;
    for (size_t j = 0; j < problem.nodes.size(); ++j) {
        EvalResult v = psi.evaluate(problem.nodes[j], tol);
        double r = v.is_pole ? 1e300 : std::abs(v.value - problem.values[j]);
        if (also_mirrored) {
            EvalResult vm = psi.evaluate(-problem.nodes[j], tol);
            r = std::max(r, vm.is_pole ? 1e300 : std::abs(vm.value - problem.values[j]));
        }
        residuals.push_back(r);
        if (r > tol.node_residual * (1.0 + std::abs(problem.values[j])))
            throw Error(ErrorCode::VerificationFailure, "interpolant misses a node value");
    }
    return residuals;
}

InterpSolution finish(const InterpProblem& problem, const RationalFunction& psi,
                      const Tolerances& tol) {
    bool mirrored = problem.constraint == ConstraintClass::GPE_symmetric;
    InterpSolution sol;
    sol.problem = problem;
    sol.psi = psi;
    sol.node_residuals = verify_residuals(problem, psi, mirrored, tol);
    sol.certificate = certify(problem, psi, tol);
    if (!sol.certificate.verdict)
        throw Error(ErrorCode::CertificateFailure, "solution failed its class certificate");
    return sol;
}

double psd_threshold(const PickMatrix& pick, const Tolerances& tol) {
    double scale = 0.0;
    double trace = 0.0;
    for (int j = 0; j < pick.n; ++j) {
        trace += pick.at(j, j).real();
        for (int k = 0; k < pick.n; ++k) scale = std::max(scale, std::abs(pick.at(j, k)));
    }
    return tol.pick_psd_rel * std::max(trace / pick.n, 0.0) + 1e-12 * std::max(scale, 1.0);
}

void require_psd(const PickMatrix& pick, const Tolerances& tol) {
    if (pick.min_eigenvalue < -psd_threshold(pick, tol))
        throw PickIndefiniteError(pick.inertia, pick.min_eigenvalue,
                                  "Pick matrix has " + std::to_string(pick.inertia.negative) +
                                      " negative eigenvalue(s)");
}

RationalFunction one() { return RationalFunction(Cpx(1.0)); }

}  // namespace

PickMatrix pick_matrix(const std::vector<Cpx>& nodes, const std::vector<Cpx>& values,
                       const Tolerances& tol) {
    check_nodes(nodes, values, tol);
    int n = static_cast<int>(nodes.size());
    PickMatrix pick;
    pick.n = n;
    pick.entries.resize(static_cast<size_t>(n) * n);
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            Cpx e = (values[static_cast<size_t>(j)] + std::conj(values[static_cast<size_t>(k)])) /
                    (nodes[static_cast<size_t>(j)] + std::conj(nodes[static_cast<size_t>(k)]));
            if (j == k) e = Cpx(e.real());
            pick.entries[static_cast<size_t>(j * n + k)] = e;
            m(j, k) = e;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    const auto& eig = solver.eigenvalues();
    pick.min_eigenvalue = eig.minCoeff();
    double zero_band = psd_threshold(pick, tol);
    double det = 1.0;
    for (int j = 0; j < n; ++j) {
        double lambda = eig(j);
        det *= lambda;
        if (lambda < -zero_band)
            ++pick.inertia.negative;
        else if (lambda > zero_band)
            ++pick.inertia.positive;
        else
            ++pick.inertia.zero;
    }
    pick.det_sign = (pick.inertia.zero > 0) ? 0 : (det > 0.0 ? 1 : -1);
    return pick;
}

InterpSolution solve(const InterpProblem& problem, const Tolerances& tol) {
    switch (problem.constraint) {
        case ConstraintClass::P: return solve_p(problem, tol);
        case ConstraintClass::PO: return solve_po(problem, tol);
        case ConstraintClass::GP_g:
        case ConstraintClass::Odd_g: return solve_gp_g(problem, tol);
        case ConstraintClass::GPE_symmetric: return solve_gpe_symmetric(problem, tol);
        case ConstraintClass::GP_onesided_real: return solve_gp_onesided_real(problem, tol);
    }
    throw Error(ErrorCode::BadData, "unknown constraint");
}

ClassReport certify(const InterpProblem& problem, const RationalFunction& psi,
                    const Tolerances& tol) {
    switch (problem.constraint) {
        case ConstraintClass::P: return is_p(psi, tol);
        case ConstraintClass::PO: return is_po(psi, tol);
        case ConstraintClass::GP_g:
            if (!problem.g) throw Error(ErrorCode::BadData, "GP_g problem without g");
            return in_gp_g(psi, *problem.g, tol);
        case ConstraintClass::Odd_g: {
            if (!problem.g) throw Error(ErrorCode::BadData, "Odd_g problem without g");
            ClassReport cone = in_gp_g(psi, *problem.g, tol);
            ClassReport odd = is_odd(psi, tol);
            ClassReport merged;
            merged.verdict = cone.verdict && odd.verdict;
            merged.margin = std::min(cone.margin, odd.margin);
            merged.tolerance_used = std::max(cone.tolerance_used, odd.tolerance_used);
            if (!merged.verdict) merged.witness = cone.verdict ? odd.witness : cone.witness;
            return merged;
        }
        case ConstraintClass::GPE_symmetric: return is_gpe(psi, tol);
        case ConstraintClass::GP_onesided_real: return is_gp(psi, tol);
    }
    throw Error(ErrorCode::BadData, "unknown constraint");
}

InterpSolution solve_p(const InterpProblem& problem, const Tolerances& tol) {
    check_nodes(problem.nodes, problem.values, tol);
    PickMatrix pick = pick_matrix(problem.nodes, problem.values, tol);
    require_psd(pick, tol);

    size_t n = problem.nodes.size();
    std::vector<Cpx> eta(n);
    for (size_t j = 0; j < n; ++j)
        eta[j] = (Cpx(1.0) - problem.values[j]) / (Cpx(1.0) + problem.values[j]);

    // Peel nodes with the half-plane Schur step; a unimodular value forces a
    // constant tail (the singular, reduced-rank branch).
    struct Stage {
        Cpx node;
        Cpx eta;
    };
    std::vector<Stage> stages;
    Cpx tail(0.0);
    const double boundary = 1e-9;
    for (size_t k = 0; k < n; ++k) {
        Cpx e = eta[k];
        if (std::abs(e) >= 1.0 - boundary) {
            tail = (std::abs(e) > 1.0) ? e / std::abs(e) : e;
            break;
        }
        stages.push_back({problem.nodes[k], e});
        for (size_t j = k + 1; j < n; ++j) {
            Cpx blaschke =
                (problem.nodes[j] - problem.nodes[k]) / (problem.nodes[j] + std::conj(problem.nodes[k]));
            eta[j] = (eta[j] - e) / (Cpx(1.0) - std::conj(e) * eta[j]) / blaschke;
        }
    }

    RationalFunction f(tail);
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        RationalFunction blaschke = RationalFunction::make(
            Polynomial({-it->node, Cpx(1.0)}, tol), Polynomial({std::conj(it->node), Cpx(1.0)}, tol), tol);
        RationalFunction bf = blaschke.mul(f, tol);
        f = bf.add(RationalFunction(it->eta), tol)
                .div(one().add(bf.scale(std::conj(it->eta), tol), tol), tol);
    }
    RationalFunction denom = one().add(f, tol);
    if (denom.is_zero()) throw Error(ErrorCode::Degenerate, "Cayley back-transform degenerates");
    RationalFunction p = one().sub(f, tol).div(denom, tol);
    return finish(problem, p, tol);
}

InterpSolution solve_po(const InterpProblem& problem, const Tolerances& tol) {
    check_nodes(problem.nodes, problem.values, tol);
    PickMatrix pick = pick_matrix(problem.nodes, problem.values, tol);
    require_psd(pick, tol);

    size_t n = problem.nodes.size();
    double value_scale = 0.0;
    for (const Cpx& w : problem.values) value_scale = std::max(value_scale, std::abs(w));

    // Deterministic pole ladder: no axis poles, then {0}, then {0, +-1, ...},
    // then the half-integer refinements.
    std::vector<std::vector<double>> ladder;
    ladder.push_back({});
    for (double spacing : {1.0, 0.5, 0.25}) {
        for (int count = 0; count <= 6; ++count) {
            std::vector<double> rung{0.0};
            for (int k = 1; k <= count; ++k) {
                rung.push_back(spacing * k);
                rung.push_back(-spacing * k);
            }
            if (spacing != 1.0 && count == 0) continue;
            ladder.push_back(std::move(rung));
        }
    }

    for (const auto& rung : ladder) {
        size_t m = rung.size();
        Eigen::MatrixXd a(2 * n, m + 2);
        Eigen::VectorXd b(2 * n);
        for (size_t j = 0; j < n; ++j) {
            Cpx s = problem.nodes[j];
            a(2 * j, 0) = 0.0;  // i r_o is purely imaginary
            a(2 * j + 1, 0) = 1.0;
            a(2 * j, 1) = s.real();
            a(2 * j + 1, 1) = s.imag();
            for (size_t t = 0; t < m; ++t) {
                Cpx c = Cpx(1.0) / (s - Cpx(0.0, rung[t]));
                a(2 * j, t + 2) = c.real();
                a(2 * j + 1, t + 2) = c.imag();
            }
            b(2 * j) = problem.values[j].real();
            b(2 * j + 1) = problem.values[j].imag();
        }
        Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
        double fit = (a * x - b).cwiseAbs().maxCoeff();
        if (fit > 1e-9 * (1.0 + value_scale)) continue;

        FosterForm form;
        form.r_o = x(0);
        form.a_o = x(1);
        if (form.a_o < -1e-10 * (1.0 + value_scale)) continue;
        form.a_o = std::max(form.a_o, 0.0);
        double coeff_scale = x.cwiseAbs().maxCoeff();
        bool admissible = true;
        for (size_t t = 0; t < m; ++t) {
            double a_t = x(static_cast<Eigen::Index>(t) + 2);
            if (std::abs(a_t) <= 1e-9 * (1.0 + coeff_scale)) continue;  // unused pole
            if (a_t < 0.0) {
                admissible = false;
                break;
            }
            form.terms.emplace_back(a_t, rung[t]);
        }
        if (!admissible) continue;
        RationalFunction p = form.to_rational(tol);
        try {
            return finish(problem, p, tol);
        } catch (const Error&) {
            continue;  // fit verified poorly at full precision; escalate
        }
    }
    throw Error(ErrorCode::BudgetExhausted, "no admissible Foster fit within the pole ladder");
}

InterpSolution solve_gp_g(const InterpProblem& problem, const Tolerances& tol) {
    if (!problem.g) throw Error(ErrorCode::BadData, "constraint requires a prescribed g");
    check_nodes(problem.nodes, problem.values, tol);
    const RationalFunction& g = *problem.g;
    require_admissible_g(g, tol);
    RationalFunction weight = g.mul(g.sharp(tol), tol);

    InterpProblem inner;
    inner.nodes = problem.nodes;
    inner.constraint = (problem.constraint == ConstraintClass::Odd_g) ? ConstraintClass::PO
                                                                      : ConstraintClass::P;
    for (size_t j = 0; j < problem.nodes.size(); ++j) {
        EvalResult v = weight.evaluate(problem.nodes[j], tol);
        if (v.is_pole || std::abs(v.value) < 1e-12)
            throw Error(ErrorCode::NodeHitsGZero, "g g# vanishes or blows up at a node");
        inner.values.push_back(problem.values[j] / v.value);
    }
    InterpSolution base = (inner.constraint == ConstraintClass::PO) ? solve_po(inner, tol)
                                                                    : solve_p(inner, tol);
    RationalFunction psi = g.mul(base.psi, tol).mul(g.sharp(tol), tol);
    return finish(problem, psi, tol);
}

namespace {

struct SymmetricData {
    std::vector<double> x;
    std::vector<double> y;
};

SymmetricData real_positive_data(const InterpProblem& problem, bool nonneg_values,
                                 const Tolerances& tol) {
    check_nodes(problem.nodes, problem.values, tol);
    SymmetricData data;
    for (size_t j = 0; j < problem.nodes.size(); ++j) {
        Cpx s = problem.nodes[j];
        Cpx w = problem.values[j];
        if (std::abs(s.imag()) > tol.axis_base * (1.0 + std::abs(s)) || s.real() <= 0.0)
            throw Error(ErrorCode::BadData, "nodes must be real and positive");
        if (std::abs(w.imag()) > tol.axis_base * (1.0 + std::abs(w)))
            throw Error(ErrorCode::BadData, "target values must be real");
        if (nonneg_values && w.real() < 0.0)
            throw Error(ErrorCode::BadData, "target values must be nonnegative");
        data.x.push_back(s.real());
        data.y.push_back(w.real());
    }
    return data;
}

// kappa (mu - s^2) prod_{k != j} (x_k^2 - s^2) with kappa > 0 and mu >= 0
// chosen so the value at +-x_j is y_j; every factor is even GP.
struct BasisTerm {
    double kappa = 0.0;
    double mu = 0.0;
    Polynomial poly;  // the full term
};

BasisTerm gpe_basis_term(const SymmetricData& data, size_t j, const Tolerances& tol) {
    BasisTerm term;
    double xj = data.x[j];
    double pj = 1.0;
    for (size_t k = 0; k < data.x.size(); ++k)
        if (k != j) pj *= data.x[k] * data.x[k] - xj * xj;
    double target = data.y[j];
    if (target == 0.0) return term;
    // sign(mu - x_j^2) must match sign(target / pj); both half-open feasible
    // intervals for mu are nonempty, pick the one nearest x_j^2.
    double want = target / pj;
    term.mu = (want > 0.0) ? xj * xj + 1.0 : xj * xj / 2.0;
    term.kappa = target / ((term.mu - xj * xj) * pj);
    if (term.kappa <= 0.0 || term.mu < 0.0)
        throw Error(ErrorCode::InfeasibleBasis, "no admissible basis parameters");
    Polynomial p{Cpx(term.kappa)};
    Polynomial factor({Cpx(term.mu), Cpx(0.0), Cpx(-1.0)}, tol);
    p = p * factor;
    for (size_t k = 0; k < data.x.size(); ++k) {
        if (k == j) continue;
        p = p * Polynomial({Cpx(data.x[k] * data.x[k]), Cpx(0.0), Cpx(-1.0)}, tol);
    }
    term.poly = p;
    return term;
}

}  // namespace

InterpSolution solve_gpe_symmetric(const InterpProblem& problem, const Tolerances& tol) {
    SymmetricData data = real_positive_data(problem, true, tol);
    RationalFunction psi;
    for (size_t j = 0; j < data.x.size(); ++j) {
        BasisTerm term = gpe_basis_term(data, j, tol);
        if (term.kappa == 0.0) continue;
        psi = psi.add(RationalFunction::from_polynomial(term.poly, tol), tol);
    }
    return finish(problem, psi, tol);
}

InterpSolution solve_gp_onesided_real(const InterpProblem& problem, const Tolerances& tol) {
    SymmetricData data = real_positive_data(problem, false, tol);
    RationalFunction psi;
    for (size_t j = 0; j < data.x.size(); ++j) {
        BasisTerm term = gpe_basis_term(data, j, tol);
        if (term.kappa == 0.0) continue;
        // p_j = (a + x_j)/(a + s) with a = sqrt(mu) cancels the (mu - s^2)
        // right-half-plane root of the basis term.
        double a = std::sqrt(term.mu);
        RationalFunction p = RationalFunction::make(Polynomial(Cpx(a + data.x[j])),
                                                    Polynomial({Cpx(a), Cpx(1.0)}, tol), tol);
        psi = psi.add(RationalFunction::from_polynomial(term.poly, tol).mul(p, tol), tol);
    }
    return finish(problem, psi, tol);
}

InterpSolution blend(const std::vector<InterpSolution>& solutions,
                     const std::vector<double>& weights, const Tolerances& tol) {
    if (solutions.empty() || solutions.size() != weights.size())
        throw Error(ErrorCode::BadData, "need one weight per solution");
    double total = 0.0;
    for (double w : weights) total += w;
    if (std::abs(total - 1.0) > 1e-9)
        throw Error(ErrorCode::BadData, "weights must sum to one");
    const InterpProblem& ref = solutions.front().problem;
    for (const InterpSolution& sol : solutions) {
        const InterpProblem& q = sol.problem;
        bool same = q.constraint == ref.constraint && q.nodes == ref.nodes && q.values == ref.values;
        if (same && ref.g.has_value() != q.g.has_value()) same = false;
        if (same && ref.g && !approx_equal(*ref.g, *q.g, tol)) same = false;
        if (!same) throw Error(ErrorCode::MixedProblems, "solutions solve different problems");
    }
    RationalFunction psi;
    for (size_t j = 0; j < solutions.size(); ++j)
        psi = psi.add(solutions[j].psi.scale(Cpx(weights[j]), tol), tol);

    InterpSolution out;
    out.problem = ref;
    out.psi = psi;
    out.node_residuals =
        verify_residuals(ref, psi, ref.constraint == ConstraintClass::GPE_symmetric, tol);
    out.certificate = certify(ref, psi, tol);
    if (!out.certificate.verdict)
        throw Error(ErrorCode::CertificateFailure, "blend left the constraint class");
    return out;
}

}  // namespace gpr
