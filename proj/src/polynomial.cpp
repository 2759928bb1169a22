#include "gpr/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gpr {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::DivisionByZeroFunction: return "DivisionByZeroFunction";
        case ErrorCode::DegenerateComposition: return "DegenerateComposition";
        case ErrorCode::Indeterminate: return "Indeterminate";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::BadG: return "BadG";
        case ErrorCode::NotGP: return "NotGP";
        case ErrorCode::NotGPE: return "NotGPE";
        case ErrorCode::NotOdd: return "NotOdd";
        case ErrorCode::NotPositive: return "NotPositive";
        case ErrorCode::NotGB: return "NotGB";
        case ErrorCode::UnpairedRoot: return "UnpairedRoot";
        case ErrorCode::VerificationFailure: return "VerificationFailure";
        case ErrorCode::NoWitness: return "NoWitness";
        case ErrorCode::InconsistentRoutes: return "InconsistentRoutes";
        case ErrorCode::NodeOnAxis: return "NodeOnAxis";
        case ErrorCode::DuplicateNode: return "DuplicateNode";
        case ErrorCode::PickIndefinite: return "PickIndefinite";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::InfeasibleBasis: return "InfeasibleBasis";
        case ErrorCode::BadData: return "BadData";
        case ErrorCode::NodeHitsGZero: return "NodeHitsGZero";
        case ErrorCode::MixedProblems: return "MixedProblems";
        case ErrorCode::CertificateFailure: return "CertificateFailure";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::DegenerateTransform: return "DegenerateTransform";
        case ErrorCode::SyntaxError: return "SyntaxError";
    }
    return "UnknownError";
}

Polynomial::Polynomial(Cpx constant) {
    if (constant != Cpx(0.0)) coeffs_ = {constant};
}

Polynomial::Polynomial(std::vector<Cpx> ascending_coeffs, const Tolerances& tol)
    : coeffs_(std::move(ascending_coeffs)) {
    trim(tol.coeff_trim_rel);
}

Polynomial Polynomial::variable() {
    Polynomial p;
    p.coeffs_ = {Cpx(0.0), Cpx(1.0)};
    return p;
}

Polynomial Polynomial::from_roots(std::span<const std::pair<Cpx, int>> roots, Cpx leading) {
    Polynomial result(leading);
    for (const auto& [loc, mult] : roots) {
        Polynomial factor;
        factor.coeffs_ = {-loc, Cpx(1.0)};
        for (int j = 0; j < mult; ++j) result = result * factor;
    }
    return result;
}

Cpx Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Cpx(0.0);
    return coeffs_[static_cast<size_t>(k)];
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const Cpx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Cpx Polynomial::eval(Cpx s) const {
    Cpx acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::eval_scale(Cpx s) const {
    double acc = 0.0;
    double mag = std::abs(s);
    double pow_mag = 1.0;
    for (const Cpx& c : coeffs_) {
        acc += std::abs(c) * pow_mag;
        pow_mag *= mag;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    Polynomial d;
    if (coeffs_.size() <= 1) return d;
    d.coeffs_.resize(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k)
        d.coeffs_[k - 1] = coeffs_[k] * static_cast<double>(k);
    return d;
}

Polynomial Polynomial::conj_coeffs() const {
    Polynomial r = *this;
    for (Cpx& c : r.coeffs_) c = std::conj(c);
    return r;
}

Polynomial Polynomial::paraconjugate() const {
    Polynomial r = *this;
    for (size_t k = 0; k < r.coeffs_.size(); ++k) {
        r.coeffs_[k] = std::conj(r.coeffs_[k]);
        if (k % 2 == 1) r.coeffs_[k] = -r.coeffs_[k];
    }
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Cpx> out(std::max(coeffs_.size(), rhs.coeffs_.size()), Cpx(0.0));
    for (size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) out[k] += rhs.coeffs_[k];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<Cpx> out(coeffs_.size() + rhs.coeffs_.size() - 1, Cpx(0.0));
    for (size_t a = 0; a < coeffs_.size(); ++a)
        for (size_t b = 0; b < rhs.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * rhs.coeffs_[b];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (Cpx& c : r.coeffs_) c = -c;
    return r;
}

Polynomial Polynomial::scaled(Cpx factor) const {
    if (factor == Cpx(0.0)) return Polynomial();
    Polynomial r = *this;
    for (Cpx& c : r.coeffs_) c *= factor;
    return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divrem(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
    if (degree() < divisor.degree()) return {Polynomial(), *this};
    std::vector<Cpx> rem = coeffs_;
    int dq = degree() - divisor.degree();
    std::vector<Cpx> quot(static_cast<size_t>(dq) + 1, Cpx(0.0));
    Cpx lead = divisor.leading();
    for (int k = dq; k >= 0; --k) {
        Cpx factor = rem[static_cast<size_t>(k + divisor.degree())] / lead;
        quot[static_cast<size_t>(k)] = factor;
        for (int j = 0; j <= divisor.degree(); ++j)
            rem[static_cast<size_t>(k + j)] -= factor * divisor.coeffs_[static_cast<size_t>(j)];
    }
    rem.resize(static_cast<size_t>(std::max(divisor.degree(), 0)));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::deflate(Cpx root) const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Cpx> out(coeffs_.size() - 1, Cpx(0.0));
    Cpx carry = coeffs_.back();
    for (int k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) {
        out[static_cast<size_t>(k)] = carry;
        carry = coeffs_[static_cast<size_t>(k)] + carry * root;
    }
    return Polynomial(std::move(out));
}

void Polynomial::trim(double rel_tol) {
    double m = max_abs_coeff();
    if (m == 0.0) {
        coeffs_.clear();
        return;
    }
    double cut = rel_tol * m;
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
    if (coeffs_.empty()) return;
    // Interior coefficients below the same threshold are arithmetic noise.
    for (Cpx& c : coeffs_)
        if (std::abs(c) <= cut) c = Cpx(0.0);
}

int RootList::total_multiplicity() const {
    int t = 0;
    for (const auto& r : roots) t += r.multiplicity;
    return t;
}

namespace {

// One pass of the Aberth-Ehrlich simultaneous correction. Returns true when
// every approximation meets the backward-error stopping rule.
bool aberth_pass(const Polynomial& p, const Polynomial& dp, std::vector<Cpx>& z) {
    const double eps = std::numeric_limits<double>::epsilon();
    bool all_done = true;
    for (size_t k = 0; k < z.size(); ++k) {
        Cpx pz = p.eval(z[k]);
        double stop = 16.0 * eps * p.eval_scale(z[k]);
        if (std::abs(pz) <= stop) continue;
        all_done = false;
        Cpx dpz = dp.eval(z[k]);
        Cpx newton = (dpz == Cpx(0.0)) ? Cpx(0.0) : pz / dpz;
        Cpx sum(0.0);
        for (size_t j = 0; j < z.size(); ++j) {
            if (j == k) continue;
            Cpx diff = z[k] - z[j];
            if (std::abs(diff) < 1e-300) diff = Cpx(1e-300);
            sum += Cpx(1.0) / diff;
        }
        Cpx denom = Cpx(1.0) - newton * sum;
        Cpx step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
        z[k] -= step;
    }
    return all_done;
}

std::vector<Cpx> companion_roots(const Polynomial& p) {
    int n = p.degree();
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    Cpx lead = p.leading();
    for (int k = 0; k < n; ++k) comp(k, n - 1) = -p.coeff(k) / lead;
    for (int k = 1; k < n; ++k) comp(k, k - 1) = Cpx(1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    std::vector<Cpx> out(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) out[static_cast<size_t>(k)] = solver.eigenvalues()(k);
    return out;
}

std::vector<std::vector<size_t>> group_indices(const std::vector<Cpx>& z, double radius_base) {
    std::vector<std::vector<size_t>> groups;
    std::vector<bool> used(z.size(), false);
    for (size_t k = 0; k < z.size(); ++k) {
        if (used[k]) continue;
        std::vector<size_t> members{k};
        used[k] = true;
        // Grow the group until no unused point lies within radius of any member.
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t j = 0; j < z.size(); ++j) {
                if (used[j]) continue;
                for (size_t m : members) {
                    if (std::abs(z[j] - z[m]) <= radius_base * (1.0 + std::abs(z[m]))) {
                        members.push_back(j);
                        used[j] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        groups.push_back(std::move(members));
    }
    return groups;
}

// Newton refinement on the (m-1)-th derivative, where the target is a simple
// root; for m = 1 this is plain Newton on p itself.
Cpx polish_root(const Polynomial& p, Cpx z, int multiplicity) {
    Polynomial q = p;
    for (int j = 1; j < multiplicity; ++j) q = q.derivative();
    Polynomial dq = q.derivative();
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 20; ++iter) {
        Cpx qz = q.eval(z);
        if (std::abs(qz) <= 4.0 * eps * q.eval_scale(z)) break;
        Cpx dqz = dq.eval(z);
        if (dqz == Cpx(0.0)) break;
        Cpx step = qz / dqz;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
    }
    return z;
}

}  // namespace

RootList find_roots(const Polynomial& p, const Tolerances& tol) {
    if (p.is_zero()) throw Error(ErrorCode::Indeterminate, "roots of the zero polynomial");
    RootList result;
    if (p.degree() == 0) return result;

    // Exact zero low-order coefficients give roots at the origin directly.
    int origin_mult = 0;
    while (origin_mult < p.degree() && p.coeff(origin_mult) == Cpx(0.0)) ++origin_mult;
    Polynomial work = p;
    for (int j = 0; j < origin_mult; ++j) work = work.deflate(Cpx(0.0));

    std::vector<Cpx> approx;
    if (work.degree() > 0) {
        int n = work.degree();
        double lead = std::abs(work.leading());
        double radius = 0.0;
        for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(work.coeff(k)) / lead);
        radius = 1.0 + radius;
        approx.resize(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            double angle = 2.0 * M_PI * k / n + 0.4;
            approx[static_cast<size_t>(k)] = 0.7 * radius * Cpx(std::cos(angle), std::sin(angle));
        }
        Polynomial dwork = work.derivative();
        bool converged = false;
        for (int iter = 0; iter < tol.root_max_iter; ++iter) {
            if (aberth_pass(work, dwork, approx)) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            approx = companion_roots(work);
            for (int iter = 0; iter < 40; ++iter)
                if (aberth_pass(work, dwork, approx)) break;
        }
    }

    // The raw simultaneous iteration scatters the approximations of an m-fold
    // root over a ball of radius ~(residual)^(1/m), far wider than the
    // clustering radius. Merge bottom-up through a radius ladder: each merge
    // candidate is refined on the matching derivative order and kept only when
    // the refined point is genuinely a root of that multiplicity.
    std::vector<RootCluster> clusters;
    for (const Cpx& z : approx) clusters.push_back({polish_root(work, z, 1), 1});
    for (double radius : {tol.cluster_base, 1e-5, 1e-4, 1e-3, 1e-2}) {
        std::vector<Cpx> locations;
        for (const auto& c : clusters) locations.push_back(c.location);
        std::vector<RootCluster> next;
        for (const auto& group : group_indices(locations, radius)) {
            if (group.size() == 1) {
                next.push_back(clusters[group[0]]);
                continue;
            }
            Cpx weighted(0.0);
            int m = 0;
            double diameter = 0.0;
            for (size_t a : group) {
                weighted += clusters[a].location * static_cast<double>(clusters[a].multiplicity);
                m += clusters[a].multiplicity;
                for (size_t b : group)
                    diameter = std::max(diameter,
                                        std::abs(clusters[a].location - clusters[b].location));
            }
            Cpx mean = weighted / static_cast<double>(m);
            Cpx refined = polish_root(work, mean, m);
            bool stayed_local = std::abs(refined - mean) <=
                                4.0 * (diameter + radius * (1.0 + std::abs(mean)));
            if (stayed_local && std::abs(work.eval(refined)) <= 1e-12 * work.eval_scale(refined)) {
                next.push_back({refined, m});
            } else {
                for (size_t a : group) next.push_back(clusters[a]);
            }
        }
        clusters = std::move(next);
    }
    // Forced merge at the clustering radius so no two listed roots are closer
    // than the radius; locations average with multiplicity weights.
    {
        std::vector<Cpx> locations;
        for (const auto& c : clusters) locations.push_back(c.location);
        std::vector<RootCluster> merged;
        for (const auto& group : group_indices(locations, tol.cluster_base)) {
            Cpx weighted(0.0);
            int m = 0;
            for (size_t a : group) {
                weighted += clusters[a].location * static_cast<double>(clusters[a].multiplicity);
                m += clusters[a].multiplicity;
            }
            merged.push_back({weighted / static_cast<double>(m), m});
        }
        clusters = std::move(merged);
    }
    if (origin_mult > 0) clusters.push_back({Cpx(0.0), origin_mult});

    double scale = p.max_abs_coeff();
    double worst = 0.0;
    for (const RootCluster& c : clusters) {
        // Multiple roots evaluate to machine noise; the backward bound below
        // keeps the certificate meaningful for simple ill-conditioned ones.
        double resid = std::abs(p.eval(c.location)) / scale;
        worst = std::max(worst, resid);
        double backward = std::abs(p.eval(c.location)) / std::max(p.eval_scale(c.location), 1e-300);
        if (backward > tol.root_backward && resid > tol.root_backward)
            throw Error(ErrorCode::NonConvergence, "root refinement stalled");
    }
    std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    result.roots = std::move(clusters);
    result.residual_bound = worst;
    return result;
}

}  // namespace gpr
