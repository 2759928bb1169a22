#include "gpr/classify.hpp"

#include <algorithm>
#include <cmath>

#include "gpr/factor.hpp"

namespace gpr {

namespace {

// Coefficients of n(iw) as a polynomial in the real frequency w.
std::vector<Cpx> lift_to_axis(const Polynomial& p) {
    std::vector<Cpx> out(p.coeffs().size());
    Cpx ik(1.0);
    for (size_t k = 0; k < out.size(); ++k) {
        out[k] = p.coeffs()[k] * ik;
        ik *= Cpx(0.0, 1.0);
    }
    return out;
}

std::vector<Cpx> conv(const std::vector<Cpx>& a, const std::vector<Cpx>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Cpx> out(a.size() + b.size() - 1, Cpx(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Extracts the real (or imaginary) parts of a coefficient vector, flushing
// individual coefficients and the whole result when they are pure roundoff
// relative to the complex coefficient scale.
Polynomial part_poly(const std::vector<Cpx>& c, bool imag_part, const Tolerances& tol) {
    double scale = 0.0;
    for (const Cpx& v : c) scale = std::max(scale, std::abs(v));
    std::vector<Cpx> out(c.size());
    double coeff_floor = 10.0 * tol.coeff_trim_rel * scale;
    double floor = 10.0 * tol.nonneg_margin * scale;
    double biggest = 0.0;
    for (size_t k = 0; k < c.size(); ++k) {
        double v = imag_part ? c[k].imag() : c[k].real();
        if (std::abs(v) <= coeff_floor) v = 0.0;
        out[k] = Cpx(v);
        biggest = std::max(biggest, std::abs(v));
    }
    if (biggest <= floor) return Polynomial();
    return Polynomial(std::move(out), tol);
}

bool poly_identity_zero(const Polynomial& e, double scale, double rel) {
    return e.max_abs_coeff() <= rel * std::max(scale, 1e-300);
}

}  // namespace

Polynomial axis_real_numerator(const RationalFunction& f, const Tolerances& tol) {
    std::vector<Cpx> n = lift_to_axis(f.num());
    std::vector<Cpx> d = lift_to_axis(f.den());
    for (Cpx& v : d) v = std::conj(v);
    return part_poly(conv(n, d), false, tol);
}

Polynomial axis_imag_numerator(const RationalFunction& f, const Tolerances& tol) {
    std::vector<Cpx> n = lift_to_axis(f.num());
    std::vector<Cpx> d = lift_to_axis(f.den());
    for (Cpx& v : d) v = std::conj(v);
    return part_poly(conv(n, d), true, tol);
}

Polynomial axis_bound_numerator(const RationalFunction& f, const Tolerances& tol) {
    std::vector<Cpx> n = lift_to_axis(f.num());
    std::vector<Cpx> d = lift_to_axis(f.den());
    std::vector<Cpx> nc = n;
    std::vector<Cpx> dc = d;
    for (Cpx& v : nc) v = std::conj(v);
    for (Cpx& v : dc) v = std::conj(v);
    Polynomial dd = part_poly(conv(d, dc), false, tol);
    Polynomial nn = part_poly(conv(n, nc), false, tol);
    Polynomial u = dd - nn;
    // All-noise difference (|f| identically 1 on the axis) flushes to zero.
    double scale = std::max(dd.max_abs_coeff(), nn.max_abs_coeff());
    if (u.max_abs_coeff() <= 1e3 * tol.coeff_trim_rel * scale) return Polynomial();
    return u;
}

SignAnalysis poly_nonneg_on_reals(const Polynomial& q, const Tolerances& tol) {
    SignAnalysis out;
    if (q.is_zero()) {
        out.nonneg = true;
        return out;
    }
    double lead = q.leading().real();
    auto hunt_negative = [&](std::vector<double> candidates) -> std::optional<double> {
        double scale = q.max_abs_coeff();
        for (double w : candidates) {
            double v = q.eval(Cpx(w)).real();
            if (v < -tol.nonneg_margin * scale * std::max(1.0, std::pow(std::abs(w), q.degree())))
                return w;
        }
        // Widen geometrically; an indefinite polynomial goes negative somewhere.
        for (double w = 1.0; w < 1e12; w *= 3.0) {
            for (double x : {w, -w}) {
                double v = q.eval(Cpx(x)).real();
                if (v < 0.0) return x;
            }
        }
        return std::nullopt;
    };

    if (q.degree() % 2 == 1 || lead < 0.0) {
        out.nonneg = false;
        out.negative_at = hunt_negative({-1e6, 1e6, -1e3, 1e3});
        return out;
    }
    RootList roots = find_roots(q, tol);
    std::vector<double> odd_real_roots;
    for (const auto& r : roots.roots) {
        if (std::abs(r.location.imag()) > tol.cluster_radius(std::abs(r.location))) continue;
        if (r.multiplicity % 2 == 1) odd_real_roots.push_back(r.location.real());
    }
    if (odd_real_roots.empty()) {
        out.nonneg = true;
        return out;
    }
    out.nonneg = false;
    std::sort(odd_real_roots.begin(), odd_real_roots.end());
    std::vector<double> candidates;
    candidates.push_back(odd_real_roots.front() - 1.0);
    for (size_t k = 0; k + 1 < odd_real_roots.size(); ++k)
        candidates.push_back(0.5 * (odd_real_roots[k] + odd_real_roots[k + 1]));
    candidates.push_back(odd_real_roots.back() + 1.0);
    out.negative_at = hunt_negative(std::move(candidates));
    return out;
}

std::vector<double> axis_grid(const Tolerances& tol) {
    int half = tol.grid_points / 2;
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(tol.grid_points) + 1);
    double ratio = std::log(tol.grid_hi / tol.grid_lo) / (half - 1);
    for (int k = 0; k < half; ++k) {
        double w = tol.grid_lo * std::exp(ratio * k);
        grid.push_back(w);
        grid.push_back(-w);
    }
    grid.push_back(0.0);
    return grid;
}

double axis_min_normalized_re(const RationalFunction& f, double* argmin_omega,
                              const Tolerances& tol) {
    double best = 1.0;
    double best_w = 0.0;
    for (double w : axis_grid(tol)) {
        EvalResult v = f.evaluate(Cpx(0.0, w), tol);
        if (v.is_pole) continue;
        double normalized = v.value.real() / (1.0 + std::abs(v.value));
        if (normalized < best) {
            best = normalized;
            best_w = w;
        }
    }
    if (argmin_omega) *argmin_omega = best_w;
    return best;
}

ClassReport is_even(const RationalFunction& f, const Tolerances& tol) {
    if (f.is_zero()) return {true, 0.0, tol.equality_rel, std::nullopt};
    const Polynomial& n = f.num();
    const Polynomial& d = f.den();
    Polynomial lhs = n * d.paraconjugate();
    Polynomial rhs = n.paraconjugate() * d;
    double scale = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
    ClassReport report;
    report.tolerance_used = tol.equality_rel;
    report.verdict = poly_identity_zero(lhs - rhs, scale, tol.equality_rel);
    double worst = 0.0;
    double worst_w = 0.0;
    for (double w : axis_grid(tol)) {
        EvalResult v = f.evaluate(Cpx(0.0, w), tol);
        if (v.is_pole) continue;
        double dev = std::abs(v.value.imag()) / (1.0 + std::abs(v.value));
        if (dev > worst) {
            worst = dev;
            worst_w = w;
        }
    }
    report.margin = -worst;
    if (!report.verdict)
        report.witness = Witness{Witness::Kind::Frequency, Cpx(0.0, worst_w),
                                 f.evaluate(Cpx(0.0, worst_w), tol).value};
    return report;
}

ClassReport is_odd(const RationalFunction& f, const Tolerances& tol) {
    if (f.is_zero()) return {true, 0.0, tol.equality_rel, std::nullopt};
    const Polynomial& n = f.num();
    const Polynomial& d = f.den();
    Polynomial lhs = n * d.paraconjugate();
    Polynomial rhs = n.paraconjugate() * d;
    double scale = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
    ClassReport report;
    report.tolerance_used = tol.equality_rel;
    report.verdict = poly_identity_zero(lhs + rhs, scale, tol.equality_rel);
    double worst = 0.0;
    double worst_w = 0.0;
    for (double w : axis_grid(tol)) {
        EvalResult v = f.evaluate(Cpx(0.0, w), tol);
        if (v.is_pole) continue;
        double dev = std::abs(v.value.real()) / (1.0 + std::abs(v.value));
        if (dev > worst) {
            worst = dev;
            worst_w = w;
        }
    }
    report.margin = -worst;
    if (!report.verdict)
        report.witness = Witness{Witness::Kind::Frequency, Cpx(0.0, worst_w),
                                 f.evaluate(Cpx(0.0, worst_w), tol).value};
    return report;
}

ClassReport is_gp(const RationalFunction& f, const Tolerances& tol) {
    ClassReport report;
    report.tolerance_used = tol.nonneg_margin;
    if (f.is_zero()) {
        report.verdict = true;
        return report;
    }
    Polynomial q = axis_real_numerator(f, tol);
    SignAnalysis sa = poly_nonneg_on_reals(q, tol);
    report.verdict = sa.nonneg;
    double argmin = 0.0;
    report.margin = axis_min_normalized_re(f, &argmin, tol);
    if (sa.nonneg) report.margin = std::max(report.margin, -tol.nonneg_margin);
    if (!sa.nonneg) {
        double w = sa.negative_at.value_or(argmin);
        EvalResult v = f.evaluate(Cpx(0.0, w), tol);
        report.witness = Witness{Witness::Kind::Frequency, Cpx(0.0, w), v.value};
        // The symbolic witness may be sharper than the grid's.
        if (!v.is_pole) {
            double m = v.value.real() / (1.0 + std::abs(v.value));
            report.margin = std::min(report.margin, m);
        }
    }
    return report;
}

std::optional<std::pair<Cpx, Cpx>> find_negative_point(const RationalFunction& f,
                                                       const Tolerances& tol) {
    auto probe = [&](Cpx s) -> std::optional<std::pair<Cpx, Cpx>> {
        if (s.real() <= 0.0) return std::nullopt;
        EvalResult v = f.evaluate(s, tol);
        if (!v.is_pole && v.value.real() < 0.0) return std::make_pair(s, v.value);
        return std::nullopt;
    };
    // Coarse-to-fine log grid over the open right half plane.
    for (int level = 0; level < 3; ++level) {
        int n = 12 << level;
        for (int a = 0; a < n; ++a) {
            double alpha = std::pow(10.0, -3.0 + 6.0 * a / (n - 1));
            for (int b = 0; b <= n; ++b) {
                double beta = (b == 0) ? 0.0
                                       : std::pow(10.0, -3.0 + 6.0 * (b - 1) / (n - 1));
                if (auto hit = probe(Cpx(alpha, beta))) return hit;
                if (auto hit = probe(Cpx(alpha, -beta))) return hit;
            }
        }
    }
    // Rings around every pole that touches the closed right half plane, where
    // a non-positive-real residue forces negative real parts nearby.
    PoleZeroGain pzg = f.pole_zero(tol);
    for (const auto& pole : pzg.poles.roots) {
        if (pole.location.real() < -tol.axis_tol(std::abs(pole.location))) continue;
        for (double radius = 1e-1; radius > 1e-9; radius *= 0.1) {
            for (int k = 0; k < 32; ++k) {
                double angle = 2.0 * M_PI * k / 32.0;
                Cpx s = pole.location + radius * Cpx(std::cos(angle), std::sin(angle));
                if (auto hit = probe(s)) return hit;
            }
        }
    }
    // Large half-circle for misbehavior at infinity.
    for (double radius = 1e2; radius < 1e10; radius *= 1e2) {
        for (int k = 1; k < 64; ++k) {
            double angle = -M_PI / 2 + M_PI * k / 64.0;
            if (auto hit = probe(radius * Cpx(std::cos(angle), std::sin(angle)))) return hit;
        }
    }
    return std::nullopt;
}

ClassReport is_p(const RationalFunction& f, const Tolerances& tol) {
    ClassReport report;
    report.tolerance_used = tol.nonneg_margin;
    if (f.is_zero()) {
        report.verdict = true;
        return report;
    }

    bool ok = true;
    std::optional<Witness> witness;

    PoleZeroGain pzg = f.pole_zero(tol);
    RegionSplit poles = region_split(pzg.poles, tol);
    if (!poles.plus.roots.empty()) {
        ok = false;
        witness = Witness{Witness::Kind::PoleResidue, poles.plus.roots.front().location, Cpx(0.0)};
    }

    if (ok) {
        Polynomial q = axis_real_numerator(f, tol);
        SignAnalysis sa = poly_nonneg_on_reals(q, tol);
        if (!sa.nonneg) {
            ok = false;
            double w = sa.negative_at.value_or(0.0);
            witness = Witness{Witness::Kind::Frequency, Cpx(0.0, w),
                              f.evaluate(Cpx(0.0, w), tol).value};
        }
    }

    if (ok) {
        for (const auto& pole : poles.axis.roots) {
            if (pole.multiplicity > 1) {
                ok = false;
                witness = Witness{Witness::Kind::PoleResidue, pole.location, Cpx(0.0)};
                break;
            }
            Polynomial deflated = f.den().deflate(pole.location);
            Cpx residue = f.num().eval(pole.location) / deflated.eval(pole.location);
            double mag = std::abs(residue);
            if (residue.real() <= 0.0 || std::abs(residue.imag()) > tol.axis_base * (1.0 + mag) * 10.0) {
                ok = false;
                witness = Witness{Witness::Kind::PoleResidue, pole.location, residue};
                break;
            }
        }
    }

    if (ok) {
        int rel_deg = f.num().degree() - f.den().degree();
        if (rel_deg >= 2) {
            ok = false;
            witness = Witness{Witness::Kind::PoleResidue, Cpx(0.0), f.num().leading()};
        } else if (rel_deg == 1) {
            Cpx ratio = f.num().leading();  // den monic
            if (ratio.real() <= 0.0 ||
                std::abs(ratio.imag()) > tol.axis_base * (1.0 + std::abs(ratio)) * 10.0) {
                ok = false;
                witness = Witness{Witness::Kind::PoleResidue, Cpx(0.0), ratio};
            }
        }
    }

    report.verdict = ok;
    report.margin = axis_min_normalized_re(f, nullptr, tol);
    if (!ok) {
        // The definition is violated somewhere inside C+; exhibit a point.
        if (auto hit = find_negative_point(f, tol)) {
            witness = Witness{Witness::Kind::Point, hit->first, hit->second};
            report.margin =
                std::min(report.margin, hit->second.real() / (1.0 + std::abs(hit->second)));
        }
        report.witness = witness;
    } else {
        report.margin = std::max(report.margin, -tol.nonneg_margin);
    }
    return report;
}

ClassReport is_para_positive(const RationalFunction& f, const Tolerances& tol) {
    return is_p(f.sharp(tol), tol);
}

ClassReport is_po(const RationalFunction& f, const Tolerances& tol) {
    ClassReport p_report = is_p(f, tol);
    ClassReport odd_report = is_odd(f, tol);
    bool route_a = p_report.verdict && odd_report.verdict;
    bool route_b = foster_decompose(f, tol).has_value();
    if (route_a != route_b)
        throw Error(ErrorCode::InconsistentRoutes,
                    "P-and-Odd test disagrees with the partial-fraction route");
    ClassReport report;
    report.verdict = route_a;
    report.margin = std::min(p_report.margin, odd_report.margin);
    report.tolerance_used = std::max(p_report.tolerance_used, odd_report.tolerance_used);
    if (!report.verdict) report.witness = p_report.verdict ? odd_report.witness : p_report.witness;
    return report;
}

ClassReport is_gpe(const RationalFunction& f, const Tolerances& tol) {
    ClassReport even_report = is_even(f, tol);
    ClassReport gp_report = is_gp(f, tol);
    ClassReport report;
    report.verdict = even_report.verdict && gp_report.verdict;
    if (!even_report.verdict) {
        report.margin = even_report.margin;
        report.tolerance_used = even_report.tolerance_used;
        report.witness = even_report.witness;
    } else {
        report.margin = gp_report.margin;
        report.tolerance_used = gp_report.tolerance_used;
        report.witness = gp_report.witness;
    }
    return report;
}

namespace {

double axis_min_normalized_bound(const RationalFunction& f, double* argmin_omega,
                                 const Tolerances& tol) {
    double best = 1.0;
    double best_w = 0.0;
    for (double w : axis_grid(tol)) {
        EvalResult v = f.evaluate(Cpx(0.0, w), tol);
        double m;
        if (v.is_pole) {
            m = -1.0;
        } else {
            double a2 = std::norm(v.value);
            m = (1.0 - a2) / (1.0 + a2);
        }
        if (m < best) {
            best = m;
            best_w = w;
        }
    }
    if (argmin_omega) *argmin_omega = best_w;
    return best;
}

}  // namespace

ClassReport is_gb(const RationalFunction& f, const Tolerances& tol) {
    ClassReport report;
    report.tolerance_used = tol.nonneg_margin;
    if (f.is_zero()) {
        report.verdict = true;
        report.margin = 1.0;
        return report;
    }
    Polynomial u = axis_bound_numerator(f, tol);
    SignAnalysis sa = poly_nonneg_on_reals(u, tol);
    report.verdict = sa.nonneg;
    double argmin = 0.0;
    report.margin = axis_min_normalized_bound(f, &argmin, tol);
    if (!sa.nonneg) {
        double w = sa.negative_at.value_or(argmin);
        report.witness =
            Witness{Witness::Kind::Frequency, Cpx(0.0, w), f.evaluate(Cpx(0.0, w), tol).value};
    } else {
        report.margin = std::max(report.margin, -tol.nonneg_margin);
    }
    return report;
}

ClassReport is_bounded(const RationalFunction& f, const Tolerances& tol) {
    ClassReport report = is_gb(f, tol);
    if (!report.verdict) return report;
    if (!f.is_zero() && f.den().degree() > 0) {
        RegionSplit poles = region_split(find_roots(f.den(), tol), tol);
        if (!poles.plus.roots.empty() || !poles.axis.roots.empty()) {
            const RootCluster& bad =
                poles.plus.roots.empty() ? poles.axis.roots.front() : poles.plus.roots.front();
            report.verdict = false;
            report.witness = Witness{Witness::Kind::PoleResidue, bad.location, Cpx(0.0)};
            report.margin = -1.0;  // |f| is unbounded in the closed right half plane
        }
    }
    return report;
}

void require_admissible_g(const RationalFunction& g, const Tolerances& tol) {
    if (g.is_zero()) throw Error(ErrorCode::BadG, "g must not vanish identically");
    PoleZeroGain pzg = g.pole_zero(tol);
    RegionSplit zeros = region_split(pzg.zeros, tol);
    RegionSplit poles = region_split(pzg.poles, tol);
    if (!zeros.minus.roots.empty() || !poles.minus.roots.empty())
        throw Error(ErrorCode::BadG, "g has a zero or pole in the open left half plane");
}

ClassReport in_gp_g(const RationalFunction& psi, const RationalFunction& g,
                    const Tolerances& tol) {
    require_admissible_g(g, tol);
    if (psi.is_zero()) return {true, 0.0, tol.nonneg_margin, std::nullopt};
    RationalFunction p = psi.div(g.mul(g.sharp(tol), tol), tol);
    return is_p(p, tol);
}

}  // namespace gpr
