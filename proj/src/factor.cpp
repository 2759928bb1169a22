#include "gpr/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpr/classify.hpp"

namespace gpr {

namespace {

bool near_real(Cpx v, double rel) { return std::abs(v.imag()) <= rel * (1.0 + std::abs(v)); }

// Axis sweep 0, +-1, +-2, ..., then +-1/2, +-3/2, ...; deterministic order.
std::vector<Cpx> axis_sweep() {
    std::vector<Cpx> pts;
    pts.emplace_back(0.0, 0.0);
    for (int k = 1; k <= 24; ++k) {
        pts.emplace_back(0.0, static_cast<double>(k));
        pts.emplace_back(0.0, -static_cast<double>(k));
    }
    for (int k = 0; k <= 24; ++k) {
        pts.emplace_back(0.0, k + 0.5);
        pts.emplace_back(0.0, -(k + 0.5));
    }
    return pts;
}

bool finite_nonzero_at(const RationalFunction& f, Cpx s, const Tolerances& tol) {
    Cpx nv = f.num().eval(s);
    Cpx dv = f.den().eval(s);
    double nfloor = 1e-9 * std::max(f.num().eval_scale(s), 1e-300);
    double dfloor = 1e-9 * std::max(f.den().eval_scale(s), 1e-300);
    (void)tol;
    return std::abs(nv) > nfloor && std::abs(dv) > dfloor;
}

Cpx choose_normalization_point(const RationalFunction& psi, const Tolerances& tol) {
    for (Cpx s : axis_sweep())
        if (finite_nonzero_at(psi, s, tol)) return s;
    throw Error(ErrorCode::VerificationFailure,
                "no axis point with a finite nonzero value was found in the sweep");
}

}  // namespace

RationalFunction FosterForm::to_rational(const Tolerances& tol) const {
    RationalFunction p = RationalFunction(Cpx(0.0, r_o))
                             .add(RationalFunction::variable().scale(Cpx(a_o), tol), tol);
    for (const auto& [a_j, r_j] : terms) {
        Polynomial den({Cpx(0.0, -r_j), Cpx(1.0)}, tol);
        p = p.add(RationalFunction::make(Polynomial(Cpx(a_j)), den, tol), tol);
    }
    return p;
}

RationalFunction GpeProductForm::to_rational(const Tolerances& tol) const {
    auto term = [&](double alpha, double beta) {
        // 1 - alpha (1 + (s - i beta)^2) expanded in s.
        return Polynomial({Cpx(1.0 - alpha + alpha * beta * beta), Cpx(0.0, 2.0 * alpha * beta),
                           Cpx(-alpha)},
                          tol);
    };
    Polynomial num{Cpx(c)};
    for (const auto& [alpha, beta] : numerator_terms) num = num * term(alpha, beta);
    Polynomial den{Cpx(1.0)};
    for (const auto& [gamma, delta] : denominator_terms) den = den * term(gamma, delta);
    return RationalFunction::make(num, den, tol);
}

namespace {

// Removes the roots of g and their mirrors -conj(.) from psi's root clusters,
// leaving the roots of p. Division by g g# would do the same arithmetic but
// smears deflation noise over p's coefficients; working on the cluster lists
// keeps exact axis factors exact. Returns nullopt if the pairing fails.
std::optional<std::vector<std::pair<Cpx, int>>> subtract_g_roots(
    const std::vector<RootCluster>& psi_roots, const std::vector<RootCluster>& g_roots,
    const Tolerances& tol) {
    std::vector<RootCluster> remaining = psi_roots;
    auto remove = [&](Cpx loc, int count) -> bool {
        for (auto& r : remaining) {
            if (r.multiplicity >= count &&
                std::abs(r.location - loc) <= 10.0 * tol.cluster_radius(std::abs(loc))) {
                r.multiplicity -= count;
                return true;
            }
        }
        return false;
    };
    for (const auto& gr : g_roots) {
        bool on_axis = std::abs(gr.location.real()) <= tol.axis_tol(std::abs(gr.location));
        if (on_axis) {
            if (!remove(gr.location, 2 * gr.multiplicity)) return std::nullopt;
        } else {
            if (!remove(gr.location, gr.multiplicity)) return std::nullopt;
            if (!remove(-std::conj(gr.location), gr.multiplicity)) return std::nullopt;
        }
    }
    std::vector<std::pair<Cpx, int>> out;
    for (const auto& r : remaining)
        if (r.multiplicity > 0) out.emplace_back(r.location, r.multiplicity);
    return out;
}

// p with the structure (psi roots minus g's and their mirrors) and the gain
// fixed by p(at) = target.
std::optional<RationalFunction> structured_quotient(const PoleZeroGain& psi_parts,
                                                    const PoleZeroGain& g_parts, Cpx at,
                                                    Cpx target, const Tolerances& tol) {
    auto zeros = subtract_g_roots(psi_parts.zeros.roots, g_parts.zeros.roots, tol);
    auto poles = subtract_g_roots(psi_parts.poles.roots, g_parts.poles.roots, tol);
    if (!zeros || !poles) return std::nullopt;
    RationalFunction monic = RationalFunction::make(Polynomial::from_roots(*zeros, Cpx(1.0)),
                                                    Polynomial::from_roots(*poles, Cpx(1.0)), tol);
    EvalResult base = monic.evaluate(at, tol);
    if (base.is_pole || std::abs(base.value) < 1e-12) return std::nullopt;
    Cpx gain = target / base.value;
    // A positive function with a pole or zero at infinity has a real positive
    // gain; rounding in the target value must not leave a phase on it.
    int rel_deg = monic.num().degree() - monic.den().degree();
    if (rel_deg != 0 && std::abs(gain.imag()) <= 1e-6 * std::abs(gain)) gain = Cpx(gain.real());
    return monic.scale(gain, tol);
}

}  // namespace

GpFactorization factor_gp(const RationalFunction& psi, std::optional<Cpx> s_o,
                          const Tolerances& tol) {
    if (psi.is_zero()) throw Error(ErrorCode::NotGP, "the zero function has no factorization");
    ClassReport gp = is_gp(psi, tol);
    if (!gp.verdict) throw Error(ErrorCode::NotGP, "input is not generalized positive");

    PoleZeroGain pzg = psi.pole_zero(tol);
    RegionSplit zeros = region_split(pzg.zeros, tol);
    RegionSplit poles = region_split(pzg.poles, tol);

    Cpx point;
    if (s_o) {
        point = *s_o;
        if (std::abs(point.real()) > tol.axis_tol(std::abs(point)))
            throw Error(ErrorCode::BadData, "normalization point must lie on the imaginary axis");
        if (!finite_nonzero_at(psi, point, tol))
            throw Error(ErrorCode::BadData, "psi must be finite and nonzero at the normalization point");
        point = Cpx(0.0, point.imag());
    } else {
        point = choose_normalization_point(psi, tol);
    }
    Cpx psi_at_point = psi.value_at(point, tol);

    // C+ zeros and poles go to g at full multiplicity; axis ones contribute
    // floor(m/2), leaving p with at most a simple axis zero or pole.
    PoleZeroGain g_parts;
    g_parts.gain = Cpx(1.0);
    for (const auto& r : zeros.plus.roots) g_parts.zeros.roots.push_back(r);
    for (const auto& r : zeros.axis.roots)
        if (r.multiplicity >= 2) g_parts.zeros.roots.push_back({r.location, r.multiplicity / 2});
    for (const auto& r : poles.plus.roots) g_parts.poles.roots.push_back(r);
    for (const auto& r : poles.axis.roots)
        if (r.multiplicity >= 2) g_parts.poles.roots.push_back({r.location, r.multiplicity / 2});

    auto build_p = [&](const PoleZeroGain& g_sel) -> RationalFunction {
        RationalFunction g0 = RationalFunction::from_pole_zero(g_sel, tol);
        Cpx weight = std::norm(g0.value_at(point, tol));  // g0(s_o) conj(g0(s_o))
        std::optional<RationalFunction> structured =
            structured_quotient(pzg, g_sel, point, psi_at_point / weight, tol);
        if (structured) return *structured;
        return psi.div(g0.mul(g0.sharp(tol), tol), tol);
    };

    // An odd-multiplicity axis root of psi leaves p either a simple pole or a
    // simple zero there: the two parities differ by the axis-nonnegative unit
    // -(s - ir)^2, so each location is fixed independently by the residue
    // sign. Move the factor into g wherever p's residue comes out negative.
    {
        RationalFunction p0 = build_p(g_parts);
        PoleZeroGain p_parts = p0.pole_zero(tol);
        for (const auto& pole : region_split(p_parts.poles, tol).axis.roots) {
            if (pole.multiplicity != 1) continue;
            Cpx residue =
                p0.num().eval(pole.location) / p0.den().deflate(pole.location).eval(pole.location);
            if (residue.real() < 0.0) g_parts.poles.roots.push_back({pole.location, 1});
        }
        for (const auto& zero : region_split(p_parts.zeros, tol).axis.roots) {
            if (zero.multiplicity != 1) continue;
            Cpx inv_residue =
                p0.den().eval(zero.location) / p0.num().deflate(zero.location).eval(zero.location);
            if (inv_residue.real() < 0.0) g_parts.zeros.roots.push_back({zero.location, 1});
        }
    }

    RationalFunction g = RationalFunction::from_pole_zero(g_parts, tol);
    Cpx gv = g.value_at(point, tol);
    g = g.scale(Cpx(1.0) / gv, tol);

    std::optional<RationalFunction> structured =
        structured_quotient(pzg, g_parts, point, psi_at_point, tol);
    RationalFunction p = structured ? *structured : psi.div(g.mul(g.sharp(tol), tol), tol);

    ClassReport p_report = is_p(p, tol);
    if (!p_report.verdict)
        throw Error(ErrorCode::VerificationFailure,
                    "constructed p fails the positivity test (structured=" +
                        std::to_string(structured.has_value()) + ")");
    RationalFunction recon = g.mul(p, tol).mul(g.sharp(tol), tol);
    if (!approx_equal(recon, psi, tol))
        throw Error(ErrorCode::VerificationFailure, "g p g# does not reproduce the input");
    return {g, p, point};
}

namespace {

// Smallest phase interval containing the sampled arguments of the axis values
// of h; the factorization below needs a unit constant c with Re(c h) >= 0 on
// the axis, which exists when the argument range fits inside a half turn.
std::optional<double> phase_window_center(const RationalFunction& h, const Tolerances& tol) {
    std::vector<double> args;
    for (double w : axis_grid(tol)) {
        EvalResult v = h.evaluate(Cpx(0.0, w), tol);
        if (v.is_pole || std::abs(v.value) < 1e-12) continue;
        args.push_back(std::arg(v.value));
    }
    if (args.empty()) return 0.0;
    std::sort(args.begin(), args.end());
    double biggest_gap = 2.0 * M_PI - (args.back() - args.front());
    double gap_end = args.front() + 2.0 * M_PI;
    for (size_t k = 0; k + 1 < args.size(); ++k) {
        double gap = args[k + 1] - args[k];
        if (gap > biggest_gap) {
            biggest_gap = gap;
            gap_end = args[k + 1];
        }
    }
    double arc = 2.0 * M_PI - biggest_gap;
    if (arc > M_PI + 0.2) return std::nullopt;
    // Window of arguments runs from gap_end over `arc`; its center:
    return gap_end + arc / 2.0;
}

struct FactorSplit {
    std::vector<Cpx> zeros;
    std::vector<Cpx> poles;
};

}  // namespace

RationalFunction minimal_degree_in_gp_g(const RationalFunction& g, const Tolerances& tol) {
    require_admissible_g(g, tol);
    PoleZeroGain pzg = g.pole_zero(tol);
    FactorSplit all;
    for (const auto& r : pzg.zeros.roots)
        for (int j = 0; j < r.multiplicity; ++j) all.zeros.push_back(r.location);
    for (const auto& r : pzg.poles.roots)
        for (int j = 0; j < r.multiplicity; ++j) all.poles.push_back(r.location);
    size_t nz = all.zeros.size();
    size_t np = all.poles.size();
    size_t total = nz + np;
    if (total > 14)
        throw Error(ErrorCode::BudgetExhausted, "too many degree-one factors to search");

    struct Candidate {
        unsigned mask;
        int deg;
        int count;
    };
    std::vector<Candidate> candidates;
    for (unsigned mask = 0; mask < (1u << total); ++mask) {
        int zc = 0, pc = 0;
        for (size_t b = 0; b < total; ++b)
            if (mask & (1u << b)) (b < nz ? zc : pc)++;
        candidates.push_back({mask, std::max(zc, pc), zc + pc});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.deg != b.deg) return a.deg > b.deg;
        if (a.count != b.count) return a.count > b.count;
        return a.mask < b.mask;
    });

    for (const Candidate& cand : candidates) {
        std::vector<std::pair<Cpx, int>> zsel, psel;
        for (size_t b = 0; b < total; ++b) {
            if (!(cand.mask & (1u << b))) continue;
            if (b < nz)
                zsel.emplace_back(all.zeros[b], 1);
            else
                psel.emplace_back(all.poles[b - nz], 1);
        }
        RationalFunction g1_monic = RationalFunction::make(
            Polynomial::from_roots(zsel, Cpx(1.0)), Polynomial::from_roots(psel, Cpx(1.0)), tol);
        RationalFunction h = g1_monic.sharp(tol);
        std::optional<double> center = phase_window_center(h, tol);
        if (!center) continue;
        for (double offset : {0.0, 0.05, -0.05}) {
            Cpx c = std::polar(1.0, -(*center) + offset);
            if (!is_p(h.scale(c, tol), tol).verdict) continue;
            RationalFunction g1 = g1_monic.scale(std::conj(c), tol);
            RationalFunction g2 = g.div(g1, tol);
            RationalFunction psi_min = g.mul(g2.sharp(tol), tol);
            if (in_gp_g(psi_min, g, tol).verdict) return psi_min;
        }
    }
    throw Error(ErrorCode::VerificationFailure, "factor search found no admissible split");
}

RationalFunction positive_counterexample(const RationalFunction& h, const Tolerances& tol) {
    ClassReport rep = is_p(h, tol);
    if (rep.verdict)
        throw Error(ErrorCode::NoWitness, "input is positive; no counterexample exists");
    std::optional<std::pair<Cpx, Cpx>> hit;
    if (rep.witness && rep.witness->kind == Witness::Kind::Point &&
        rep.witness->location.real() > 0.0 && rep.witness->value.real() < 0.0)
        hit = std::make_pair(rep.witness->location, rep.witness->value);
    if (!hit) hit = find_negative_point(h, tol);
    if (!hit)
        throw Error(ErrorCode::NoWitness,
                    "no interior point with negative real part was found by the grid search");
    double alpha = hit->first.real();
    double beta = hit->first.imag();
    double gamma = -hit->second.real();
    double delta = hit->second.imag();
    RationalFunction p = RationalFunction::from_polynomial(
        Polynomial({Cpx(0.0, -(beta * gamma / alpha + delta)), Cpx(gamma / alpha)}, tol), tol);
    Cpx at_witness = p.value_at(hit->first, tol) + hit->second;
    if (std::abs(at_witness) > 1e-7 * (1.0 + gamma))
        throw Error(ErrorCode::VerificationFailure, "constructed p does not cancel the witness");
    return p;
}

RationalFunction spectral_factor_gpe(const RationalFunction& psi, const Tolerances& tol) {
    if (psi.is_zero()) return RationalFunction();
    if (!is_gpe(psi, tol).verdict)
        throw Error(ErrorCode::NotGPE, "input is not even generalized positive");

    auto half_roots = [&](const RootList& roots) {
        std::vector<std::pair<Cpx, int>> chosen;
        std::vector<RootCluster> work = roots.roots;
        for (auto& r : work) {
            if (r.multiplicity == 0) continue;
            double axis = tol.axis_tol(std::abs(r.location));
            if (std::abs(r.location.real()) <= axis) {
                if (r.multiplicity % 2 != 0)
                    throw Error(ErrorCode::UnpairedRoot, "axis root with odd multiplicity");
                chosen.emplace_back(Cpx(0.0, r.location.imag()), r.multiplicity / 2);
                r.multiplicity = 0;
                continue;
            }
            // Locate the mirror partner -conj(location).
            Cpx mirror = -std::conj(r.location);
            RootCluster* mate = nullptr;
            double best = 1e300;
            for (auto& cand : work) {
                if (&cand == &r || cand.multiplicity == 0) continue;
                double dist = std::abs(cand.location - mirror);
                if (dist < best) {
                    best = dist;
                    mate = &cand;
                }
            }
            if (!mate || best > tol.cluster_radius(std::abs(mirror)) * 10.0 ||
                mate->multiplicity != r.multiplicity)
                throw Error(ErrorCode::UnpairedRoot, "no mirror partner for a half-plane root");
            const RootCluster& rhp = (r.location.real() > 0.0) ? r : *mate;
            chosen.emplace_back(rhp.location, rhp.multiplicity);
            mate->multiplicity = 0;
            r.multiplicity = 0;
        }
        return chosen;
    };

    PoleZeroGain pzg = psi.pole_zero(tol);
    std::vector<std::pair<Cpx, int>> zsel = half_roots(pzg.zeros);
    std::vector<std::pair<Cpx, int>> psel = half_roots(pzg.poles);

    RationalFunction g0 = RationalFunction::make(Polynomial::from_roots(zsel, Cpx(1.0)),
                                                 Polynomial::from_roots(psel, Cpx(1.0)), tol);
    RationalFunction ratio = psi.div(g0.mul(g0.sharp(tol), tol), tol);
    if (ratio.degree() != 0)
        throw Error(ErrorCode::UnpairedRoot, "pairing left a non-constant factor");
    Cpx rho = ratio.num().coeff(0) / ratio.den().coeff(0);
    if (rho.real() <= 0.0 || !near_real(rho, 1e-7))
        throw Error(ErrorCode::VerificationFailure, "gain ratio is not a positive real constant");
    RationalFunction g = g0.scale(Cpx(std::sqrt(rho.real())), tol);

    // Sign convention: nonnegative real part at the first sweep point where
    // the value has a definite real part.
    for (Cpx s : axis_sweep()) {
        EvalResult v = g.evaluate(s, tol);
        if (v.is_pole || std::abs(v.value) < 1e-12) continue;
        if (std::abs(v.value.real()) < 1e-9 * std::abs(v.value)) continue;
        if (v.value.real() < 0.0) g = g.scale(Cpx(-1.0), tol);
        break;
    }

    if (!approx_equal(g.mul(g.sharp(tol), tol), psi, tol))
        throw Error(ErrorCode::VerificationFailure, "g g# does not reproduce the input");
    return g;
}

GpeProductForm gpe_product_form(const RationalFunction& psi, const Tolerances& tol) {
    RationalFunction g = spectral_factor_gpe(psi, tol);
    GpeProductForm form;
    if (g.is_zero()) {
        form.c = 0.0;
        return form;
    }
    PoleZeroGain pzg = g.pole_zero(tol);
    double c = std::norm(pzg.gain);
    for (const auto& z : pzg.zeros.roots) {
        double re2 = z.location.real() * z.location.real();
        for (int j = 0; j < z.multiplicity; ++j) {
            form.numerator_terms.emplace_back(1.0 / (1.0 + re2), z.location.imag());
            c *= 1.0 + re2;
        }
    }
    for (const auto& p : pzg.poles.roots) {
        double re2 = p.location.real() * p.location.real();
        for (int j = 0; j < p.multiplicity; ++j) {
            form.denominator_terms.emplace_back(1.0 / (1.0 + re2), p.location.imag());
            c /= 1.0 + re2;
        }
    }
    form.c = c;
    if (!approx_equal(form.to_rational(tol), psi, tol))
        throw Error(ErrorCode::VerificationFailure, "product form does not reproduce the input");
    return form;
}

std::optional<FosterForm> foster_decompose(const RationalFunction& f, const Tolerances& tol) {
    FosterForm form;
    if (f.is_zero()) return form;
    auto [quot, rem] = f.num().divrem(f.den());
    if (quot.degree() > 1) return std::nullopt;

    Cpx q1 = quot.coeff(1);
    Cpx q0 = quot.coeff(0);
    double rel = 1e-7;
    if (std::abs(q1.imag()) > rel * (1.0 + std::abs(q1))) return std::nullopt;
    if (q1.real() < -rel) return std::nullopt;
    if (std::abs(q0.real()) > rel * (1.0 + std::abs(q0))) return std::nullopt;
    form.a_o = std::max(q1.real(), 0.0);
    form.r_o = q0.imag();

    if (f.den().degree() > 0) {
        RootList poles = find_roots(f.den(), tol);
        for (const auto& pole : poles.roots) {
            if (pole.multiplicity != 1) return std::nullopt;
            if (std::abs(pole.location.real()) > tol.axis_tol(std::abs(pole.location)))
                return std::nullopt;
            Cpx residue =
                rem.eval(pole.location) / f.den().deflate(pole.location).eval(pole.location);
            if (residue.real() <= 0.0 || std::abs(residue.imag()) > rel * (1.0 + std::abs(residue)))
                return std::nullopt;
            form.terms.emplace_back(residue.real(), pole.location.imag());
        }
    }
    std::sort(form.terms.begin(), form.terms.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    if (!approx_equal(form.to_rational(tol), f, tol)) return std::nullopt;
    return form;
}

std::pair<RationalFunction, FosterForm> odd_canonical(const RationalFunction& psi,
                                                      const Tolerances& tol) {
    if (!is_odd(psi, tol).verdict) throw Error(ErrorCode::NotOdd, "input is not odd");
    GpFactorization fact = factor_gp(psi, std::nullopt, tol);
    std::optional<FosterForm> foster = foster_decompose(fact.p, tol);
    if (!foster)
        throw Error(ErrorCode::VerificationFailure,
                    "positive part of an odd function has no Foster form");
    return {fact.g, *foster};
}

bool odd_orthogonality_check(const RationalFunction& g, const Tolerances& tol) {
    if (g.is_zero()) throw Error(ErrorCode::BadData, "orthogonality check needs a nonzero g");
    RationalFunction product = g.mul(g, tol).mul(g.invert(tol), tol);
    return axis_real_numerator(product, tol).is_zero();
}

}  // namespace gpr
