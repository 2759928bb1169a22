// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gpr/bounded.hpp"
#include "gpr/evenodd.hpp"
#include "gpr/factor.hpp"
#include "gpr/interpolate.hpp"
#include "gpr/parse.hpp"
#include "support/corpus.hpp"

using namespace gpr;

namespace {

struct Harness {
    int checks = 0;
    int failures = 0;
    std::string first_failure;

    void require(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
    }
};

RationalFunction rf(const char* text) { return parse_expression(text); }

bool proportional(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.div(b).degree() == 0;
}

// ---- criterion 1: the five-row cone table --------------------------------

void criterion_1(Harness& h) {
    RationalFunction g = rf("(s-2)/s");
    const char* p_rows[] = {"s/(s+2)", "s/(s+2)^2", "1", "(s+2)/s", "s*(s+2i)/(s+i)"};
    const char* psi_rows[] = {"(s-2)/s", "(s-2)/(s*(s+2))", "(s^2-4)/s^2",
                              "(s+2)^2*(s-2)/s^3", "(s^2-4)*(s+2i)/(s*(s+i))"};
    for (int row = 0; row < 5; ++row) {
        RationalFunction p = rf(p_rows[row]);
        RationalFunction psi = rf(psi_rows[row]);
        h.require(approx_equal(g.mul(p).mul(g.sharp()), psi),
                  std::string("g p g# reproduces row ") + std::to_string(row + 1));
        GpFactorization fact = factor_gp(psi);
        h.require(proportional(fact.g, g), "recovered g matches row " + std::to_string(row + 1));
        h.require(proportional(fact.p, p), "recovered p matches row " + std::to_string(row + 1));
        h.require(is_p(fact.p).verdict, "recovered p positive, row " + std::to_string(row + 1));
        h.require(approx_equal(fact.g.mul(fact.p).mul(fact.g.sharp()), psi),
                  "round trip, row " + std::to_string(row + 1));
        h.require(std::abs(fact.g.value_at(fact.s_o) - Cpx(1.0)) < 1e-8,
                  "normalization g(s_o)=1, row " + std::to_string(row + 1));
    }
}

// ---- criterion 2: the infeasible-to-feasible running example --------------

void criterion_2(Harness& h) {
    PickMatrix direct = pick_matrix({Cpx(1), Cpx(2)}, {Cpx(1), Cpx(4)});
    h.require(std::abs(direct.at(0, 0) - Cpx(1.0)) <= 1e-12, "pick(0,0) = 1");
    h.require(std::abs(direct.at(0, 1) - Cpx(5.0 / 3.0)) <= 1e-12, "pick(0,1) = 5/3");
    h.require(std::abs(direct.at(1, 0) - Cpx(5.0 / 3.0)) <= 1e-12, "pick(1,0) = 5/3");
    h.require(std::abs(direct.at(1, 1) - Cpx(2.0)) <= 1e-12, "pick(1,1) = 2");
    h.require(direct.det_sign == -1, "direct Pick determinant negative");

    PickMatrix transformed = pick_matrix({Cpx(1), Cpx(2)}, {Cpx(2.5), Cpx(3.25)});
    h.require(std::abs(transformed.at(0, 0) - Cpx(2.5)) <= 1e-12, "pick'(0,0) = 5/2");
    h.require(std::abs(transformed.at(0, 1) - Cpx(23.0 / 12.0)) <= 1e-12, "pick'(0,1) = 23/12");
    h.require(std::abs(transformed.at(1, 1) - Cpx(13.0 / 8.0)) <= 1e-12, "pick'(1,1) = 13/8");
    h.require(transformed.min_eigenvalue > 0.0, "transformed Pick positive definite");

    InterpProblem direct_problem{{Cpx(1), Cpx(2)}, {Cpx(1), Cpx(4)}, ConstraintClass::P, {}};
    bool indefinite = false;
    try {
        solve_p(direct_problem);
    } catch (const PickIndefiniteError& e) {
        indefinite = e.inertia.negative == 1;
    }
    h.require(indefinite, "solve_p reports PickIndefinite with one negative eigenvalue");

    RationalFunction g = rf("4/(7-3*s)");
    InterpProblem cone_problem{{Cpx(1), Cpx(2)}, {Cpx(1), Cpx(4)}, ConstraintClass::GP_g, g};
    InterpSolution sol = solve_gp_g(cone_problem);
    h.require(sol.certificate.verdict, "cone solution certified");
    for (size_t j = 0; j < sol.node_residuals.size(); ++j)
        h.require(sol.node_residuals[j] <= 1e-7 * (1.0 + std::abs(cone_problem.values[j])),
                  "cone solution residual " + std::to_string(j));

    // Blend of the two degree-four interpolants collapses to g.
    InterpProblem gp_problem{
        {Cpx(1), Cpx(2)}, {Cpx(1), Cpx(4)}, ConstraintClass::GP_onesided_real, {}};
    auto as_solution = [&](const RationalFunction& psi) {
        InterpSolution s;
        s.problem = gp_problem;
        s.psi = psi;
        s.certificate = certify(gp_problem, psi);
        for (const Cpx& node : gp_problem.nodes)
            s.node_residuals.push_back(std::abs(psi.value_at(node)));
        return s;
    };
    InterpSolution psi_a = as_solution(rf("12*s*(s^2+9)/((s^2+2)*(49-9*s^2))"));
    InterpSolution psi_b = as_solution(rf("12*(s^3+3*s^2+6)/((s^2+2)*(49-9*s^2))"));
    h.require(psi_a.certificate.verdict && psi_b.certificate.verdict,
              "psi_a and psi_b are certified GP interpolants");
    InterpSolution blended = blend({psi_a, psi_b}, {2.0 / 9.0, 7.0 / 9.0});
    h.require(approx_equal(blended.psi, g), "(2/9) psi_a + (7/9) psi_b = 4/(7-3s)");

    RationalFunction minimal = minimal_degree_in_gp_g(g);
    h.require(minimal.degree() == 1, "minimal-degree member has degree 1");
    h.require(proportional(minimal, g), "minimal-degree member equals g up to gain");
}

// ---- criterion 3: the odd cone member -------------------------------------

void criterion_3(Harness& h) {
    InterpProblem po_problem{{Cpx(1), Cpx(2)}, {Cpx(2.5), Cpx(3.25)}, ConstraintClass::PO, {}};
    InterpSolution p_sol = solve_po(po_problem);
    std::optional<FosterForm> form = foster_decompose(p_sol.psi);
    h.require(form.has_value(), "Foster fit returns a Foster form");
    if (form) {
        h.require(std::abs(form->a_o - 4.0 / 3.0) <= 1e-9, "a_o = 4/3");
        h.require(form->terms.size() == 1, "single axis pole");
        if (!form->terms.empty()) {
            h.require(std::abs(form->terms[0].first - 7.0 / 6.0) <= 1e-9, "a_1 = 7/6");
            h.require(std::abs(form->terms[0].second) <= 1e-9, "r_1 = 0");
        }
    }

    RationalFunction g = rf("4/(7-3*s)");
    InterpProblem odd_problem{{Cpx(1), Cpx(2)}, {Cpx(1), Cpx(4)}, ConstraintClass::Odd_g, g};
    InterpSolution sol = solve_gp_g(odd_problem);
    RationalFunction psi_d = rf("8*(8*s^2+7)/(3*s*(49-9*s^2))");
    h.require(approx_equal(sol.psi, psi_d), "psi_d = 8(8s^2+7)/(3s(49-9s^2))");
    h.require(sol.psi.degree() == 3, "psi_d has degree 3");
    h.require(is_odd(sol.psi).verdict, "psi_d is odd");
    h.require(in_gp_g(sol.psi, g).verdict, "psi_d lies in the cone of g");
}

// ---- criterion 4: even and one-sided interpolation -------------------------

void criterion_4(Harness& h) {
    InterpProblem even_problem{{Cpx(1), Cpx(2), Cpx(3)},
                               {Cpx(1), Cpx(4), Cpx(9)},
                               ConstraintClass::GPE_symmetric,
                               {}};
    InterpSolution even_sol = solve_gpe_symmetric(even_problem);
    h.require(even_sol.certificate.verdict, "symmetric solution certified GPE");
    for (double x : {1.0, 2.0, 3.0}) {
        h.require(std::abs(even_sol.psi.value_at(Cpx(x)) - Cpx(x * x)) <= 1e-7,
                  "symmetric value at +" + std::to_string(x));
        h.require(std::abs(even_sol.psi.value_at(Cpx(-x)) - Cpx(x * x)) <= 1e-7,
                  "symmetric value at -" + std::to_string(x));
    }

    // The reference basis polynomials hit the verification table.
    RationalFunction b1 = rf("(4-s^2)*(9-s^2)*(25/24-s^2)");
    RationalFunction b2 = rf("(1-s^2)*(9-s^2)*(1/9)*(8/5-s^2)");
    RationalFunction b3 = rf("(1-s^2)*(4-s^2)*(1/360)*(90-s^2)");
    const double table[3][3] = {{1, 0, 0}, {0, 4, 0}, {0, 0, 9}};
    const RationalFunction* basis[3] = {&b1, &b2, &b3};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (double sign : {1.0, -1.0}) {
                Cpx value = basis[j]->value_at(Cpx(sign * (k + 1)));
                h.require(std::abs(value - Cpx(table[j][k])) <= 1e-9,
                          "basis " + std::to_string(j + 1) + " at node " + std::to_string(k + 1));
            }
    for (int j = 0; j < 3; ++j)
        h.require(is_gpe(*basis[j]).verdict, "basis " + std::to_string(j + 1) + " is GPE");

    // Reference one-sided interpolant for the first node.
    double a1 = 5.0 / (2.0 * std::sqrt(6.0));
    RationalFunction psi1 = rf("(4-s^2)*(9-s^2)")
                                .mul(RationalFunction(Cpx(a1 + 1.0)))
                                .mul(RationalFunction::from_polynomial(
                                    Polynomial({Cpx(a1), Cpx(-1.0)})));
    h.require(std::abs(psi1.value_at(Cpx(1)) - Cpx(1.0)) <= 1e-9, "reference psi_1 at 1");
    h.require(std::abs(psi1.value_at(Cpx(2))) <= 1e-9, "reference psi_1 at 2");
    h.require(std::abs(psi1.value_at(Cpx(3))) <= 1e-9, "reference psi_1 at 3");
    h.require(is_gp(psi1).verdict, "reference psi_1 is GP");

    InterpProblem oneside_problem{{Cpx(1), Cpx(2), Cpx(3)},
                                  {Cpx(1), Cpx(4), Cpx(9)},
                                  ConstraintClass::GP_onesided_real,
                                  {}};
    InterpSolution oneside_sol = solve_gp_onesided_real(oneside_problem);
    h.require(oneside_sol.certificate.verdict, "one-sided solution certified GP");
    for (double x : {1.0, 2.0, 3.0})
        h.require(std::abs(oneside_sol.psi.value_at(Cpx(x)) - Cpx(x * x)) <= 1e-7,
                  "one-sided value at " + std::to_string(x));
}

// ---- criterion 5: even/odd parts of 1/(1+s) --------------------------------

void criterion_5(Harness& h) {
    RationalFunction f = rf("1/(1+s)");
    RationalFunction even = even_part(f);
    RationalFunction odd = odd_part(f);
    h.require(approx_equal(even, rf("1/(1-s^2)")), "even part is 1/(1-s^2)");
    h.require(is_gpe(even).verdict, "even part certified GPE");
    h.require(!is_p(even).verdict, "even part not positive");
    h.require(is_odd(odd).verdict, "odd part certified Odd");
    h.require(is_gp(odd).verdict, "odd part is GP");
    h.require(!is_p(odd).verdict, "odd part not positive");
    // Regression pin for the coefficient: the definition forces -s/(1-s^2).
    h.require(approx_equal(odd, rf("-s/(1-s^2)")), "odd part is -s/(1-s^2)");
    h.require(!approx_equal(odd, rf("-2*s/(1-s^2)")), "odd part is not -2s/(1-s^2)");
    h.require(approx_equal(even.add(odd), f), "parts sum back to 1/(1+s)");
}

// ---- criterion 6: randomized property suites -------------------------------

void criterion_6(Harness& h) {
    {  // sharp is an involutive algebra homomorphism
        testing::Rng rng(1001);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction f = testing::random_rational(rng, 4);
            RationalFunction g = testing::random_rational(rng, 4);
            h.require(approx_equal(f.sharp().sharp(), f), "sharp involution");
            h.require(approx_equal(f.add(g).sharp(), f.sharp().add(g.sharp())), "sharp additive");
            h.require(approx_equal(f.mul(g).sharp(), f.sharp().mul(g.sharp())),
                      "sharp multiplicative");
        }
    }
    {  // even + odd = identity
        testing::Rng rng(1002);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction f = testing::random_rational(rng, 4);
            h.require(approx_equal(even_part(f).add(odd_part(f)), f), "even+odd identity");
        }
    }
    {  // factorization round trip, g and p of degree up to 4
        testing::Rng rng(1003);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction g = testing::random_admissible_g(rng, 4);
            RationalFunction p = testing::random_positive(rng, 3);
            RationalFunction psi = g.mul(p).mul(g.sharp());
            if (psi.is_zero()) continue;
            try {
                GpFactorization fact = factor_gp(psi);
                h.require(is_p(fact.p).verdict, "factor round trip: p positive");
                h.require(approx_equal(fact.g.mul(fact.p).mul(fact.g.sharp()), psi),
                          "factor round trip: product");
                Cpx gv = g.value_at(fact.s_o);
                h.require(approx_equal(fact.g, g.scale(Cpx(1.0) / gv)),
                          "factor round trip: normalized g");
            } catch (const Error& e) {
                h.require(false, std::string("factor round trip threw: ") + e.what());
            }
        }
    }
    {  // spectral factor identity on the axis
        testing::Rng rng(1004);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction psi = testing::random_gpe(rng, 2);
            if (psi.is_zero()) continue;
            RationalFunction g = spectral_factor_gpe(psi);
            h.require(approx_equal(g.mul(g.sharp()), psi), "spectral factor product");
            for (double w : {0.4, -1.1, 2.9}) {
                EvalResult pv = psi.evaluate(Cpx(0, w));
                EvalResult gv = g.evaluate(Cpx(0, w));
                if (pv.is_pole || gv.is_pole) continue;
                h.require(std::abs(pv.value - std::norm(gv.value)) <=
                              1e-7 * (1.0 + std::abs(pv.value)),
                          "psi(iw) = |g(iw)|^2");
            }
        }
    }
    {  // odd closure
        testing::Rng rng(1005);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction a = testing::random_odd(rng, 1);
            RationalFunction b = testing::random_odd(rng, 1);
            RationalFunction c = testing::random_odd(rng, 0);
            h.require(is_odd(a.add(b)).verdict, "odd sum");
            if (!a.is_zero()) h.require(is_odd(a.invert()).verdict, "odd inverse");
            h.require(is_odd(a.mul(b).mul(c)).verdict, "odd triple product");
            if (a.degree() <= 2 && b.degree() <= 2)
                h.require(is_odd(a.compose(b)).verdict, "odd composition");
        }
    }
    {  // cone exclusivity and inversion
        testing::Rng rng(1006);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction g1 = testing::random_admissible_g(rng, 2);
            RationalFunction g2 = testing::random_admissible_g(rng, 2);
            RationalFunction psi = g1.mul(testing::random_positive(rng, 2)).mul(g1.sharp());
            if (psi.is_zero()) continue;
            h.require(in_gp_g(psi, g1).verdict, "cone membership");
            h.require(in_gp_g(psi.invert(), g1.invert()).verdict, "cone inversion law");
            if (g2.div(g1).degree() != 0)
                h.require(!in_gp_g(psi, g2).verdict, "cone exclusivity");
        }
    }
    {  // Cayley involution and class transport
        testing::Rng rng(1007);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction f = (iter % 2 == 0) ? testing::random_positive(rng, 2)
                                                 : testing::random_rational(rng, 3);
            RationalFunction one(Cpx(1.0));
            if (one.add(f).is_zero()) continue;
            RationalFunction c = cayley(f);
            if (one.add(c).is_zero()) continue;
            h.require(approx_equal(cayley_inv(c), f), "Cayley involution");
            h.require(is_p(f).verdict == is_bounded(c).verdict, "Cayley carries P to B");
            h.require(is_gp(f).verdict == is_gb(c).verdict, "Cayley carries GP to GB");
        }
    }
    {  // Blaschke round trip
        testing::Rng rng(1008);
        for (int iter = 0; iter < 200; ++iter) {
            RationalFunction f_b = testing::random_bounded(rng);
            BlaschkeProduct beta;
            int factors = testing::pick_int(rng, 0, 2);
            for (int j = 0; j < factors; ++j)
                beta.factors.push_back(
                    {testing::uniform(rng, 0.1, 2.0), testing::uniform(rng, -2.0, 2.0)});
            RationalFunction f_gb = f_b.div(beta.to_rational());
            auto [fb2, beta2] = blaschke_extract(f_gb);
            h.require(is_bounded(fb2).verdict, "extracted factor bounded");
            h.require(approx_equal(fb2.div(beta2.to_rational()), f_gb), "Blaschke round trip");
            RationalFunction b2 = beta2.to_rational();
            for (double w : {0.0, 1.7, -31.0})
                h.require(std::abs(std::abs(b2.value_at(Cpx(0, w))) - 1.0) <= 1e-10,
                          "Blaschke unimodular on axis");
        }
    }
    {  // the perturbation demo always separates the pole and zero sets
        testing::Rng rng(1009);
        for (int iter = 0; iter < 200; ++iter) {
            PoleZeroGain pzg;
            pzg.gain = Cpx(1.0);
            pzg.zeros.roots.push_back(
                {{testing::uniform(rng, 0.3, 2.0), testing::uniform(rng, -1.5, 1.5)}, 1});
            pzg.poles.roots.push_back(
                {{testing::uniform(rng, 0.3, 2.0), testing::uniform(rng, -1.5, 1.5)}, 1});
            RationalFunction g = RationalFunction::from_pole_zero(pzg);
            if (g.num().degree() != 1 || g.den().degree() != 1) continue;
            GbInstabilityReport rep = gb_g_instability_demo(
                g, testing::uniform(rng, 1e-3, 3e-2), testing::uniform(rng, 1e-3, 3e-2));
            h.require(rep.pole_sets_distinct, "demo pole sets distinct");
            h.require(rep.zero_sets_distinct, "demo zero sets distinct");
        }
    }
}

// ---- criterion 7: symbolic decisions agree with the dense grid --------------

void criterion_7(Harness& h) {
    testing::Rng rng(7007);
    const char* fixed[] = {"(s-2)/s",           "(s-2)/(s*(s+2))", "(s^2-4)/s^2",
                           "(s+2)^2*(s-2)/s^3", "(s^2-4)*(s+2i)/(s*(s+i))",
                           "4/(7-3*s)",         "16/(49-9*s^2)",   "(8*s^2+7)/(6*s)",
                           "1/(1+s)",           "1/(1-s^2)",       "-1-s^2",
                           "s^2",               "s-2",             "(1-s)/(1+s)",
                           "2/(1+s)",           "1/(s-1)"};
    for (const char* text : fixed) {
        RationalFunction f = rf(text);
        h.require(is_gp(f).verdict == testing::grid_says_gp(f),
                  std::string("GP oracle agreement: ") + text);
        h.require(is_gb(f).verdict == testing::grid_says_gb(f),
                  std::string("GB oracle agreement: ") + text);
    }
    for (int iter = 0; iter < 200; ++iter) {
        RationalFunction f;
        switch (iter % 4) {
            case 0: f = testing::random_rational(rng, 3); break;
            case 1: f = testing::random_gp(rng, 1, 1); break;
            case 2: f = testing::random_bounded(rng); break;
            default: f = testing::random_gpe(rng, 1); break;
        }
        if (f.is_zero()) continue;
        h.require(is_gp(f).verdict == testing::grid_says_gp(f), "GP oracle agreement (random)");
        h.require(is_gb(f).verdict == testing::grid_says_gb(f), "GB oracle agreement (random)");
    }
}

// ---- criterion 8: the counterexample construction --------------------------

void criterion_8(Harness& h) {
    testing::Rng rng(8008);
    int built = 0;
    while (built < 100) {
        // Non-positive GP member: force an interior right-half-plane root.
        PoleZeroGain pzg;
        pzg.gain = testing::random_unit_gain(rng);
        Cpx interior(testing::uniform(rng, 0.2, 2.0), testing::uniform(rng, -2.0, 2.0));
        if (testing::pick_int(rng, 0, 1) == 0)
            pzg.zeros.roots.push_back({interior, 1});
        else
            pzg.poles.roots.push_back({interior, 1});
        if (testing::pick_int(rng, 0, 1) == 0)
            pzg.zeros.roots.push_back({testing::random_chalf_root(rng), 1});
        RationalFunction g = RationalFunction::from_pole_zero(pzg);
        RationalFunction haitch = g.mul(testing::random_positive(rng, 1)).mul(g.sharp());
        if (haitch.is_zero()) continue;
        if (is_p(haitch).verdict) continue;  // defensive; the interior root forbids it
        ++built;
        RationalFunction p = positive_counterexample(haitch);
        h.require(is_p(p).verdict, "counterexample p positive");
        Polynomial num = haitch.add(p).num();
        bool interior_zero = false;
        for (const auto& r : find_roots(num).roots) {
            if (r.location.real() > 1e-7 &&
                std::abs(num.eval(r.location)) <= 1e-8 * num.max_abs_coeff())
                interior_zero = true;
        }
        h.require(interior_zero, "h + p vanishes inside the right half plane");
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void(Harness&)> run;
    };
    const Criterion criteria[] = {
        {"criterion 1: five-row cone table (factor and rebuild)", criterion_1},
        {"criterion 2: Pick matrices, feasibility transfer, blend, minimal degree", criterion_2},
        {"criterion 3: odd-cone interpolation and the Foster fit", criterion_3},
        {"criterion 4: symmetric GPE and one-sided GP interpolation", criterion_4},
        {"criterion 5: even/odd parts of 1/(1+s)", criterion_5},
        {"criterion 6: randomized property suites", criterion_6},
        {"criterion 7: symbolic vs dense-grid oracle agreement", criterion_7},
        {"criterion 8: positive counterexample construction", criterion_8},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Harness h;
        std::string thrown;
        try {
            c.run(h);
        } catch (const std::exception& e) {
            thrown = e.what();
        }
        bool ok = thrown.empty() && h.failures == 0;
        if (ok) {
            std::printf("PASS %s (%d checks)\n", c.label, h.checks);
        } else {
            ++failed;
            std::printf("FAIL %s (%d/%d checks failed%s%s)\n", c.label, h.failures, h.checks,
                        thrown.empty() ? "" : "; threw: ", thrown.c_str());
            if (!h.first_failure.empty())
                std::printf("     first failure: %s\n", h.first_failure.c_str());
        }
    }
    return failed == 0 ? 0 : 1;
}
