#include "gpr/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gpr/bounded.hpp"
#include "gpr/evenodd.hpp"
#include "gpr/factor.hpp"
#include "gpr/interpolate.hpp"
#include "gpr/parse.hpp"

namespace gpr {

namespace {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError:
        case ErrorCode::ZeroDenominator:
        case ErrorCode::DivisionByZeroFunction:
        case ErrorCode::DegenerateComposition:
        case ErrorCode::BadData:
        case ErrorCode::BadG:
        case ErrorCode::NodeOnAxis:
        case ErrorCode::DuplicateNode:
        case ErrorCode::MixedProblems:
        case ErrorCode::NodeHitsGZero:
            return 2;
        default:
            return 1;
    }
}

json complex_json(Cpx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json ratfun_json(const RationalFunction& f) {
    json num = json::array();
    for (const Cpx& c : f.num().coeffs()) num.push_back(complex_json(c));
    json den = json::array();
    for (const Cpx& c : f.den().coeffs()) den.push_back(complex_json(c));
    return json{{"expr", print_expression(f)},
                {"num", num},
                {"den", den},
                {"degree", f.degree()}};
}

json report_json(const ClassReport& r) {
    json witness = nullptr;
    if (r.witness) {
        const char* kind = "frequency";
        if (r.witness->kind == Witness::Kind::Point) kind = "point";
        if (r.witness->kind == Witness::Kind::PoleResidue) kind = "pole";
        witness = json{{"kind", kind},
                       {"location", complex_json(r.witness->location)},
                       {"value", complex_json(r.witness->value)}};
    }
    return json{{"verdict", r.verdict},
                {"margin", r.margin},
                {"tolerance", r.tolerance_used},
                {"witness", witness}};
}

std::string describe_report(const std::string& label, const ClassReport& r) {
    std::ostringstream out;
    out << label << ": " << (r.verdict ? "yes" : "no") << " (margin " << r.margin << ")";
    if (r.witness) {
        out << " witness at " << format_complex(r.witness->location) << " value "
            << format_complex(r.witness->value);
    }
    return out.str();
}

struct Options {
    bool json_output = false;
    Tolerances tol;
};

void apply_config_file(Tolerances& tol, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadData, "cannot open configuration file " + path);
    json doc = json::parse(in, nullptr, true, true);
    tol.coeff_trim_rel = doc.value("coeff_trim_rel", tol.coeff_trim_rel);
    tol.cluster_base = doc.value("cluster_base", tol.cluster_base);
    tol.axis_base = doc.value("axis_base", tol.axis_base);
    tol.equality_rel = doc.value("equality_rel", tol.equality_rel);
    tol.nonneg_margin = doc.value("nonneg_margin", tol.nonneg_margin);
    tol.pick_psd_rel = doc.value("pick_psd_rel", tol.pick_psd_rel);
    tol.node_residual = doc.value("node_residual", tol.node_residual);
    tol.blaschke_unimod = doc.value("blaschke_unimod", tol.blaschke_unimod);
    tol.grid_points = doc.value("grid_points", tol.grid_points);
}

Cpx parse_constant(const std::string& text, const Tolerances& tol) {
    RationalFunction f = parse_expression(text, tol);
    if (f.is_zero()) return Cpx(0.0);
    if (f.degree() != 0) throw Error(ErrorCode::BadData, "expected a constant: " + text);
    return f.num().coeff(0) / f.den().coeff(0);
}

std::pair<std::vector<Cpx>, std::vector<Cpx>> parse_node_args(
    const std::vector<std::string>& pairs, const Tolerances& tol) {
    std::vector<Cpx> nodes, values;
    for (const std::string& pair : pairs) {
        size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::BadData, "expected node=value, got: " + pair);
        nodes.push_back(parse_constant(pair.substr(0, eq), tol));
        values.push_back(parse_constant(pair.substr(eq + 1), tol));
    }
    return {nodes, values};
}

void emit(CliResult& result, const Options& opt, const std::string& verb, const json& payload,
          const std::string& text) {
    if (opt.json_output) {
        json doc{{"verb", verb}, {"ok", true}, {"error", nullptr}, {"result", payload}};
        result.out = doc.dump(2) + "\n";
    } else {
        result.out = text;
    }
}

void run_classify(CliResult& result, const Options& opt, const std::string& expr) {
    RationalFunction f = parse_expression(expr, opt.tol);
    struct Entry {
        const char* name;
        ClassReport report;
    };
    std::vector<Entry> entries;
    entries.push_back({"GP", is_gp(f, opt.tol)});
    entries.push_back({"P", is_p(f, opt.tol)});
    entries.push_back({"P_sharp", is_para_positive(f, opt.tol)});
    entries.push_back({"Even", is_even(f, opt.tol)});
    entries.push_back({"Odd", is_odd(f, opt.tol)});
    entries.push_back({"PO", is_po(f, opt.tol)});
    entries.push_back({"GPE", is_gpe(f, opt.tol)});
    entries.push_back({"B", is_bounded(f, opt.tol)});
    entries.push_back({"GB", is_gb(f, opt.tol)});

    json classes;
    std::ostringstream text;
    text << "function: " << print_expression(f) << "\n";
    for (const Entry& e : entries) {
        classes[e.name] = report_json(e.report);
        text << describe_report(e.name, e.report) << "\n";
    }
    emit(result, opt, "classify",
         json{{"function", ratfun_json(f)}, {"classes", classes}}, text.str());
}

void run_factor(CliResult& result, const Options& opt, const std::string& expr,
                const std::string& so_text) {
    RationalFunction psi = parse_expression(expr, opt.tol);
    std::optional<Cpx> so;
    if (!so_text.empty()) so = parse_constant(so_text, opt.tol);
    GpFactorization fact = factor_gp(psi, so, opt.tol);
    std::ostringstream text;
    text << "psi = g * p * g#\n"
         << "g   = " << print_expression(fact.g) << "\n"
         << "p   = " << print_expression(fact.p) << "\n"
         << "s_o = " << format_complex(fact.s_o) << "\n";
    emit(result, opt, "factor",
         json{{"g", ratfun_json(fact.g)},
              {"p", ratfun_json(fact.p)},
              {"s_o", complex_json(fact.s_o)}},
         text.str());
}

void run_evenodd(CliResult& result, const Options& opt, const std::string& expr) {
    RationalFunction f = parse_expression(expr, opt.tol);
    RationalFunction even = even_part(f, opt.tol);
    RationalFunction odd = odd_part(f, opt.tol);
    std::ostringstream text;
    text << "even part: " << print_expression(even) << "\n"
         << "odd part:  " << print_expression(odd) << "\n";
    emit(result, opt, "evenodd",
         json{{"even", ratfun_json(even)},
              {"odd", ratfun_json(odd)},
              {"even_gpe", report_json(is_gpe(even, opt.tol))},
              {"odd_gp", report_json(is_gp(odd, opt.tol))}},
         text.str());
}

void run_spectral(CliResult& result, const Options& opt, const std::string& expr) {
    RationalFunction psi = parse_expression(expr, opt.tol);
    RationalFunction g = spectral_factor_gpe(psi, opt.tol);
    GpeProductForm form = gpe_product_form(psi, opt.tol);
    json num_terms = json::array();
    for (const auto& [alpha, beta] : form.numerator_terms)
        num_terms.push_back(json{{"alpha", alpha}, {"beta", beta}});
    json den_terms = json::array();
    for (const auto& [gamma, delta] : form.denominator_terms)
        den_terms.push_back(json{{"gamma", gamma}, {"delta", delta}});
    std::ostringstream text;
    text << "g (psi = g * g#): " << print_expression(g) << "\n"
         << "product form: c = " << format_real(form.c) << ", " << num_terms.dump() << " over "
         << den_terms.dump() << "\n";
    emit(result, opt, "spectral",
         json{{"g", ratfun_json(g)},
              {"product_form",
               json{{"c", form.c}, {"numerator", num_terms}, {"denominator", den_terms}}}},
         text.str());
}

ConstraintClass constraint_from_tag(const std::string& klass);

// Structured problem document: {"constraint": tag, "g": expr?, "nodes": [...],
// "values": [...]} with complex entries as numbers, "a+bi" strings or {re,im}.
InterpProblem problem_from_document(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadData, "cannot open problem file " + path);
    json doc = json::parse(in, nullptr, true, true);
    InterpProblem problem;
    problem.constraint = constraint_from_tag(doc.value("constraint", "p"));
    if (doc.contains("g")) problem.g = parse_expression(doc["g"].get<std::string>(), tol);
    auto load = [&](const char* key, std::vector<Cpx>& out) {
        if (!doc.contains(key)) throw Error(ErrorCode::BadData, std::string("missing ") + key);
        for (const auto& item : doc[key]) {
            if (item.is_number())
                out.emplace_back(item.get<double>());
            else if (item.is_string())
                out.push_back(parse_constant(item.get<std::string>(), tol));
            else
                out.emplace_back(item.value("re", 0.0), item.value("im", 0.0));
        }
    };
    load("nodes", problem.nodes);
    load("values", problem.values);
    return problem;
}

ConstraintClass constraint_from_tag(const std::string& klass) {
    if (klass == "p") return ConstraintClass::P;
    if (klass == "po") return ConstraintClass::PO;
    if (klass == "gpg") return ConstraintClass::GP_g;
    if (klass == "oddg") return ConstraintClass::Odd_g;
    if (klass == "gpe") return ConstraintClass::GPE_symmetric;
    if (klass == "gponesided") return ConstraintClass::GP_onesided_real;
    throw Error(ErrorCode::BadData, "unknown constraint class: " + klass);
}

void run_interpolate(CliResult& result, const Options& opt, const std::string& klass,
                     const std::string& g_text, const std::vector<std::string>& pairs,
                     const std::string& problem_path) {
    InterpProblem problem;
    if (!problem_path.empty()) {
        if (!pairs.empty())
            throw Error(ErrorCode::BadData, "give node=value pairs or --problem, not both");
        problem = problem_from_document(problem_path, opt.tol);
    } else {
        auto [nodes, values] = parse_node_args(pairs, opt.tol);
        problem.nodes = nodes;
        problem.values = values;
        problem.constraint = constraint_from_tag(klass);
        if (!g_text.empty()) problem.g = parse_expression(g_text, opt.tol);
    }
    if ((problem.constraint == ConstraintClass::GP_g ||
         problem.constraint == ConstraintClass::Odd_g) &&
        !problem.g)
        throw Error(ErrorCode::BadData, "this constraint requires a prescribed g");

    try {
        InterpSolution sol = solve(problem, opt.tol);
        json residuals = json::array();
        for (double r : sol.node_residuals) residuals.push_back(r);
        std::ostringstream text;
        text << "psi = " << print_expression(sol.psi) << "\n"
             << "degree " << sol.psi.degree() << "\n"
             << describe_report(std::string("certificate ") + constraint_name(problem.constraint),
                                sol.certificate)
             << "\n";
        for (size_t j = 0; j < sol.node_residuals.size(); ++j)
            text << "residual at " << format_complex(problem.nodes[j]) << ": "
                 << sol.node_residuals[j] << "\n";
        emit(result, opt, "interpolate",
             json{{"psi", ratfun_json(sol.psi)},
                  {"constraint", constraint_name(problem.constraint)},
                  {"certificate", report_json(sol.certificate)},
                  {"residuals", residuals}},
             text.str());
    } catch (const PickIndefiniteError& e) {
        // Re-throw enriched with the inertia report for the error channel.
        std::ostringstream detail;
        detail << e.what() << " [inertia: " << e.inertia.negative << " negative, "
               << e.inertia.zero << " zero, " << e.inertia.positive << " positive; min eigenvalue "
               << e.min_eigenvalue << "]";
        throw Error(ErrorCode::PickIndefinite, detail.str());
    }
}

void run_cayley(CliResult& result, const Options& opt, const std::string& expr, bool inverse) {
    RationalFunction f = parse_expression(expr, opt.tol);
    RationalFunction out = inverse ? cayley_inv(f, opt.tol) : cayley(f, opt.tol);
    std::ostringstream text;
    text << (inverse ? "p" : "f") << " = " << print_expression(out) << "\n";
    json payload{{"transform", ratfun_json(out)}};
    if (inverse) {
        payload["is_p"] = report_json(is_p(out, opt.tol));
        payload["is_gp"] = report_json(is_gp(out, opt.tol));
    } else {
        payload["is_bounded"] = report_json(is_bounded(out, opt.tol));
        payload["is_gb"] = report_json(is_gb(out, opt.tol));
    }
    emit(result, opt, "cayley", payload, text.str());
}

void run_blaschke(CliResult& result, const Options& opt, const std::string& expr) {
    RationalFunction f = parse_expression(expr, opt.tol);
    auto [f_b, beta] = blaschke_extract(f, opt.tol);
    json factors = json::array();
    std::ostringstream text;
    text << "f_b  = " << print_expression(f_b) << "\n";
    text << "beta = " << print_expression(beta.to_rational(opt.tol)) << "\n";
    for (const Cpx& w : beta.factors) {
        factors.push_back(complex_json(w));
        text << "  factor (s - w)/(s + w*), w = " << format_complex(w) << "\n";
    }
    emit(result, opt, "blaschke",
         json{{"f_b", ratfun_json(f_b)},
              {"beta", ratfun_json(beta.to_rational(opt.tol))},
              {"factors", factors}},
         text.str());
}

void run_demo_gbg(CliResult& result, const Options& opt, const std::string& g_text, double eps,
                  double delta) {
    RationalFunction g = parse_expression(g_text, opt.tol);
    GbInstabilityReport rep = gb_g_instability_demo(g, eps, delta, opt.tol);
    auto roots_json = [](const std::vector<Cpx>& roots) {
        json out = json::array();
        for (const Cpx& r : roots) out.push_back(complex_json(r));
        return out;
    };
    std::ostringstream text;
    text << "f1 = " << print_expression(rep.f1) << "\n"
         << "f2 = " << print_expression(rep.f2) << "\n"
         << "C+ pole sets distinct: " << (rep.pole_sets_distinct ? "yes" : "no") << "\n"
         << "C+ zero sets distinct: " << (rep.zero_sets_distinct ? "yes" : "no") << "\n"
         << describe_report("p1 positive", rep.p1_positive) << "\n"
         << describe_report("p2 positive", rep.p2_positive) << "\n"
         << describe_report("f1 GB", rep.f1_gb) << "\n"
         << describe_report("f2 GB", rep.f2_gb) << "\n";
    emit(result, opt, "demo-gbg",
         json{{"f1", ratfun_json(rep.f1)},
              {"f2", ratfun_json(rep.f2)},
              {"f1_plus_poles", roots_json(rep.f1_plus_poles)},
              {"f1_plus_zeros", roots_json(rep.f1_plus_zeros)},
              {"f2_plus_poles", roots_json(rep.f2_plus_poles)},
              {"f2_plus_zeros", roots_json(rep.f2_plus_zeros)},
              {"pole_sets_distinct", rep.pole_sets_distinct},
              {"zero_sets_distinct", rep.zero_sets_distinct},
              {"p1_positive", report_json(rep.p1_positive)},
              {"p2_positive", report_json(rep.p2_positive)}},
         text.str());
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult result;
    Options opt;

    CLI::App app{"Algebra of generalized positive rational functions"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_flag("--json", opt.json_output, "machine-readable JSON output");
    app.add_option("--config", config_path, "JSON file with tolerance overrides");
    app.add_option("--tol-equality", opt.tol.equality_rel, "equality predicate tolerance");
    app.add_option("--tol-nonneg", opt.tol.nonneg_margin, "nonnegativity margin tolerance");
    app.add_option("--tol-axis", opt.tol.axis_base, "axis membership tolerance");
    app.add_option("--tol-cluster", opt.tol.cluster_base, "root clustering radius");
    app.add_option("--tol-residual", opt.tol.node_residual, "interpolation residual tolerance");

    std::string expr, so_text, klass = "p", g_text, problem_path;
    std::vector<std::string> pairs;
    bool inverse = false;
    double eps = 0.01, delta = 0.01;

    CLI::App* classify_cmd = app.add_subcommand("classify", "class membership of an expression");
    classify_cmd->add_option("expr", expr, "rational expression in s")->required();

    CLI::App* factor_cmd = app.add_subcommand("factor", "canonical factorization psi = g p g#");
    factor_cmd->add_option("expr", expr)->required();
    factor_cmd->add_option("--so", so_text, "normalization point on the imaginary axis");

    CLI::App* evenodd_cmd = app.add_subcommand("evenodd", "even/odd decomposition");
    evenodd_cmd->add_option("expr", expr)->required();

    CLI::App* spectral_cmd =
        app.add_subcommand("spectral", "spectral factor and product form of a GPE function");
    spectral_cmd->add_option("expr", expr)->required();

    CLI::App* interp_cmd = app.add_subcommand("interpolate", "Nevanlinna-Pick interpolation");
    interp_cmd->add_option("--class", klass, "constraint: p, po, gpg, oddg, gpe, gponesided");
    interp_cmd->add_option("--g", g_text, "prescribed g for gpg/oddg");
    interp_cmd->add_option("--problem", problem_path, "JSON problem document");
    interp_cmd->add_option("pairs", pairs, "node=value pairs");

    CLI::App* cayley_cmd = app.add_subcommand("cayley", "Cayley transform (1-f)/(1+f)");
    cayley_cmd->add_option("expr", expr)->required();
    cayley_cmd->add_flag("--inverse", inverse, "label output as the positive side");

    CLI::App* blaschke_cmd =
        app.add_subcommand("blaschke", "Blaschke extraction f_gb = f_b / beta");
    blaschke_cmd->add_option("expr", expr)->required();

    CLI::App* demo_cmd = app.add_subcommand("demo-gbg", "GB_g pole/zero instability demo");
    demo_cmd->add_option("--g", g_text, "g with zeros and poles in the open right half plane")
        ->required();
    demo_cmd->add_option("--eps", eps, "zero perturbation");
    demo_cmd->add_option("--delta", delta, "pole perturbation");

    for (CLI::App* sub : {classify_cmd, factor_cmd, evenodd_cmd, spectral_cmd, interp_cmd,
                          cayley_cmd, blaschke_cmd, demo_cmd})
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out;
        if (e.get_exit_code() == 0) {
            // --help and friends.
            out << app.help();
            result.out = out.str();
            return result;
        }
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 2;
        return result;
    }

    try {
        if (!config_path.empty()) apply_config_file(opt.tol, config_path);
        if (classify_cmd->parsed()) run_classify(result, opt, expr);
        else if (factor_cmd->parsed()) run_factor(result, opt, expr, so_text);
        else if (evenodd_cmd->parsed()) run_evenodd(result, opt, expr);
        else if (spectral_cmd->parsed()) run_spectral(result, opt, expr);
        else if (interp_cmd->parsed())
            run_interpolate(result, opt, klass, g_text, pairs, problem_path);
        else if (cayley_cmd->parsed()) run_cayley(result, opt, expr, inverse);
        else if (blaschke_cmd->parsed()) run_blaschke(result, opt, expr);
        else if (demo_cmd->parsed()) run_demo_gbg(result, opt, g_text, eps, delta);
    } catch (const Error& e) {
        result.exit_code = exit_code_for(e.code());
        if (opt.json_output) {
            json doc{{"verb", app.get_subcommands().empty()
                                  ? ""
                                  : app.get_subcommands().front()->get_name()},
                     {"ok", false},
                     {"error", json{{"code", error_code_name(e.code())}, {"message", e.what()}}},
                     {"result", nullptr}};
            result.out = doc.dump(2) + "\n";
        }
        result.err = std::string(e.what()) + "\n";
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.err = std::string(e.what()) + "\n";
    }
    return result;
}

}  // namespace gpr
