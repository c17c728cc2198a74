// cmrep: command-line front end to the cmrep library.
//
// Exit status: 0 on success, 2 for invalid input or arguments, 3 when a
// well-formed computation cannot be carried out.

#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmrep/report.hpp"

namespace {

using namespace cmrep;

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;

struct Options {
    std::string graph, ribbon, cm;
    std::string D = "1";
    double truncation = 10;
    int n_cutoff = 2;
    std::string lo = "-2", hi = "6";
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::size_t samples = 1'000'000;
    unsigned threads = 1;
    std::string out;
    std::string format;

    std::string method = "both";
    std::vector<std::string> s_values;
    std::vector<std::string> a_values;
    std::vector<double> study;
    std::string csv;

    std::string test_function = "gaussian";
    double s = -0.5;
    std::vector<double> grid = {2, 4, 8, 16};

    std::string phi = "2", beta_D = "2";
    double m2 = 1;
    bool sweep = false;
};

struct Input {
    std::optional<GraphInput> graph;
    std::optional<RibbonInput> ribbon;
    std::optional<CMRep> cm;
};

Input load_input(const Options& o, bool required) {
    const int given = !o.graph.empty() + !o.ribbon.empty() + !o.cm.empty();
    if (given > 1) throw ValidationError("give at most one of --graph, --ribbon, --cm");
    if (given == 0) {
        if (required) throw ValidationError("this command needs --graph, --ribbon or --cm");
        return {};
    }
    Input in;
    if (!o.graph.empty()) {
        auto doc = load_document(o.graph);
        in.graph = graph_from_json(doc);
    } else if (!o.ribbon.empty()) {
        auto doc = load_document(o.ribbon);
        in.ribbon = ribbon_from_json(doc);
    } else {
        auto doc = load_document(o.cm);
        in.cm = cm_from_json(doc);
    }
    return in;
}

CMRep cm_of(const Input& in, unsigned threads) {
    if (in.graph) return build_cm(in.graph->graph);
    if (in.ribbon) return build_cm(in.ribbon->ribbon, threads);
    return *in.cm;
}

Rational parse_rational_flag(const std::string& text, const std::string& flag) {
    try {
        return parse_rational(text);
    } catch (const ValidationError& e) {
        throw ValidationError(flag + ": " + e.what());
    }
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const std::string& flag) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError(flag + " expects key=value, got '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

Complex parse_complex(const std::string& text, const std::string& flag) {
    // "a" or "a+bi" / "a-bi".
    std::string t = text;
    try {
        if (!t.empty() && t.back() == 'i') {
            t.pop_back();
            std::size_t cut = t.find_last_of("+-");
            while (cut != std::string::npos && cut > 0 && (t[cut - 1] == 'e' || t[cut - 1] == 'E'))
                cut = t.find_last_of("+-", cut - 1);
            if (cut == std::string::npos || cut == 0) return {0, std::stod(t)};
            return {std::stod(t.substr(0, cut)), std::stod(t.substr(cut))};
        }
        std::size_t used = 0;
        double re = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("trailing");
        return {re, 0};
    } catch (const std::exception&) {
        throw ValidationError(flag + ": cannot parse complex number '" + text + "'");
    }
}

QuadratureSpec quadrature(const Options& o) {
    QuadratureSpec q;
    q.tolerance = o.tol;
    q.seed = o.seed;
    q.samples = o.samples;
    q.threads = o.threads;
    q.validate();
    return q;
}

std::map<std::string, double> invariant_values(const Input& in, const Options& o) {
    std::map<std::string, double> values;
    if (in.graph) {
        for (const auto& [k, v] : in.graph->invariant_values) values[k] = to_double(v);
    }
    for (const auto& a : o.s_values) {
        auto [k, v] = split_assignment(a, "--s");
        values[k] = to_double(parse_rational_flag(v, "--s " + k));
    }
    return values;
}

Report run_eval(const Input& in, const Options& o) {
    const Rational D = parse_rational_flag(o.D, "--D");
    if (o.method != "parametric" && o.method != "contour" && o.method != "both")
        throw ValidationError("--method must be parametric, contour or both");
    const auto q = quadrature(o);
    const auto values = invariant_values(in, o);
    const CMRep cm = cm_of(in, o.threads);

    std::optional<EvalResult> parametric;
    auto run_parametric = [&]() -> EvalResult {
        if (in.graph) return eval_parametric_commutative(in.graph->graph, values, D, q);
        if (in.ribbon) {
            const auto& r = in.ribbon->ribbon;
            if (r.model != RibbonModel::GW)
                return eval_parametric_nc(hu_lsz(r, o.threads), {PolyKind::HV_R, r.L, {}}, {PolyKind::HV_I, r.L, {}},
                                          D, q);
            PolynomialSum hvR{PolyKind::HV_R, r.L, {}}, hvI{PolyKind::HV_I, r.L, {}};
            if (!r.externals.empty()) {
                hvR = hv_real_gw(r, r.externals, o.threads);
                hvI = hv_imag_gw(r, r.externals, o.threads);
            }
            return eval_parametric_nc(hu_gw(r, o.threads), hvR, hvI, D, q);
        }
        throw ValidationError("parametric evaluation needs --graph or --ribbon");
    };

    std::vector<EvalResult> results;
    if (o.method != "contour") {
        parametric = run_parametric();
        results.push_back(*parametric);
    }
    if (o.method != "parametric") results.push_back(eval_cm_contour(cm, values, {}, D, o.truncation, q));
    Report rep = eval_report(results, D);

    if (!o.study.empty()) {
        if (!parametric) parametric = run_parametric();
        auto rows = contour_study(cm, values, {}, D, o.study, parametric->value, q);
        Json study = Json::array();
        rep.human += "truncation study against the parametric value:\n";
        for (const auto& r : rows) {
            study.push_back(Json{{"T", r.truncation}, {"value", detail::complex_json(r.value)}, {"deviation", r.deviation}});
            rep.human += "  T = " + detail::fmt_double(r.truncation) + "  deviation " + detail::fmt_double(r.deviation) + "\n";
        }
        rep.machine["study"] = study;
        if (!o.csv.empty()) {
            std::ofstream f(o.csv);
            if (!f) throw ValidationError("cannot write '" + o.csv + "'");
            write_convergence_csv(f, rows);
        }
    }
    return rep;
}

Report run_appendix_b(const Options& o) {
    const Complex phi = parse_complex(o.phi, "--phi");
    const Complex D = parse_complex(o.beta_D, "--D");
    Report rep = appendix_b_report(phi, D, o.m2, std::max(o.tol, 1e-13));
    if (o.sweep) {
        // beta_m - beta over D in (0.1, 4) at the given phi and m2.
        Json sweep = Json::array();
        double worst = 0;
        for (int k = 0; k <= 39; ++k) {
            const double d = 0.1 + 0.1 * k;
            const Complex diff = beta_massive_minus_std(phi, Complex(d, 0), o.m2, std::max(o.tol, 1e-13));
            worst = std::max(worst, std::abs(diff));
            sweep.push_back(Json{{"D", d}, {"difference", detail::complex_json(diff)}});
        }
        rep.machine["sweep"] = sweep;
        rep.machine["sweep_max_abs"] = worst;
        rep.human += "max |beta_m - beta| over D in [0.1, 4]: " + detail::fmt_double(worst) + "\n";
    }
    return rep;
}

Report dispatch(const std::string& verb, const Options& o) {
    if (verb == "verify-appendix-a") {
        if (o.grid.empty()) throw ValidationError("--grid needs at least one truncation");
        return appendix_a_report(parse_test_function(o.test_function), o.s, o.grid, quadrature(o));
    }
    if (verb == "verify-appendix-b") return run_appendix_b(o);

    const Input in = load_input(o, true);
    if (verb == "polys") {
        if (in.graph) return polys_report(*in.graph);
        if (in.ribbon) return polys_report(*in.ribbon, o.threads);
        throw ValidationError("polys needs --graph or --ribbon");
    }
    if (verb == "eval") return run_eval(in, o);

    const CMRep cm = cm_of(in, o.threads);
    if (verb == "cm") return cm_report(cm);
    if (verb == "domain") return domain_report(cm, parse_rational_flag(o.D, "--D"));
    if (verb == "strip") return strip_report(cm);
    if (verb == "poles")
        return poles_report(cm, o.n_cutoff, parse_rational_flag(o.lo, "--lo"), parse_rational_flag(o.hi, "--hi"),
                            o.threads);
    if (verb == "leading-power") {
        std::map<std::string, Rational> a;
        for (const auto& s : o.a_values) {
            auto [k, v] = split_assignment(s, "--a");
            a[k] = parse_rational_flag(v, "--a " + k);
        }
        return leading_power_report(cm, a, parse_rational_flag(o.D, "--D"));
    }
    throw ValidationError("unknown command '" + verb + "'");
}

void add_input_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--graph", o.graph, "graph JSON file or bundled name");
    cmd->add_option("--ribbon", o.ribbon, "ribbon JSON file or bundled name");
    cmd->add_option("--cm", o.cm, "CM representation exported by 'cm'");
}

void add_common_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
    cmd->add_option("--out", o.out, "write the report to FILE");
    cmd->add_option("--format", o.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
}

void add_numeric_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--tol", o.tol, "quadrature tolerance");
    cmd->add_option("--seed", o.seed, "Monte Carlo seed");
    cmd->add_option("--samples", o.samples, "Monte Carlo samples");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complete Mellin representations of Feynman amplitudes"};
    app.require_subcommand(1);
    Options o;

    auto* polys = app.add_subcommand("polys", "Symanzik or matrix-mode polynomials");
    add_input_flags(polys, o);
    add_common_flags(polys, o);

    auto* cm = app.add_subcommand("cm", "export the CM representation");
    add_input_flags(cm, o);
    add_common_flags(cm, o);

    auto* domain = app.add_subcommand("domain", "Mellin domain and a witness at one D");
    add_input_flags(domain, o);
    add_common_flags(domain, o);
    domain->add_option("--D", o.D, "space-time dimension p/q");

    auto* strip = app.add_subcommand("strip", "analyticity strip in D");
    add_input_flags(strip, o);
    add_common_flags(strip, o);

    auto* poles = app.add_subcommand("poles", "pole candidates in D");
    add_input_flags(poles, o);
    add_common_flags(poles, o);
    poles->add_option("--n-cutoff", o.n_cutoff, "largest Gamma pole index");
    poles->add_option("--lo", o.lo, "window lower end p/q");
    poles->add_option("--hi", o.hi, "window upper end p/q");

    auto* eval = app.add_subcommand("eval", "numeric evaluation");
    add_input_flags(eval, o);
    add_common_flags(eval, o);
    add_numeric_flags(eval, o);
    eval->add_option("--D", o.D, "space-time dimension p/q");
    eval->add_option("--truncation", o.truncation, "contour truncation T");
    eval->add_option("--method", o.method, "parametric, contour or both");
    eval->add_option("--s", o.s_values, "invariant value symbol=p/q")->take_all();
    eval->add_option("--study", o.study, "truncation grid for a contour study")->delimiter(',');
    eval->add_option("--csv", o.csv, "write the study as CSV");

    auto* lp = app.add_subcommand("leading-power", "leading power of a scaling limit");
    add_input_flags(lp, o);
    add_common_flags(lp, o);
    lp->add_option("--D", o.D, "space-time dimension p/q");
    lp->add_option("--a", o.a_values, "scaling exponent key=p/q")->take_all();

    auto* va = app.add_subcommand("verify-appendix-a", "Mellin-Barnes step-function lemma");
    add_common_flags(va, o);
    add_numeric_flags(va, o);
    va->add_option("--test-function", o.test_function, "gaussian or bump");
    va->add_option("--s", o.s, "contour abscissa in (-1, 0)");
    va->add_option("--grid", o.grid, "truncations")->delimiter(',');

    auto* vb = app.add_subcommand("verify-appendix-b", "massive beta integral");
    add_common_flags(vb, o);
    vb->add_option("--tol", o.tol, "quadrature tolerance");
    vb->add_option("--phi", o.phi, "phi (a or a+bi)");
    vb->add_option("--D", o.beta_D, "D (a or a+bi)");
    vb->add_option("--m2", o.m2, "mass squared");
    vb->add_flag("--sweep", o.sweep, "scan beta_m - beta over D in (0.1, 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        Report rep = dispatch(verb, o);
        const std::string format = !o.format.empty() ? o.format : o.out.empty() ? "human" : "machine";
        const std::string text = format == "machine" ? dump(rep.machine) : rep.human;
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out);
            if (!f) throw ValidationError("cannot write '" + o.out + "'");
            f << text;
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ComputationError& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return kExitComputation;
    }
}
