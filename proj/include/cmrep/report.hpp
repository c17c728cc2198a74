#pragma once

// Reports shared by the command-line tool and the acceptance checks: a
// machine-readable JSON document with fixed field order, and a plain-text
// rendering of the same content.

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cmrep/cm_core.hpp"
#include "cmrep/io.hpp"
#include "cmrep/numeric_eval.hpp"
#include "cmrep/pole_scan.hpp"
#include "cmrep/polynomials.hpp"

namespace cmrep {

struct Report {
    Json machine;
    std::string human;
};

namespace detail {

inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string fmt_complex(Complex z) {
    return fmt_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt_double(std::abs(z.imag())) + "i";
}

inline Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json rational_list(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Polynomials

inline Report polys_report(const GraphInput& in) {
    auto U = symanzik_u(in.graph);
    auto V = symanzik_v(in.graph);
    Report r;
    r.machine["report"] = "polys";
    r.machine["input"] = in.name;
    r.machine["U"] = polynomial_to_json(U);
    r.machine["V"] = polynomial_to_json(V);
    r.human = "U = " + U.render("a") + "\nV = " + V.render("a") + "\n";
    return r;
}

inline Report polys_report(const RibbonInput& in, unsigned threads) {
    const auto& d = in.ribbon;
    Report r;
    r.machine["report"] = "polys";
    r.machine["input"] = in.name;
    if (d.model == RibbonModel::GW) {
        auto hu = hu_gw(d, threads);
        r.machine["HU"] = polynomial_to_json(hu);
        r.human = "HU = " + hu.render("t") + "\n";
        if (!d.externals.empty()) {
            auto hvR = hv_real_gw(d, d.externals, threads);
            auto hvI = hv_imag_gw(d, d.externals, threads);
            r.machine["HV_R"] = polynomial_to_json(hvR);
            r.machine["HV_I"] = polynomial_to_json(hvI);
            r.human += "HV_R = " + hvR.render("t") + "\nHV_I = " + hvI.render("t") + "\n";
        }
    } else {
        auto hu = hu_lsz(d, threads);
        r.machine["HU"] = polynomial_to_json(hu);
        r.human = "HU = " + hu.render("t") + "\n";
    }
    return r;
}

// ---------------------------------------------------------------------------
// CM representation, domain, strip

inline Report cm_report(const CMRep& cm) {
    Report r;
    r.machine = cm_to_json(cm);
    std::ostringstream os;
    os << "mode: " << to_string(cm.mode) << "\nlines: " << cm.num_lines << "\nprefactor: " << cm.prefactor << "\n";
    os << "variables (" << cm.num_vars() << "):\n";
    for (std::size_t v = 0; v < cm.num_vars(); ++v) {
        const auto& row = cm.row(v);
        os << "  " << cm.label(v) << "  coefficient " << row.coefficient;
        if (!row.symbol.empty()) os << "  symbol " << row.symbol;
        os << "  exponents (";
        for (std::size_t l = 0; l < row.exponents.size(); ++l) os << (l ? "," : "") << row.exponents[l];
        os << ")\n";
    }
    os << "domain:\n";
    for (const auto& c : domain_constraint_text(cm)) os << "  " << c << "\n";
    r.human = os.str();
    return r;
}

inline Report domain_report(const CMRep& cm, const Rational& D) {
    auto dom = build_domain(cm, D);
    auto w = lp_interior_point(dom.lp);
    Report r;
    r.machine["report"] = "domain";
    r.machine["D"] = to_string(D);
    Json cons = Json::array();
    for (const auto& c : dom.lp.constraints) cons.push_back(c.label);
    r.machine["constraints"] = cons;
    r.machine["feasible"] = w.has_value();
    std::ostringstream os;
    os << "D = " << D << "\n";
    if (w) {
        Json pt;
        for (std::size_t v = 0; v < cm.num_vars(); ++v) pt[cm.label(v)] = to_string(w->point[v]);
        r.machine["witness"] = pt;
        r.machine["slack"] = to_string(w->slack);
        os << "feasible; max-slack witness (slack " << w->slack << "):\n";
        for (std::size_t v = 0; v < cm.num_vars(); ++v) os << "  Re " << cm.label(v) << " = " << w->point[v] << "\n";
    } else {
        os << "infeasible: the Mellin domain is empty\n";
    }
    r.human = os.str();
    return r;
}

inline std::string strip_text(const AnalyticityStrip& s) {
    if (s.empty) return "empty";
    return "(0, " + (s.unbounded ? std::string("inf") : to_string(s.d_max)) + ")";
}

inline Report strip_report(const CMRep& cm) {
    auto s = analyticity_strip(cm);
    Report r;
    r.machine["report"] = "strip";
    r.machine["empty"] = s.empty;
    r.machine["unbounded"] = s.unbounded;
    r.machine["d_max"] = s.empty ? Json() : s.unbounded ? Json("inf") : Json(to_string(s.d_max));
    r.human = "analyticity strip: " + strip_text(s) + "\n";
    return r;
}

// ---------------------------------------------------------------------------
// Poles

inline Report poles_report(const CMRep& cm, int n_cutoff, const Rational& lo, const Rational& hi, unsigned threads) {
    auto scan = scan_poles(cm, n_cutoff, lo, hi, threads);
    Report r;
    r.machine["report"] = "poles";
    r.machine["n_cutoff"] = n_cutoff;
    r.machine["window"] = Json::array({to_string(lo), to_string(hi)});
    r.machine["strip"] = strip_text(scan.strip);
    auto list = [&](const std::vector<PoleCandidate>& cs) {
        Json out = Json::array();
        for (const auto& c : cs) {
            Json e;
            e["D"] = to_string(c.D);
            e["conditions"] = c.certificate.conditions(cm);
            e["lambda"] = detail::rational_list(c.certificate.lambda);
            out.push_back(e);
        }
        return out;
    };
    r.machine["candidates"] = list(scan.candidates);
    r.machine["suppressed"] = list(scan.suppressed);
    bool clear = true;
    for (const auto& c : scan.candidates) clear = clear && !(c.D > 0 && c.D < 2);
    r.machine["clear_in_0_2"] = clear;

    std::ostringstream os;
    os << "window [" << lo << ", " << hi << "], n_cutoff " << n_cutoff << ", strip " << strip_text(scan.strip) << "\n";
    os << "candidates (" << scan.candidates.size() << "):\n";
    for (const auto& c : scan.candidates)
        os << "  D = " << c.D << "   from " << detail::join(c.certificate.conditions(cm), ", ") << "\n";
    if (!scan.suppressed.empty()) {
        os << "inside the convergence strip, not singular (" << scan.suppressed.size() << "):";
        for (const auto& c : scan.suppressed) os << " " << c.D;
        os << "\n";
    }
    os << "no candidate in (0, 2): " << (clear ? "yes" : "no") << "\n";
    r.human = os.str();
    return r;
}

// ---------------------------------------------------------------------------
// Numerics

inline Json eval_json(const EvalResult& e) {
    Json j;
    j["method"] = e.method;
    j["scheme"] = e.scheme;
    j["value"] = detail::complex_json(e.value);
    j["error_estimate"] = e.error_estimate;
    j["truncation"] = e.truncation;
    j["panel_width"] = e.panel_width;
    j["evaluations"] = e.evaluations;
    j["seed"] = e.seed;
    j["real_parts"] = e.real_parts;
    return j;
}

inline std::string eval_text(const EvalResult& e) {
    std::string s = e.method + " (" + e.scheme + "): " + detail::fmt_complex(e.value) + "  +- " +
                    detail::fmt_double(e.error_estimate);
    if (e.method == "contour") s += "  T = " + detail::fmt_double(e.truncation);
    return s + "\n";
}

inline Report eval_report(const std::vector<EvalResult>& results, const Rational& D) {
    Report r;
    r.machine["report"] = "eval";
    r.machine["D"] = to_string(D);
    r.machine["results"] = Json::array();
    for (const auto& e : results) {
        r.machine["results"].push_back(eval_json(e));
        r.human += eval_text(e);
    }
    if (results.size() == 2) {
        const double rel = std::abs(results[0].value - results[1].value) / std::abs(results[0].value);
        r.machine["relative_deviation"] = rel;
        r.human += "relative deviation: " + detail::fmt_double(rel) + "\n";
    }
    return r;
}

inline Report leading_power_report(const CMRep& cm, const std::map<std::string, Rational>& a, const Rational& D) {
    auto lp = leading_power(cm, a, D);
    Report r;
    r.machine["report"] = "leading-power";
    r.machine["D"] = to_string(D);
    Json aj = Json::object();
    for (const auto& [k, v] : a) aj[k] = to_string(v);
    r.machine["a"] = aj;
    r.machine["unbounded"] = lp.unbounded;
    r.machine["p_max"] = lp.unbounded ? Json("inf") : Json(to_string(lp.value));
    r.human = "p_max = " + (lp.unbounded ? std::string("+inf") : to_string(lp.value)) + " (upper bound)\n";
    return r;
}

inline Report appendix_a_report(TestFunction f, double s, const std::vector<double>& grid, const QuadratureSpec& q) {
    auto rows = appendix_a_study(f, s, grid, q);
    Report r;
    r.machine["report"] = "verify-appendix-a";
    r.machine["test_function"] = to_string(f);
    r.machine["s"] = s;
    r.machine["lhs"] = detail::complex_json(verify_appendix_a(f, s, grid.front(), q).lhs);
    r.machine["rows"] = Json::array();
    std::ostringstream os;
    os << "test function " << to_string(f) << ", s = " << s << "\n";
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        r.machine["rows"].push_back(
            Json{{"T", rows[i].truncation}, {"rhs", detail::complex_json(rows[i].value)}, {"deviation", rows[i].deviation}});
        os << "  T = " << detail::fmt_double(rows[i].truncation) << "  deviation " << detail::fmt_double(rows[i].deviation)
           << "\n";
        if (i && rows[i].deviation > rows[i - 1].deviation) monotone = false;
    }
    r.machine["monotone"] = monotone;
    os << "monotone non-increasing: " << (monotone ? "yes" : "no") << "\n";
    r.human = os.str();
    return r;
}

inline Report appendix_b_report(Complex phi, Complex D, double m2, double tol) {
    Report r;
    const Complex massive = beta_massive(phi, D, m2, tol);
    const Complex standard = beta_std(phi, D);
    r.machine["report"] = "verify-appendix-b";
    r.machine["phi"] = detail::complex_json(phi);
    r.machine["D"] = detail::complex_json(D);
    r.machine["m2"] = m2;
    r.machine["integral"] = detail::complex_json(massive);
    r.machine["beta_m"] = detail::complex_json(2.0 * massive);
    r.machine["integral_massless"] = detail::complex_json(standard);
    r.machine["beta"] = detail::complex_json(2.0 * standard);
    r.human = "integral (= beta_m / 2): " + detail::fmt_complex(massive) + "\nbeta_m: " +
              detail::fmt_complex(2.0 * massive) + "\nbeta: " + detail::fmt_complex(2.0 * standard) + "\n";
    return r;
}

}  // namespace cmrep
