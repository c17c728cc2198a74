#pragma once

// Complete Mellin representation: one Mellin variable per monomial of the
// first (U / HU) and second (V / HV^R / HV^I) polynomials, the convex domain of
// contour real parts, and the LPs over it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmrep/errors.hpp"
#include "cmrep/graphs.hpp"
#include "cmrep/linear_program.hpp"
#include "cmrep/polynomials.hpp"
#include "cmrep/rational.hpp"

namespace cmrep {

enum class CmMode { commutative, noncommutative };
enum class VarKind { x, yR, yI };

struct MellinRow {
    std::vector<int> exponents;  // per line
    Rational coefficient = 1;    // a_K (first polynomial) or the numeric part of the base
    std::string symbol;          // invariant symbol raised to the y power, if any
    std::vector<std::vector<int>> origins;
};

struct CMRep {
    CmMode mode = CmMode::commutative;
    std::size_t num_lines = 0;
    std::vector<MellinRow> u_rows;   // x variables
    std::vector<MellinRow> vR_rows;  // y (commutative) or y^R variables
    std::vector<MellinRow> vI_rows;  // y^I variables (noncommutative only)
    std::vector<Rational> masses;    // m_l^2, commutative mode
    Rational prefactor = 1;

    std::size_t num_vars() const { return u_rows.size() + vR_rows.size() + vI_rows.size(); }

    VarKind kind(std::size_t v) const {
        if (v < u_rows.size()) return VarKind::x;
        if (v < u_rows.size() + vR_rows.size()) return VarKind::yR;
        return VarKind::yI;
    }

    const MellinRow& row(std::size_t v) const {
        if (v < u_rows.size()) return u_rows[v];
        v -= u_rows.size();
        if (v < vR_rows.size()) return vR_rows[v];
        return vI_rows[v - vR_rows.size()];
    }

    /// x1.., then y1.. (commutative) or yR1.., yI1...
    std::string label(std::size_t v) const {
        switch (kind(v)) {
            case VarKind::x: return "x" + std::to_string(v + 1);
            case VarKind::yR:
                return (mode == CmMode::commutative ? "y" : "yR") + std::to_string(v - u_rows.size() + 1);
            case VarKind::yI: return "yI" + std::to_string(v - u_rows.size() - vR_rows.size() + 1);
        }
        return {};
    }

    /// Key used to attach scaling exponents: the invariant symbol, else the label.
    std::string scaling_key(std::size_t v) const {
        const auto& s = row(v).symbol;
        return s.empty() ? label(v) : s;
    }

    /// Coefficient of z_v in Re phi_l (phi_l = sum_v u_{lv} z_v + 1).
    int phi_coefficient(std::size_t line, std::size_t v) const { return row(v).exponents[line]; }

    void validate() const {
        if (num_lines == 0) throw ValidationError("CM representation needs L >= 1");
        if (u_rows.empty()) throw ValidationError("CM representation needs a nonempty first polynomial");
        if (mode == CmMode::commutative && !vI_rows.empty())
            throw ValidationError("commutative CM representation cannot have yI variables");
        if (mode == CmMode::commutative && masses.size() != num_lines)
            throw ValidationError("commutative CM representation needs one mass per line");
        for (std::size_t v = 0; v < num_vars(); ++v) {
            const auto& r = row(v);
            if (r.exponents.size() != num_lines) throw ValidationError("exponent row of wrong length");
            for (int e : r.exponents) {
                if (e < 0 || e > 2) throw ValidationError("exponents must lie in {0,1,2}");
            }
            if (r.coefficient == 0) throw ValidationError("zero coefficient in CM representation");
        }
    }
};

namespace detail {

inline std::vector<MellinRow> rows_from(const PolynomialSum& p) {
    std::vector<MellinRow> rows;
    for (const auto& m : p.monomials) rows.push_back({m.exponents, m.coefficient, m.symbol, m.origins});
    return rows;
}

}  // namespace detail

/// Assembles the representation from the polynomials. A U-kind first
/// polynomial selects commutative mode (masses required, no HV^I); HU selects
/// noncommutative mode. In either mode the y variables enter the balance
/// through their sum.
inline CMRep build_cm(const PolynomialSum& first, const PolynomialSum& second_real,
                      const PolynomialSum& second_imag = {PolyKind::HV_I, 0, {}},
                      std::vector<Rational> masses = {}, Rational prefactor = 1) {
    if (first.empty()) throw ValidationError("build_cm: empty first polynomial (no Gamma(-sum x) possible)");
    CMRep cm;
    cm.mode = first.kind == PolyKind::U ? CmMode::commutative : CmMode::noncommutative;
    cm.num_lines = first.num_lines;
    auto check_lines = [&](const PolynomialSum& p) {
        if (!p.empty() && p.num_lines != first.num_lines)
            throw ValidationError("build_cm: inconsistent line counts");
    };
    check_lines(second_real);
    check_lines(second_imag);
    if (cm.mode == CmMode::commutative && !second_imag.empty())
        throw ValidationError("build_cm: commutative input cannot have an imaginary part");
    cm.u_rows = detail::rows_from(first);
    cm.vR_rows = detail::rows_from(second_real);
    cm.vI_rows = detail::rows_from(second_imag);
    cm.masses = std::move(masses);
    cm.prefactor = std::move(prefactor);
    cm.validate();
    return cm;
}

inline CMRep build_cm(const FeynmanGraph& g) {
    std::vector<Rational> masses;
    for (const auto& l : g.lines()) masses.push_back(l.mass2);
    return build_cm(symanzik_u(g), symanzik_v(g), {PolyKind::HV_I, 0, {}}, std::move(masses));
}

/// Noncommutative representation of a matrix-mode ribbon graph; HV terms use
/// the ribbon's stored external vectors (none: HU only).
inline CMRep build_cm(const RibbonData& r, unsigned threads = 1) {
    r.validate();
    PolynomialSum hu = r.model == RibbonModel::GW ? hu_gw(r, threads) : hu_lsz(r, threads);
    PolynomialSum hvR{PolyKind::HV_R, r.L, {}}, hvI{PolyKind::HV_I, r.L, {}};
    if (r.model == RibbonModel::GW && !r.externals.empty() && !r.P.empty()) {
        hvR = hv_real_gw(r, r.externals, threads);
        hvI = hv_imag_gw(r, r.externals, threads);
    }
    return build_cm(hu, hvR, hvI, {}, r.prefactor);
}

// ---------------------------------------------------------------------------
// Domain of convergence

struct MellinDomain {
    LinearProgram lp;  // variables: real parts of the Mellin variables
    std::vector<std::vector<Rational>> phi;  // Re phi_l = phi[l] . z + 1
    Rational D;
};

namespace detail {

// Sign bounds and Re phi_l > 0 rows; `extra` columns are appended (zero) to every row.
inline void add_domain_inequalities(const CMRep& cm, LinearProgram& lp, std::size_t extra) {
    const std::size_t n = cm.num_vars(), width = n + extra;
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<Rational> c(width);
        c[v] = 1;
        lp.add(c, Relation::less, 0, "Re " + cm.label(v) + " < 0");
        if (cm.kind(v) == VarKind::yI) lp.add(c, Relation::greater, -1, "Re " + cm.label(v) + " > -1");
    }
    for (std::size_t l = 0; l < cm.num_lines; ++l) {
        std::vector<Rational> c(width);
        for (std::size_t v = 0; v < n; ++v) c[v] = cm.phi_coefficient(l, v);
        lp.add(c, Relation::greater, -1, "Re phi_" + std::to_string(l + 1) + " > 0");
    }
}

inline std::vector<std::string> variable_names(const CMRep& cm) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < cm.num_vars(); ++v) names.push_back("Re " + cm.label(v));
    return names;
}

}  // namespace detail

/// sigma < 0, tau^R < 0, -1 < tau^I < 0 (noncommutative), sum z = -D/2 and
/// Re phi_l > 0 for every line.
inline MellinDomain build_domain(const CMRep& cm, const Rational& D) {
    cm.validate();
    MellinDomain dom;
    dom.D = D;
    dom.lp.variables = detail::variable_names(cm);
    detail::add_domain_inequalities(cm, dom.lp, 0);
    dom.lp.add(std::vector<Rational>(cm.num_vars(), Rational(1)), Relation::equal, -D / 2, "balance");
    for (std::size_t l = 0; l < cm.num_lines; ++l) {
        std::vector<Rational> c(cm.num_vars());
        for (std::size_t v = 0; v < cm.num_vars(); ++v) c[v] = cm.phi_coefficient(l, v);
        dom.phi.push_back(std::move(c));
    }
    return dom;
}

/// Maximum-slack interior point of the domain at D, or nullopt when empty.
inline std::optional<InteriorPoint> delta_witness(const CMRep& cm, const Rational& D) {
    return lp_interior_point(build_domain(cm, D).lp);
}

struct AnalyticityStrip {
    bool empty = false;      // no D > 0 admits a nonempty domain
    bool unbounded = false;  // every D > 0 does
    Rational d_max;          // supremum of admissible D otherwise
};

/// The admissible D form an interval (0, D_max): a witness z at D scales to
/// (D'/D) z at any 0 < D' < D. D_max is an exact LP optimum with D as a variable.
inline AnalyticityStrip analyticity_strip(const CMRep& cm) {
    cm.validate();
    const std::size_t n = cm.num_vars();
    LinearProgram lp;
    lp.variables = detail::variable_names(cm);
    lp.variables.push_back("D");
    detail::add_domain_inequalities(cm, lp, 1);
    std::vector<Rational> balance(n + 1, Rational(1));
    balance[n] = Rational(1, 2);
    lp.add(balance, Relation::equal, 0, "balance");
    std::vector<Rational> d_row(n + 1);
    d_row[n] = 1;
    lp.add(d_row, Relation::greater, 0, "D > 0");

    AnalyticityStrip out;
    if (!lp_interior_point(lp)) {
        out.empty = true;
        return out;
    }
    auto sup = lp_supremum(lp, d_row);
    if (sup.status == LpStatus::unbounded)
        out.unbounded = true;
    else
        out.d_max = sup.value;
    return out;
}

inline bool in_strip(const AnalyticityStrip& s, const Rational& D) {
    if (s.empty || D <= 0) return false;
    return s.unbounded || D < s.d_max;
}

struct LeadingPower {
    bool unbounded = false;
    Rational value;
    std::vector<Rational> maximizer;
};

/// Supremum over the closure of the domain at D of sum_k a_k Re y_k, the y
/// variables being matched to `a` through their scaling key (invariant symbol
/// or label). An upper bound on the leading power of lambda under s_k ->
/// lambda^{a_k} s_k.
inline LeadingPower leading_power(const CMRep& cm, const std::map<std::string, Rational>& a, const Rational& D) {
    auto dom = build_domain(cm, D);
    if (!lp_interior_point(dom.lp)) throw ComputationError("leading_power: the Mellin domain is empty at D = " + D.str());
    std::vector<Rational> objective(cm.num_vars());
    std::map<std::string, bool> used;
    for (const auto& [k, val] : a) used[k] = false;
    for (std::size_t v = cm.u_rows.size(); v < cm.num_vars(); ++v) {
        auto it = a.find(cm.scaling_key(v));
        if (it != a.end()) {
            objective[v] = it->second;
            used[it->first] = true;
        }
    }
    for (const auto& [k, u] : used) {
        if (!u) throw ValidationError("leading_power: unknown invariant '" + k + "'");
    }
    auto sol = lp_supremum(dom.lp, objective);
    LeadingPower out;
    if (sol.status == LpStatus::unbounded) {
        out.unbounded = true;
    } else {
        out.value = sol.value;
        out.maximizer = sol.point;
    }
    return out;
}

}  // namespace cmrep
