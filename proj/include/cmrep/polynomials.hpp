#pragma once

// Monomial-sum graph polynomials: commutative Symanzik U, V from trees and
// 2-trees, and the hyperbolic HU, HV^R, HV^I of ribbon graphs from Pfaffians
// of a user-supplied antisymmetric matrix B and coupling matrix P.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cmrep/errors.hpp"
#include "cmrep/exact_linalg.hpp"
#include "cmrep/graphs.hpp"
#include "cmrep/parallel.hpp"
#include "cmrep/rational.hpp"

namespace cmrep {

enum class PolyKind { U, V, HU, HV_R, HV_I };

inline const char* to_string(PolyKind k) {
    switch (k) {
        case PolyKind::U: return "U";
        case PolyKind::V: return "V";
        case PolyKind::HU: return "HU";
        case PolyKind::HV_R: return "HV_R";
        case PolyKind::HV_I: return "HV_I";
    }
    return "?";
}

struct Monomial {
    Rational coefficient = 1;
    std::vector<int> exponents;  // per line, each in {0,1,2}
    std::string symbol;          // external invariant; empty when the coefficient is numeric
    // Index sets that produced the term (tree line ids, or 0-based K = I u J); several after merging.
    std::vector<std::vector<int>> origins;

    int degree() const {
        int d = 0;
        for (int e : exponents) d += e;
        return d;
    }
};

struct PolynomialSum {
    PolyKind kind = PolyKind::U;
    std::size_t num_lines = 0;
    std::vector<Monomial> monomials;

    bool empty() const { return monomials.empty(); }
    std::size_t size() const { return monomials.size(); }

    /// Merges equal (exponents, symbol) pairs, drops zero coefficients, sorts
    /// by exponent vector then symbol.
    void canonicalize() {
        std::sort(monomials.begin(), monomials.end(), [](const Monomial& a, const Monomial& b) {
            return std::tie(a.exponents, a.symbol) < std::tie(b.exponents, b.symbol);
        });
        std::vector<Monomial> merged;
        for (auto& m : monomials) {
            if (!merged.empty() && merged.back().exponents == m.exponents && merged.back().symbol == m.symbol) {
                merged.back().coefficient += m.coefficient;
                for (auto& o : m.origins) merged.back().origins.push_back(std::move(o));
            } else {
                merged.push_back(std::move(m));
            }
        }
        std::erase_if(merged, [](const Monomial& m) { return m.coefficient == 0; });
        for (auto& m : merged) std::sort(m.origins.begin(), m.origins.end());
        monomials = std::move(merged);
    }

    /// Evaluates at rational line variables; symbols looked up in `values`.
    template <class Lookup>
    Rational evaluate(const std::vector<Rational>& t, Lookup&& symbol_value) const {
        Rational sum = 0;
        for (const auto& m : monomials) {
            Rational term = m.coefficient;
            if (!m.symbol.empty()) term *= symbol_value(m.symbol);
            for (std::size_t l = 0; l < num_lines; ++l) term *= pow_nonneg(t[l], static_cast<unsigned>(m.exponents[l]));
            sum += term;
        }
        return sum;
    }

    /// Human-readable rendering with variable name `var` (a for alpha, t, ...).
    std::string render(const std::string& var) const {
        if (monomials.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& m : monomials) {
            bool negative = m.coefficient < 0;
            Rational mag = negative ? Rational(-m.coefficient) : m.coefficient;
            os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
            first = false;
            std::vector<std::string> factors;
            if (mag != 1) factors.push_back(mag.str());
            if (!m.symbol.empty()) factors.push_back(m.symbol);
            for (std::size_t l = 0; l < m.exponents.size(); ++l) {
                if (m.exponents[l] == 0) continue;
                std::string f = var + std::to_string(l + 1);
                if (m.exponents[l] > 1) f += "^" + std::to_string(m.exponents[l]);
                factors.push_back(f);
            }
            if (factors.empty()) factors.push_back("1");
            for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
        }
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Commutative Symanzik polynomials

/// U = sum over spanning trees of the product of alphas of lines not in the tree.
inline PolynomialSum symanzik_u(const FeynmanGraph& g) {
    PolynomialSum u{PolyKind::U, g.num_lines(), {}};
    for (const auto& tree : spanning_trees(g)) {
        Monomial m;
        m.exponents.assign(g.num_lines(), 1);
        for (int id : tree.lines) m.exponents[id - 1] = 0;
        m.origins.push_back(tree.lines);
        u.monomials.push_back(std::move(m));
    }
    u.canonicalize();
    return u;
}

/// V = sum over 2-trees of s_k times the alphas of lines not in the 2-tree.
/// A 2-tree whose cut leaves all external legs on one side carries zero
/// momentum and contributes nothing.
inline PolynomialSum symanzik_v(const FeynmanGraph& g) {
    PolynomialSum v{PolyKind::V, g.num_lines(), {}};
    for (const auto& forest : two_trees(g)) {
        auto symbol = g.invariant_for_split(forest.side_a);
        if (!symbol) {
            std::vector<std::string> legs;
            for (const auto& leg : g.external_legs()) {
                if (std::find(forest.side_a.begin(), forest.side_a.end(), leg.vertex) != forest.side_a.end())
                    legs.push_back(leg.label);
            }
            auto key = g.canonical_side(legs);
            std::string k;
            for (std::size_t i = 0; i < key.size(); ++i) k += (i ? "," : "") + key[i];
            throw ValidationError("no invariant declared for the external-leg bipartition {" + k + "}");
        }
        if (symbol->empty()) continue;
        Monomial m;
        m.exponents.assign(g.num_lines(), 1);
        for (int id : forest.lines) m.exponents[id - 1] = 0;
        m.symbol = *symbol;
        m.origins.push_back(forest.lines);
        v.monomials.push_back(std::move(m));
    }
    v.canonicalize();
    return v;
}

// ---------------------------------------------------------------------------
// Hyperbolic polynomials (matrix mode)

enum class RibbonModel { GW, LSZ };

/// Matrix-mode description of a ribbon graph. Indices 0..L-1 of B are the
/// short variables, L..2L-1 the long ones; any further indices are extra
/// (hypermomentum) variables that are never deleted.
struct RibbonData {
    RibbonModel model = RibbonModel::GW;
    AntisymMatrix B;
    std::vector<std::vector<Rational>> P;  // rows: external variables; columns: dim(B)
    std::size_t L = 0;
    std::size_t F = 1;
    int g = 0;
    Rational s = 1;
    std::optional<int> parity_n;
    std::vector<std::vector<Rational>> externals;  // one vector per row of P
    Rational prefactor = 1;                        // K' (times Omega-dependent constants)

    std::size_t dim() const { return B.dim(); }

    void validate() const {
        if (L == 0) throw ValidationError("ribbon data needs L >= 1");
        if (L > 31) throw ValidationError("ribbon data supports at most 31 lines");
        if (F < 1) throw ValidationError("face count F must be >= 1");
        if (g < 0) throw ValidationError("genus g must be >= 0");
        if (model == RibbonModel::GW && B.dim() < 2 * L)
            throw ValidationError("GW mode needs dim(B) >= 2L");
        if (model == RibbonModel::LSZ && B.dim() < L) throw ValidationError("LSZ mode needs dim(B) >= L");
        if (B.dim() > 64) throw ValidationError("dim(B) must be <= 64");
        for (const auto& row : P) {
            if (row.size() != B.dim()) throw ValidationError("P must have dim(B) columns");
        }
        if (!externals.empty()) {
            if (externals.size() != P.size())
                throw ValidationError("externals must provide one vector per row of P");
            for (const auto& x : externals) {
                if (x.empty() || x.size() % 2 || x.size() != externals.front().size())
                    throw ValidationError("external vectors must share one nonzero even length");
            }
        }
    }

    /// k_K = |K| - L - F + 1.
    long k_of(std::size_t K_size) const {
        return static_cast<long>(K_size) - static_cast<long>(L) - static_cast<long>(F) + 1;
    }
};

namespace detail {

inline std::vector<std::size_t> mask_indices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
}

inline std::vector<int> mask_origin(std::uint64_t mask) {
    std::vector<int> out;
    for (auto i : mask_indices(mask)) out.push_back(static_cast<int>(i));
    return out;
}

// u_l = [l not in I] + [l in J] for K = I u J over short (0..L-1) and long (L..2L-1) indices.
inline std::vector<int> gw_exponents(std::uint64_t K, std::size_t L) {
    std::vector<int> e(L);
    for (std::size_t l = 0; l < L; ++l) {
        const bool in_I = K >> l & 1u;
        const bool in_J = K >> (L + l) & 1u;
        e[l] = (in_I ? 0 : 1) + (in_J ? 1 : 0);
    }
    return e;
}

// s^(2g - k_K), rejecting negative powers.
inline Rational genus_weight(const RibbonData& r, std::size_t K_size, const std::string& where) {
    long power = 2L * r.g - r.k_of(K_size);
    if (power < 0)
        throw ComputationError(where + ": 2g - k_K = " + std::to_string(power) +
                               " < 0 for a nonvanishing term (|K| = " + std::to_string(K_size) + ")");
    return pow_nonneg(r.s, static_cast<unsigned>(power));
}

// Symplectic form omega(x, y) = sum_b (x_{2b} y_{2b+1} - x_{2b+1} y_{2b}); x sigma y = -i omega(x, y).
inline Rational omega(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational w = 0;
    for (std::size_t b = 0; b + 1 < x.size(); b += 2) w += x[b] * y[b + 1] - x[b + 1] * y[b];
    return w;
}

template <class Fn>
std::vector<Monomial> enumerate_masks(std::size_t bits, unsigned threads, Fn&& per_mask) {
    // Fixed chunking keeps the merged order independent of the thread count.
    const std::uint64_t total = std::uint64_t{1} << bits;
    const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 64));
    auto parts = parallel_map(chunks, threads, [&](std::size_t c) {
        std::vector<Monomial> out;
        const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
        per_mask(lo, hi, out);
        return out;
    });
    std::vector<Monomial> all;
    for (auto& p : parts) {
        for (auto& m : p) all.push_back(std::move(m));
    }
    return all;
}

inline void require_model(const RibbonData& r, RibbonModel model, const char* op) {
    r.validate();
    if (r.model != model) throw ValidationError(std::string(op) + ": wrong ribbon model");
    if (!r.parity_n) throw ValidationError(std::string(op) + ": parity_n is unset");
}

}  // namespace detail

/// HU for the Grosse-Wulkenhaar model: sum over K = I u J with parity_n + |K|
/// odd of s^(2g-k_K) Pf(B without K)^2 prod_{l not in I} t_l prod_{l in J} t_l.
inline PolynomialSum hu_gw(const RibbonData& r, unsigned threads = 1) {
    detail::require_model(r, RibbonModel::GW, "hu_gw");
    const std::size_t L = r.L;
    auto monomials = detail::enumerate_masks(2 * L, threads, [&](std::uint64_t lo, std::uint64_t hi, auto& out) {
        PfaffianTable pf(r.B);
        for (std::uint64_t K = lo; K < hi; ++K) {
            const int size = std::popcount(K);
            if ((*r.parity_n + size) % 2 == 0) continue;
            Rational n_K = pf.of_deleted(K);
            if (n_K == 0) continue;
            Rational weight = detail::genus_weight(r, static_cast<std::size_t>(size), "hu_gw");
            Monomial m;
            m.coefficient = weight * n_K * n_K;
            m.exponents = detail::gw_exponents(K, L);
            m.origins.push_back(detail::mask_origin(K));
            out.push_back(std::move(m));
        }
    });
    PolynomialSum hu{PolyKind::HU, L, std::move(monomials)};
    hu.canonicalize();
    return hu;
}

namespace detail {

inline const std::vector<std::vector<Rational>>& checked_externals(const RibbonData& r,
                                                                   const std::vector<std::vector<Rational>>& x) {
    if (x.size() != r.P.size())
        throw ValidationError("external values: expected " + std::to_string(r.P.size()) + " vectors, got " +
                              std::to_string(x.size()));
    for (const auto& v : x) {
        if (v.empty() || v.size() % 2 || v.size() != x.front().size())
            throw ValidationError("external vectors must share one nonzero even length");
    }
    return x;
}

}  // namespace detail

/// HV^R for the GW model with external position vectors substituted:
/// s^R_K = |sum_e x_e sum_{tau not in K} P_{e tau} eps_{K tau} Pf(B without K, tau)|^2.
/// tau runs over the short/long indices.
inline PolynomialSum hv_real_gw(const RibbonData& r, const std::vector<std::vector<Rational>>& external_values,
                                unsigned threads = 1) {
    r.validate();
    if (r.model != RibbonModel::GW) throw ValidationError("hv_real_gw: wrong ribbon model");
    const auto& x = detail::checked_externals(r, external_values);
    const std::size_t L = r.L, d = r.dim(), E = r.P.size();
    const std::size_t comps = E ? x.front().size() : 0;
    auto monomials = detail::enumerate_masks(2 * L, threads, [&](std::uint64_t lo, std::uint64_t hi, auto& out) {
        PfaffianTable pf(r.B);
        for (std::uint64_t K = lo; K < hi; ++K) {
            auto K_idx = detail::mask_indices(K);
            std::vector<Rational> coupling(E);  // c_e
            bool any = false;
            for (std::size_t tau = 0; tau < 2 * L; ++tau) {
                if (K >> tau & 1u) continue;
                Rational n = pf.of_deleted(K | (std::uint64_t{1} << tau));
                if (n == 0) continue;
                const int eps = signature_single(d, K_idx, tau);
                for (std::size_t e = 0; e < E; ++e) {
                    if (r.P[e][tau] == 0) continue;
                    coupling[e] += eps * r.P[e][tau] * n;
                    any = true;
                }
            }
            if (!any) continue;
            Rational norm2 = 0;
            for (std::size_t c = 0; c < comps; ++c) {
                Rational v = 0;
                for (std::size_t e = 0; e < E; ++e) v += x[e][c] * coupling[e];
                norm2 += v * v;
            }
            if (norm2 == 0) continue;
            Monomial m;
            m.coefficient = norm2;
            m.exponents = detail::gw_exponents(K, L);
            m.origins.push_back(detail::mask_origin(K));
            out.push_back(std::move(m));
        }
    });
    PolynomialSum hv{PolyKind::HV_R, L, std::move(monomials)};
    hv.canonicalize();
    return hv;
}

/// HV^I for the GW model: s^I_K = eps_K Pf(B without K) sum_{e,e'} M_{ee'} omega(x_e, x_e'),
/// M_{ee'} = sum_{tau != tau'} P_{e tau} eps_{K tau tau'} Pf(B without K, tau, tau') P_{e' tau'}.
/// The real form omega replaces x sigma x' = -i omega.
inline PolynomialSum hv_imag_gw(const RibbonData& r, const std::vector<std::vector<Rational>>& external_values,
                                unsigned threads = 1) {
    r.validate();
    if (r.model != RibbonModel::GW) throw ValidationError("hv_imag_gw: wrong ribbon model");
    const auto& x = detail::checked_externals(r, external_values);
    const std::size_t L = r.L, d = r.dim(), E = r.P.size();
    std::vector<std::vector<Rational>> w(E, std::vector<Rational>(E));
    bool any_w = false;
    for (std::size_t e = 0; e < E; ++e) {
        for (std::size_t f = 0; f < E; ++f) {
            w[e][f] = detail::omega(x[e], x[f]);
            any_w = any_w || w[e][f] != 0;
        }
    }
    PolynomialSum hv{PolyKind::HV_I, L, {}};
    if (!any_w) return hv;
    hv.monomials = detail::enumerate_masks(2 * L, threads, [&](std::uint64_t lo, std::uint64_t hi, auto& out) {
        PfaffianTable pf(r.B);
        for (std::uint64_t K = lo; K < hi; ++K) {
            Rational n_K = pf.of_deleted(K);
            if (n_K == 0) continue;
            auto K_idx = detail::mask_indices(K);
            Rational bracket = 0;
            for (std::size_t tau = 0; tau < 2 * L; ++tau) {
                if (K >> tau & 1u) continue;
                for (std::size_t tau2 = 0; tau2 < 2 * L; ++tau2) {
                    if (tau2 == tau || (K >> tau2 & 1u)) continue;
                    Rational n = pf.of_deleted(K | (std::uint64_t{1} << tau) | (std::uint64_t{1} << tau2));
                    if (n == 0) continue;
                    const int eps = signature_pair(d, K_idx, tau, tau2);
                    for (std::size_t e = 0; e < E; ++e) {
                        if (r.P[e][tau] == 0) continue;
                        for (std::size_t f = 0; f < E; ++f) {
                            if (r.P[f][tau2] == 0 || w[e][f] == 0) continue;
                            bracket += eps * r.P[e][tau] * n * r.P[f][tau2] * w[e][f];
                        }
                    }
                }
            }
            if (bracket == 0) continue;
            Monomial m;
            m.coefficient = signature_set(d, K_idx) * n_K * bracket;
            m.exponents = detail::gw_exponents(K, L);
            m.origins.push_back(detail::mask_origin(K));
            out.push_back(std::move(m));
        }
    });
    hv.canonicalize();
    return hv;
}

/// HU for the LSZ model: sum over I subset {lines} with parity_n + |I| odd of
/// s^(2g-k_I) Pf(B without I)^2 prod_{l in I} (1 + t_l^2)/2 prod_{l not in I} t_l,
/// expanded over J subset I (J picks the constant term of 1 + t_l^2).
inline PolynomialSum hu_lsz(const RibbonData& r, unsigned threads = 1) {
    detail::require_model(r, RibbonModel::LSZ, "hu_lsz");
    const std::size_t L = r.L;
    auto monomials = detail::enumerate_masks(L, threads, [&](std::uint64_t lo, std::uint64_t hi, auto& out) {
        PfaffianTable pf(r.B);
        for (std::uint64_t I = lo; I < hi; ++I) {
            const int size = std::popcount(I);
            if ((*r.parity_n + size) % 2 == 0) continue;
            Rational n_I = pf.of_deleted(I);
            if (n_I == 0) continue;
            Rational a = detail::genus_weight(r, static_cast<std::size_t>(size), "hu_lsz") * n_I * n_I /
                         Rational(Integer(1) << size);
            // Subsets J of I.
            for (std::uint64_t J = I;; J = (J - 1) & I) {
                Monomial m;
                m.coefficient = a;
                m.exponents.assign(L, 1);
                for (std::size_t l = 0; l < L; ++l) {
                    if (I >> l & 1u) m.exponents[l] = (J >> l & 1u) ? 0 : 2;
                }
                auto origin = detail::mask_origin(I);
                for (auto j : detail::mask_indices(J)) origin.push_back(static_cast<int>(L + j));
                m.origins.push_back(std::move(origin));
                out.push_back(std::move(m));
                if (J == 0) break;
            }
        }
    });
    PolynomialSum hu{PolyKind::HU, L, std::move(monomials)};
    hu.canonicalize();
    return hu;
}

}  // namespace cmrep
