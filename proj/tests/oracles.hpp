#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the enumeration, Pfaffian, signature or quadrature code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cmrep/graphs.hpp"
#include "cmrep/rational.hpp"

namespace oracle {

using cmrep::Rational;
using Matrix = std::vector<std::vector<Rational>>;

// ---------------------------------------------------------------------------
// Graph side

// Connected components of the vertex set using the lines in `mask`, by depth-first search.
inline int count_components(const cmrep::FeynmanGraph& g, std::uint64_t mask, std::vector<int>* label = nullptr) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < g.num_lines(); ++i) {
        if (!(mask >> i & 1u)) continue;
        const auto a = g.vertex_index(g.lines()[i].from), b = g.vertex_index(g.lines()[i].to);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> comp(n, -1);
    int count = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack = {s};
        comp[s] = count;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v]) {
                if (comp[w] < 0) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    if (label) *label = comp;
    return count;
}

inline int popcount(std::uint64_t m) { return static_cast<int>(__builtin_popcountll(m)); }

/// Spanning trees as line masks: every subset of V-1 lines leaving one component.
inline std::vector<std::uint64_t> spanning_tree_masks(const cmrep::FeynmanGraph& g) {
    std::vector<std::uint64_t> out;
    const std::size_t L = g.num_lines(), V = g.num_vertices();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << L); ++m) {
        if (popcount(m) + 1 == static_cast<int>(V) && count_components(g, m) == 1) out.push_back(m);
    }
    return out;
}

/// Monomials keyed by (exponent vector, symbol).
using PolyMap = std::map<std::pair<std::vector<int>, std::string>, Rational>;

/// U from the definition: one term prod_{l not in T} a_l per spanning tree.
inline PolyMap symanzik_u(const cmrep::FeynmanGraph& g) {
    PolyMap out;
    const std::size_t L = g.num_lines();
    for (auto m : spanning_tree_masks(g)) {
        std::vector<int> e(L);
        for (std::size_t l = 0; l < L; ++l) e[l] = (m >> l & 1u) ? 0 : 1;
        out[{e, ""}] += 1;
    }
    return out;
}

/// V from the definition: every (V-2)-line forest with two components, weighted
/// by the invariant of the legs on one side; zero-momentum splits dropped.
inline PolyMap symanzik_v(const cmrep::FeynmanGraph& g) {
    PolyMap out;
    const std::size_t L = g.num_lines(), V = g.num_vertices();
    if (V < 2) return out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << L); ++m) {
        if (popcount(m) + 2 != static_cast<int>(V)) continue;
        std::vector<int> comp;
        if (count_components(g, m, &comp) != 2) continue;
        std::vector<std::string> side;
        for (std::size_t v = 0; v < V; ++v) {
            if (comp[v] == 0) side.push_back(g.vertices()[v]);
        }
        auto symbol = g.invariant_for_split(side);
        if (!symbol || symbol->empty()) continue;
        std::vector<int> e(L);
        for (std::size_t l = 0; l < L; ++l) e[l] = (m >> l & 1u) ? 0 : 1;
        out[{e, *symbol}] += 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear algebra

/// Determinant by Gaussian elimination over the rationals.
inline Rational determinant(Matrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

/// Kirchhoff count of spanning trees: any cofactor of the Laplacian.
inline Rational kirchhoff_count(const cmrep::FeynmanGraph& g) {
    const std::size_t n = g.num_vertices();
    Matrix lap(n, std::vector<Rational>(n));
    for (const auto& l : g.lines()) {
        if (l.is_self_loop()) continue;
        const auto a = g.vertex_index(l.from), b = g.vertex_index(l.to);
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    Matrix minor;
    for (std::size_t i = 1; i < n; ++i) minor.emplace_back(lap[i].begin() + 1, lap[i].end());
    return determinant(minor);
}

/// Pfaffian by expansion along the first row, on an explicit submatrix.
inline Rational pfaffian(const Matrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n % 2) return 0;
    Rational sum = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (a[0][j] == 0) continue;
        Matrix sub;
        for (std::size_t r = 1; r < n; ++r) {
            if (r == j) continue;
            std::vector<Rational> row;
            for (std::size_t c = 1; c < n; ++c) {
                if (c != j) row.push_back(a[r][c]);
            }
            sub.push_back(std::move(row));
        }
        const Rational term = a[0][j] * pfaffian(sub);
        sum += (j % 2 == 1) ? term : Rational(-term);
    }
    return sum;
}

/// Matrix with the listed indices removed.
inline Matrix delete_indices(const Matrix& a, const std::vector<std::size_t>& removed) {
    Matrix out;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (std::find(removed.begin(), removed.end(), r) != removed.end()) continue;
        std::vector<Rational> row;
        for (std::size_t c = 0; c < a.size(); ++c) {
            if (std::find(removed.begin(), removed.end(), c) == removed.end()) row.push_back(a[r][c]);
        }
        out.push_back(std::move(row));
    }
    return out;
}

/// Permutation sign by counting inversions.
inline int inversion_sign(const std::vector<std::size_t>& seq) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) inversions += seq[i] > seq[j];
    }
    return inversions % 2 ? -1 : 1;
}

/// Sequence (rest ascending), tail..., K descending.
inline std::vector<std::size_t> moved_to_end(std::size_t d, std::vector<std::size_t> K, const std::vector<std::size_t>& tail) {
    std::vector<std::size_t> seq;
    for (std::size_t i = 0; i < d; ++i) {
        if (std::find(K.begin(), K.end(), i) == K.end() && std::find(tail.begin(), tail.end(), i) == tail.end())
            seq.push_back(i);
    }
    seq.insert(seq.end(), tail.begin(), tail.end());
    std::sort(K.rbegin(), K.rend());
    seq.insert(seq.end(), K.begin(), K.end());
    return seq;
}

/// Random antisymmetric matrix with small rational entries, some zero.
inline Matrix random_antisymmetric(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4), zero(0, 4);
    Matrix a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (zero(rng) == 0) continue;
            Rational v(num(rng), den(rng));
            a[i][j] = v;
            a[j][i] = -v;
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// Numerics

/// Bubble with masses m2 and invariant s at dimension D, directly in alpha
/// space: int int exp(-(s a1 a2/(a1+a2)) - (a1+a2) m2) (a1+a2)^{-D/2} da1 da2.
inline double bubble_alpha_integral(double D, double m2, double s) {
    boost::math::quadrature::exp_sinh<double> outer, inner;
    return outer.integrate(
        [&](double a1) {
            return inner.integrate(
                [&](double a2) {
                    const double u = a1 + a2;
                    return std::exp(-s * a1 * a2 / u - u * m2) * std::pow(u, -D / 2);
                },
                1e-12);
        },
        1e-11);
}

/// Single massive line: int_0^inf exp(-a (s + m2)) da = 1/(s + m2).
inline double single_line_value(double m2, double s) { return 1.0 / (s + m2); }

/// Dawson function from its series sum_n (-1)^n 2^n x^{2n+1} / (2n+1)!!.
inline double dawson(double x) {
    double term = x, sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -2.0 * x * x / (2.0 * n + 1.0);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// int_0^inf e^{-u^2} e^{-iu} du = (sqrt(pi)/2) e^{-1/4} - i F(1/2).
inline std::complex<double> gaussian_heaviside_lhs() {
    return {std::sqrt(std::numbers::pi) / 2.0 * std::exp(-0.25), -dawson(0.5)};
}

}  // namespace oracle
