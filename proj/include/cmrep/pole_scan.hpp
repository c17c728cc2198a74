#pragma once

// Candidate singular dimensions: values D = -2 sum(z) at which the balance
// hyperplane is pinned by a set of polar conditions of the Gamma factors.
//
// Polar conditions: z_v = n (poles of Gamma(-z_v)), and phi_l = -n
// (commutative Gamma(phi_l)) or phi_l / 2 = -n (Gamma(phi_l / 2) in matrix
// mode), 0 <= n <= n_cutoff. Matrix mode adds the poles of Gamma(D/2).
//
// A set of conditions with linearly independent normals pins sum(z) iff the
// all-ones vector is a combination of the normals. Writing the combination as
// lambda over the chosen lines S and mu_v = 1 - lambda . u_v over the chosen
// variables, every variable with lambda . u_v != 1 must be chosen, and lambda
// is fixed by |S| variables whose columns (restricted to S) are independent
// and satisfy lambda . u_v = 1. Variables sharing a weight mu_v are
// interchangeable, so their offsets are aggregated.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmrep/cm_core.hpp"
#include "cmrep/errors.hpp"
#include "cmrep/parallel.hpp"
#include "cmrep/rational.hpp"

namespace cmrep {

struct PoleCertificate {
    std::vector<std::size_t> lines;                       // 0-based lines whose phi condition is used
    std::vector<Rational> lambda;                         // multipliers of those conditions
    std::vector<int> line_offsets;                        // n_l per entry of `lines`
    std::vector<std::pair<std::size_t, int>> variables;   // (Mellin variable, n_v) with nonzero weight
    bool gamma_half_d = false;                            // pole of Gamma(D/2)

    /// Human-readable conditions, e.g. "phi_1 = -1", "x2 = 0".
    std::vector<std::string> conditions(const CMRep& cm) const {
        std::vector<std::string> out;
        if (gamma_half_d) {
            out.push_back("D/2 = " + std::to_string(-line_offsets.front()));
            return out;
        }
        const bool nc = cm.mode == CmMode::noncommutative;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            out.push_back("phi_" + std::to_string(lines[i] + 1) + (nc ? "/2" : "") + " = " +
                          std::to_string(-line_offsets[i]));
        }
        for (const auto& [v, n] : variables) out.push_back(cm.label(v) + " = " + std::to_string(n));
        return out;
    }
};

struct PoleCandidate {
    Rational D;
    PoleCertificate certificate;  // first producing selection in enumeration order
};

struct PoleScanResult {
    std::vector<PoleCandidate> candidates;  // sorted by D, deduplicated
    std::vector<PoleCandidate> suppressed;  // inside the convergence strip (0, D_max)
    int n_cutoff = 0;
    Rational window_lo, window_hi;
    AnalyticityStrip strip;
};

namespace detail {

// lambda with lambda . cols[k] = 1 for every k, when cols is a basis of Q^n.
inline std::optional<std::vector<Rational>> solve_unit_combination(const std::vector<std::vector<int>>& cols) {
    const std::size_t n = cols.size();
    // Rows: one equation per column; unknowns lambda_0..lambda_{n-1}.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) a[k][j] = cols[k][j];
        a[k][n] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<Rational> lambda(n);
    for (std::size_t c = 0; c < n; ++c) lambda[c] = a[c][n] / a[c][c];
    return lambda;
}

// Calls fn(indices) for every k-subset of 0..n-1 in lexicographic order.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// One additive step of the sum: value = step * choice, choice in 0..max_choice.
struct SumStep {
    Rational step;
    int max_choice = 0;
};

// All reachable totals base + sum_i step_i * c_i within [lo, hi], each with
// one deterministic choice vector reaching it.
inline std::map<Rational, std::vector<int>> bounded_sumset(const Rational& base, const std::vector<SumStep>& steps,
                                                          const Rational& lo, const Rational& hi) {
    const std::size_t n = steps.size();
    std::vector<Rational> suffix_min(n + 1), suffix_max(n + 1);
    for (std::size_t i = n; i-- > 0;) {
        Rational ext = steps[i].step * steps[i].max_choice;
        suffix_min[i] = suffix_min[i + 1] + (ext < 0 ? ext : Rational(0));
        suffix_max[i] = suffix_max[i + 1] + (ext > 0 ? ext : Rational(0));
    }
    std::map<Rational, std::vector<int>> layer;
    if (base + suffix_min[0] > hi || base + suffix_max[0] < lo) return layer;
    layer.emplace(base, std::vector<int>{});
    for (std::size_t i = 0; i < n; ++i) {
        std::map<Rational, std::vector<int>> next;
        for (const auto& [value, choice] : layer) {
            for (int c = 0; c <= steps[i].max_choice; ++c) {
                Rational v = value + steps[i].step * c;
                if (v + suffix_min[i + 1] > hi || v + suffix_max[i + 1] < lo) continue;
                if (next.count(v)) continue;
                auto extended = choice;
                extended.push_back(c);
                next.emplace(std::move(v), std::move(extended));
            }
        }
        layer = std::move(next);
    }
    return layer;
}

inline std::vector<int> restricted_column(const CMRep& cm, std::size_t v, std::uint64_t S) {
    std::vector<int> col;
    for (std::size_t l = 0; l < cm.num_lines; ++l) {
        if (S >> l & 1u) col.push_back(cm.phi_coefficient(l, v));
    }
    return col;
}

// Candidates (D -> certificate) produced by one line subset S.
inline std::map<Rational, PoleCertificate> scan_line_subset(const CMRep& cm, std::uint64_t S, int n_cutoff,
                                                           const Rational& lo, const Rational& hi) {
    const std::size_t N = cm.num_vars();
    const Rational line_scale = cm.mode == CmMode::noncommutative ? 2 : 1;
    std::vector<std::size_t> lines;
    for (std::size_t l = 0; l < cm.num_lines; ++l) {
        if (S >> l & 1u) lines.push_back(l);
    }
    const std::size_t k = lines.size();

    std::vector<std::vector<int>> cols(N);
    for (std::size_t v = 0; v < N; ++v) cols[v] = restricted_column(cm, v, S);

    // Distinct lambdas, in order of first appearance.
    std::vector<std::vector<Rational>> lambdas;
    if (k == 0) {
        lambdas.emplace_back();
    } else {
        std::vector<std::vector<int>> types;
        for (const auto& c : cols) {
            if (std::find(types.begin(), types.end(), c) == types.end()) types.push_back(c);
        }
        std::sort(types.begin(), types.end());
        std::set<std::vector<Rational>> seen;
        for_each_combination(types.size(), k, [&](const std::vector<std::size_t>& pick) {
            std::vector<std::vector<int>> basis;
            for (auto i : pick) basis.push_back(types[i]);
            auto lambda = solve_unit_combination(basis);
            if (!lambda) return;
            // A zero multiplier means a smaller line subset produces the same values.
            if (std::any_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x == 0; })) return;
            if (seen.insert(*lambda).second) lambdas.push_back(*lambda);
        });
    }

    std::map<Rational, PoleCertificate> found;
    // Window on sum(z): D in [lo, hi]  <=>  sum(z) in [-hi/2, -lo/2].
    const Rational z_lo = -hi / 2, z_hi = -lo / 2;
    for (const auto& lambda : lambdas) {
        Rational base = 0;
        std::vector<SumStep> steps;
        for (std::size_t i = 0; i < k; ++i) {
            base -= lambda[i];
            steps.push_back({-line_scale * lambda[i], n_cutoff});
        }
        // Group the variables with nonzero weight by weight.
        std::map<Rational, std::vector<std::size_t>> groups;
        for (std::size_t v = 0; v < N; ++v) {
            Rational dot = 0;
            for (std::size_t i = 0; i < k; ++i) dot += lambda[i] * cols[v][i];
            Rational w = 1 - dot;
            if (w != 0) groups[w].push_back(v);
        }
        for (const auto& [w, members] : groups)
            steps.push_back({w, n_cutoff * static_cast<int>(members.size())});

        for (auto& [sum_z, choice] : bounded_sumset(base, steps, z_lo, z_hi)) {
            Rational D = -2 * sum_z;
            if (found.count(D)) continue;
            PoleCertificate cert;
            cert.lines = lines;
            cert.lambda = lambda;
            cert.line_offsets.assign(choice.begin(), choice.begin() + static_cast<std::ptrdiff_t>(k));
            std::size_t g = k;
            for (const auto& [w, members] : groups) {
                int total = choice[g++];
                for (auto v : members) {
                    int n = std::min(total, n_cutoff);
                    cert.variables.emplace_back(v, n);
                    total -= n;
                }
            }
            std::sort(cert.variables.begin(), cert.variables.end());
            found.emplace(std::move(D), std::move(cert));
        }
    }
    return found;
}

}  // namespace detail

/// Candidate singular D in the closed window [lo, hi]. Candidates strictly
/// inside the convergence strip (0, D_max) are moved to `suppressed`, since
/// the representation is absolutely convergent there.
inline PoleScanResult scan_poles(const CMRep& cm, int n_cutoff, const Rational& lo, const Rational& hi,
                                 unsigned threads = 1) {
    cm.validate();
    if (n_cutoff < 0) throw ValidationError("scan_poles: n_cutoff must be >= 0");
    if (lo > hi) throw ValidationError("scan_poles: empty window");
    if (cm.num_lines > 20) throw ValidationError("scan_poles: at most 20 lines supported");

    PoleScanResult out;
    out.n_cutoff = n_cutoff;
    out.window_lo = lo;
    out.window_hi = hi;
    out.strip = analyticity_strip(cm);

    const std::size_t subsets = std::size_t{1} << cm.num_lines;
    auto parts = parallel_map(subsets, threads, [&](std::size_t S) {
        return detail::scan_line_subset(cm, static_cast<std::uint64_t>(S), n_cutoff, lo, hi);
    });
    std::map<Rational, PoleCertificate> merged;
    for (auto& part : parts) {
        for (auto& [D, cert] : part) merged.emplace(D, std::move(cert));
    }
    if (cm.mode == CmMode::noncommutative) {
        // Gamma(D/2) poles at D = 0, -2, -4, ...
        for (int n = 0; n <= n_cutoff; ++n) {
            Rational D = -2 * n;
            if (D < lo || D > hi || merged.count(D)) continue;
            PoleCertificate cert;
            cert.gamma_half_d = true;
            cert.line_offsets = {n};
            merged.emplace(D, std::move(cert));
        }
    }
    for (auto& [D, cert] : merged) {
        PoleCandidate c{D, std::move(cert)};
        if (in_strip(out.strip, D))
            out.suppressed.push_back(std::move(c));
        else
            out.candidates.push_back(std::move(c));
    }
    return out;
}

/// True iff no candidate lies in the open interval (0, 2).
inline bool strip_is_clear(const CMRep& cm, int n_cutoff = 2, unsigned threads = 1) {
    auto scan = scan_poles(cm, n_cutoff, 0, 2, threads);
    return std::none_of(scan.candidates.begin(), scan.candidates.end(),
                        [](const PoleCandidate& c) { return c.D > 0 && c.D < 2; });
}

}  // namespace cmrep
