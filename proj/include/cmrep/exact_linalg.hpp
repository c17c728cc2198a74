#pragma once

// Exact Pfaffians of antisymmetric rational matrices, principal-minor deletion
// and the permutation signatures used by the hyperbolic polynomials.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cmrep/errors.hpp"
#include "cmrep/rational.hpp"

namespace cmrep {

class AntisymMatrix {
public:
    AntisymMatrix() = default;

    explicit AntisymMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    /// Full row-major matrix; rejects anything that is not antisymmetric.
    static AntisymMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        AntisymMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw ValidationError("matrix row " + std::to_string(i) + " has wrong length");
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][i] != 0) throw ValidationError("antisymmetric matrix has nonzero diagonal");
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                if (rows[i][j] != -rows[j][i])
                    throw ValidationError("matrix is not antisymmetric at (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
                m.set(i, j, rows[i][j]);
            }
        }
        return m;
    }

    /// Strict upper triangle in row order: (0,1), (0,2), ..., (d-2,d-1).
    static AntisymMatrix from_upper(std::size_t dim, const std::vector<Rational>& upper) {
        if (upper.size() != dim * (dim - (dim ? 1 : 0)) / 2)
            throw ValidationError("wrong number of upper-triangle entries");
        AntisymMatrix m(dim);
        std::size_t k = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i + 1; j < dim; ++j) m.set(i, j, upper[k++]);
        }
        return m;
    }

    std::size_t dim() const { return dim_; }

    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    /// Sets (i,j) and (j,i) together.
    void set(std::size_t i, std::size_t j, const Rational& v) {
        if (i == j) {
            if (v != 0) throw ValidationError("antisymmetric matrix has nonzero diagonal");
            return;
        }
        a_[i * dim_ + j] = v;
        a_[j * dim_ + i] = -v;
    }

    std::vector<std::vector<Rational>> rows() const {
        std::vector<std::vector<Rational>> out(dim_, std::vector<Rational>(dim_));
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) out[i][j] = (*this)(i, j);
        }
        return out;
    }

    bool operator==(const AntisymMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Rational> a_;
};

/// Principal submatrix with the given (0-based) rows/columns removed; the
/// surviving indices keep their relative order.
inline AntisymMatrix delete_minor(const AntisymMatrix& m, std::span<const std::size_t> removed) {
    std::vector<bool> drop(m.dim(), false);
    for (auto i : removed) {
        if (i >= m.dim()) throw ValidationError("minor index " + std::to_string(i) + " out of range");
        drop[i] = true;
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (!drop[i]) keep.push_back(i);
    }
    AntisymMatrix out(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = i + 1; j < keep.size(); ++j) out.set(i, j, m(keep[i], keep[j]));
    }
    return out;
}

/// Pfaffian by skew-symmetric Gaussian elimination (congruence transforms),
/// O(d^3) rational operations.
inline Rational pfaffian_by_elimination(const AntisymMatrix& m) {
    const std::size_t n = m.dim();
    if (n % 2) return 0;
    auto a = m.rows();
    Rational pf = 1;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t p = k + 1;
        while (p < n && a[k][p] == 0) ++p;
        if (p == n) return 0;
        if (p != k + 1) {
            std::swap(a[k + 1], a[p]);
            for (auto& row : a) std::swap(row[k + 1], row[p]);
            pf = -pf;
        }
        const Rational pivot = a[k][k + 1];
        pf *= pivot;
        for (std::size_t i = k + 2; i < n; ++i) {
            // x_i <- x_i - alpha x_k - beta x_{k+1} clears a[k][i] and a[k+1][i].
            Rational beta = a[k][i] / pivot;
            Rational alpha = a[k + 1][i] / a[k + 1][k];
            if (alpha == 0 && beta == 0) continue;
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= alpha * a[k][j] + beta * a[k + 1][j];
            for (std::size_t j = 0; j < n; ++j) a[j][i] -= alpha * a[j][k] + beta * a[j][k + 1];
        }
    }
    return pf;
}

/// Memoized Pfaffians of the principal submatrices of one fixed matrix, keyed
/// by the bitmask of surviving indices. Submatrices of dimension <= 16 use
/// first-row expansion through the shared table; larger ones use elimination.
/// Not thread-safe: give each worker its own table.
class PfaffianTable {
public:
    static constexpr std::size_t kExpansionMaxDim = 16;

    explicit PfaffianTable(AntisymMatrix m) : m_(std::move(m)) {
        if (m_.dim() > 64) throw ValidationError("PfaffianTable supports dimension <= 64");
    }

    const AntisymMatrix& matrix() const { return m_; }

    std::uint64_t full_mask() const {
        return m_.dim() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_.dim()) - 1;
    }

    /// Pfaffian of the submatrix on the indices set in `keep`.
    Rational of_remaining(std::uint64_t keep) {
        const int k = std::popcount(keep);
        if (k == 0) return 1;
        if (k % 2) return 0;
        if (static_cast<std::size_t>(k) > kExpansionMaxDim) {
            std::vector<std::size_t> removed;
            for (std::size_t i = 0; i < m_.dim(); ++i) {
                if (!(keep >> i & 1u)) removed.push_back(i);
            }
            return pfaffian_by_elimination(delete_minor(m_, removed));
        }
        if (auto it = memo_.find(keep); it != memo_.end()) return it->second;

        const std::size_t first = static_cast<std::size_t>(std::countr_zero(keep));
        const std::uint64_t rest = keep & ~(std::uint64_t{1} << first);
        Rational sum = 0;
        int position = 0;
        for (std::uint64_t r = rest; r; r &= r - 1) {
            const std::size_t j = static_cast<std::size_t>(std::countr_zero(r));
            const Rational& entry = m_(first, j);
            if (entry != 0) {
                Rational sub = of_remaining(rest & ~(std::uint64_t{1} << j));
                if (position % 2 == 0)
                    sum += entry * sub;
                else
                    sum -= entry * sub;
            }
            ++position;
        }
        memo_.emplace(keep, sum);
        return sum;
    }

    /// Pfaffian of the matrix with the indices set in `removed` deleted.
    Rational of_deleted(std::uint64_t removed) { return of_remaining(full_mask() & ~removed); }

    std::size_t memo_size() const { return memo_.size(); }

private:
    AntisymMatrix m_;
    std::unordered_map<std::uint64_t, Rational> memo_;
};

/// Exact Pfaffian: 1 for the empty matrix, 0 in odd dimension.
inline Rational pfaffian(const AntisymMatrix& m) {
    if (m.dim() % 2) return 0;
    if (m.dim() <= PfaffianTable::kExpansionMaxDim) {
        PfaffianTable table(m);
        return table.of_remaining(table.full_mask());
    }
    return pfaffian_by_elimination(m);
}

// ---------------------------------------------------------------------------
// Signatures. Positions are 0-based; d is the matrix dimension.

/// Sign (+1/-1) of a permutation given as a sequence of distinct values 0..n-1.
inline int permutation_sign(std::span<const std::size_t> seq) {
    // Parity from the cycle decomposition.
    std::vector<bool> seen(seq.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = seq[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

namespace detail {

// Sequence 0..d-1 with `moved` removed, followed by `tail_in_order`, then the
// set `K` in decreasing order.
inline std::vector<std::size_t> extraction_sequence(std::size_t d, std::span<const std::size_t> K,
                                                    std::span<const std::size_t> tail_in_order) {
    std::vector<bool> moved(d, false);
    auto mark = [&](std::size_t i) {
        if (i >= d) throw ValidationError("signature index " + std::to_string(i) + " out of range");
        if (moved[i]) throw ValidationError("signature index " + std::to_string(i) + " repeated");
        moved[i] = true;
    };
    for (auto i : K) mark(i);
    for (auto i : tail_in_order) mark(i);
    std::vector<std::size_t> seq;
    seq.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!moved[i]) seq.push_back(i);
    }
    for (auto i : tail_in_order) seq.push_back(i);
    std::vector<std::size_t> k_sorted(K.begin(), K.end());
    std::sort(k_sorted.rbegin(), k_sorted.rend());
    for (auto i : k_sorted) seq.push_back(i);
    return seq;
}

}  // namespace detail

/// epsilon_K: sign of moving the positions of K to the end in decreasing order.
inline int signature_set(std::size_t d, std::span<const std::size_t> K) {
    auto seq = detail::extraction_sequence(d, K, {});
    return permutation_sign(seq);
}

/// epsilon_{K tau}: 1..d -> (rest), tau, k_|K|, ..., k_1.
inline int signature_single(std::size_t d, std::span<const std::size_t> K, std::size_t tau) {
    const std::size_t tail[] = {tau};
    auto seq = detail::extraction_sequence(d, K, tail);
    return permutation_sign(seq);
}

/// Two-line extraction order for epsilon_{K tau tau'}: tau' is extracted
/// first (landing next to K), then tau, giving (rest), tau, tau', K reversed.
/// Flipping this constant negates every pair signature.
inline constexpr bool kPairExtractsSecondLineFirst = true;

inline int signature_pair(std::size_t d, std::span<const std::size_t> K, std::size_t tau, std::size_t tau_prime) {
    if (tau == tau_prime) throw ValidationError("pair signature needs two distinct lines");
    const std::size_t tail_a[] = {tau, tau_prime};
    const std::size_t tail_b[] = {tau_prime, tau};
    auto seq = detail::extraction_sequence(d, K, kPairExtractsSecondLineFirst ? std::span(tail_a) : std::span(tail_b));
    return permutation_sign(seq);
}

}  // namespace cmrep
