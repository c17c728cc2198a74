#pragma once

// Exact rational linear programming over free variables: strict-feasibility
// witnesses (maximum uniform slack) and suprema of linear functionals over the
// closure of a strict system. Dense two-phase simplex with Bland's rule.

#include <optional>
#include <string>
#include <vector>

#include "cmrep/errors.hpp"
#include "cmrep/rational.hpp"

namespace cmrep {

enum class Relation { less, greater, equal };

struct LinearConstraint {
    std::vector<Rational> coeffs;  // one per variable
    Relation relation = Relation::less;
    Rational bound = 0;
    std::string label;

    Rational evaluate(const std::vector<Rational>& x) const {
        Rational v = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] != 0) v += coeffs[i] * x[i];
        }
        return v;
    }

    /// Strict satisfaction for < and >, equality for =.
    bool satisfied_strictly(const std::vector<Rational>& x) const {
        Rational v = evaluate(x);
        switch (relation) {
            case Relation::less: return v < bound;
            case Relation::greater: return v > bound;
            case Relation::equal: return v == bound;
        }
        return false;
    }

    bool satisfied_closed(const std::vector<Rational>& x) const {
        Rational v = evaluate(x);
        switch (relation) {
            case Relation::less: return v <= bound;
            case Relation::greater: return v >= bound;
            case Relation::equal: return v == bound;
        }
        return false;
    }
};

/// Free real variables with strict inequalities and equalities.
struct LinearProgram {
    std::vector<std::string> variables;
    std::vector<LinearConstraint> constraints;

    std::size_t num_vars() const { return variables.size(); }

    void add(std::vector<Rational> coeffs, Relation rel, Rational bound, std::string label = {}) {
        if (coeffs.size() != variables.size())
            throw ValidationError("constraint '" + label + "' references undeclared variables");
        constraints.push_back({std::move(coeffs), rel, std::move(bound), std::move(label)});
    }

    void validate() const {
        for (const auto& c : constraints) {
            if (c.coeffs.size() != variables.size())
                throw ValidationError("constraint '" + c.label + "' references undeclared variables");
        }
    }
};

struct InteriorPoint {
    std::vector<Rational> point;
    Rational slack;  // every strict inequality holds with at least this margin
};

enum class LpStatus { optimal, unbounded, infeasible };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    std::vector<Rational> point;
};

namespace detail {

// max c.x subject to rows (a.x rel b) over free x, treating < and > as <= and >=.
class Simplex {
public:
    Simplex(std::size_t num_vars, const std::vector<LinearConstraint>& rows) : n_(num_vars) {
        const std::size_t m = rows.size();
        // Columns: x+ (n), x- (n), one slack/surplus per inequality, one artificial per row needing it.
        std::vector<int> slack_col(m, -1), art_col(m, -1);
        std::size_t col = 2 * n_;
        std::vector<Relation> rel(m);
        std::vector<int> sign(m, 1);
        for (std::size_t i = 0; i < m; ++i) {
            rel[i] = rows[i].relation;
            if (rows[i].bound < 0) {
                sign[i] = -1;
                if (rel[i] == Relation::less)
                    rel[i] = Relation::greater;
                else if (rel[i] == Relation::greater)
                    rel[i] = Relation::less;
            }
            if (rel[i] != Relation::equal) slack_col[i] = static_cast<int>(col++);
        }
        first_artificial_ = col;
        for (std::size_t i = 0; i < m; ++i) {
            if (rel[i] != Relation::less) art_col[i] = static_cast<int>(col++);
        }
        cols_ = col;
        t_.assign(m, std::vector<Rational>(cols_ + 1));
        basis_.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            const Rational s = sign[i];
            for (std::size_t j = 0; j < n_; ++j) {
                if (rows[i].coeffs[j] == 0) continue;
                t_[i][j] = s * rows[i].coeffs[j];
                t_[i][n_ + j] = -t_[i][j];
            }
            t_[i][cols_] = s * rows[i].bound;
            if (rel[i] == Relation::less) {
                t_[i][slack_col[i]] = 1;
                basis_[i] = static_cast<std::size_t>(slack_col[i]);
            } else {
                if (rel[i] == Relation::greater) t_[i][slack_col[i]] = -1;
                t_[i][art_col[i]] = 1;
                basis_[i] = static_cast<std::size_t>(art_col[i]);
            }
        }
    }

    /// Phase 1; false when the closed system is infeasible.
    bool make_feasible() {
        if (first_artificial_ == cols_) return true;
        std::vector<Rational> c(cols_);
        for (std::size_t j = first_artificial_; j < cols_; ++j) c[j] = -1;
        if (!optimize(c, cols_)) return false;  // cannot be unbounded
        if (objective_value(c) < 0) return false;
        // Drive remaining (zero-level) artificials out of the basis.
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < first_artificial_) {
                ++i;
                continue;
            }
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (t_[i][j] != 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, enter);
            ++i;
        }
        return true;
    }

    /// Phase 2 on the structural objective (over x); artificials excluded.
    LpSolution maximize(const std::vector<Rational>& objective) {
        std::vector<Rational> c(cols_);
        for (std::size_t j = 0; j < n_; ++j) {
            c[j] = objective[j];
            c[n_ + j] = -objective[j];
        }
        LpSolution sol;
        if (!optimize(c, first_artificial_)) {
            sol.status = LpStatus::unbounded;
            return sol;
        }
        sol.status = LpStatus::optimal;
        sol.value = objective_value(c);
        sol.point = primal();
        return sol;
    }

    std::vector<Rational> primal() const {
        std::vector<Rational> x(n_);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const std::size_t b = basis_[i];
            if (b < n_)
                x[b] += t_[i][cols_];
            else if (b < 2 * n_)
                x[b - n_] -= t_[i][cols_];
        }
        return x;
    }

private:
    Rational objective_value(const std::vector<Rational>& c) const {
        Rational v = 0;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (c[basis_[i]] != 0) v += c[basis_[i]] * t_[i][cols_];
        }
        return v;
    }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = t_[r][c];
        for (auto& v : t_[r]) {
            if (v != 0) v /= p;
        }
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || t_[i][c] == 0) continue;
            const Rational f = t_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
            }
        }
        basis_[r] = c;
    }

    // Bland's rule; columns >= allowed never enter. False on unboundedness.
    bool optimize(const std::vector<Rational>& c, std::size_t allowed) {
        for (;;) {
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed; ++j) {
                Rational reduced = -c[j];
                for (std::size_t i = 0; i < t_.size(); ++i) {
                    if (t_[i][j] != 0 && c[basis_[i]] != 0) reduced += c[basis_[i]] * t_[i][j];
                }
                if (reduced < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed) return true;
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][cols_] / t_[i][enter];
                if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t_.size()) return false;
            pivot(leave, enter);
        }
    }

    std::size_t n_;
    std::size_t cols_ = 0;
    std::size_t first_artificial_ = 0;
    std::vector<std::vector<Rational>> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Supremum of objective.x over the closure of the constraint set.
inline LpSolution lp_supremum(const LinearProgram& lp, const std::vector<Rational>& objective) {
    lp.validate();
    if (objective.size() != lp.num_vars()) throw ValidationError("objective has wrong length");
    detail::Simplex simplex(lp.num_vars(), lp.constraints);
    if (!simplex.make_feasible()) return {};
    return simplex.maximize(objective);
}

/// A point satisfying every strict inequality with positive slack, found by
/// maximizing a uniform slack t (capped at 1); nullopt when the optimal slack
/// is zero, i.e. the strict system is infeasible.
inline std::optional<InteriorPoint> lp_interior_point(const LinearProgram& lp) {
    lp.validate();
    const std::size_t n = lp.num_vars();
    std::vector<LinearConstraint> rows;
    rows.reserve(lp.constraints.size() + 1);
    for (const auto& c : lp.constraints) {
        LinearConstraint r{c.coeffs, c.relation, c.bound, c.label};
        r.coeffs.push_back(0);
        if (c.relation == Relation::less) {
            r.coeffs.back() = 1;
            r.relation = Relation::less;
        } else if (c.relation == Relation::greater) {
            r.coeffs.back() = -1;
            r.relation = Relation::greater;
        }
        rows.push_back(std::move(r));
    }
    std::vector<Rational> cap(n + 1);
    cap[n] = 1;
    rows.push_back({cap, Relation::less, 1, "slack cap"});

    detail::Simplex simplex(n + 1, rows);
    if (!simplex.make_feasible()) return std::nullopt;
    auto sol = simplex.maximize(cap);
    if (sol.status != LpStatus::optimal || sol.value <= 0) return std::nullopt;
    InteriorPoint out;
    out.slack = sol.value;
    out.point.assign(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

}  // namespace cmrep
