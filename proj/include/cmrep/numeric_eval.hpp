#pragma once

// Floating-point evaluation: parametric integrals, truncated contour integrals
// of the CM representation, beta functions and the Heaviside-lemma check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cmrep/cm_core.hpp"
#include "cmrep/errors.hpp"
#include "cmrep/graphs.hpp"
#include "cmrep/parallel.hpp"
#include "cmrep/polynomials.hpp"
#include "cmrep/special_functions.hpp"

namespace cmrep {

enum class QuadratureScheme { automatic, adaptive, fixed_grid, monte_carlo };

inline const char* to_string(QuadratureScheme s) {
    switch (s) {
        case QuadratureScheme::automatic: return "auto";
        case QuadratureScheme::adaptive: return "adaptive";
        case QuadratureScheme::fixed_grid: return "fixed-grid";
        case QuadratureScheme::monte_carlo: return "monte-carlo";
    }
    return "?";
}

struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::automatic;
    double tolerance = 1e-9;
    std::size_t max_evaluations = 20'000'000;
    std::uint64_t seed = 1;
    std::size_t samples = 1'000'000;  // Monte Carlo
    unsigned partitions = 16;         // Monte Carlo streams, one seed each
    unsigned threads = 1;
    double panel_width = 0.5;         // contour panels on the imaginary axis

    void validate() const {
        if (!(tolerance > 0)) throw ValidationError("tolerance must be > 0");
        if (partitions == 0) throw ValidationError("partitions must be >= 1");
        if (samples < partitions) throw ValidationError("samples must be >= partitions");
        if (!(panel_width > 0)) throw ValidationError("panel width must be > 0");
    }
};

struct EvalResult {
    Complex value;
    double error_estimate = 0;
    std::string method;  // parametric | contour
    std::string scheme;
    double truncation = 0;
    double panel_width = 0;
    std::size_t evaluations = 0;
    std::uint64_t seed = 0;
    std::vector<double> real_parts;  // contour real parts (max-slack witness)
};

namespace detail {

struct DoubleTerm {
    double coefficient;
    std::vector<int> exponents;
};

using DoublePoly = std::vector<DoubleTerm>;

inline DoublePoly to_double_poly(const PolynomialSum& p, const std::map<std::string, double>& values) {
    DoublePoly out;
    for (const auto& m : p.monomials) {
        double c = to_double(m.coefficient);
        if (!m.symbol.empty()) {
            auto it = values.find(m.symbol);
            if (it == values.end()) throw ValidationError("no value given for invariant '" + m.symbol + "'");
            c *= it->second;
        }
        out.push_back({c, m.exponents});
    }
    return out;
}

inline double eval_poly(const DoublePoly& p, const std::vector<double>& t) {
    double sum = 0;
    for (const auto& term : p) {
        double v = term.coefficient;
        for (std::size_t l = 0; l < t.size(); ++l) {
            if (term.exponents[l] == 1)
                v *= t[l];
            else if (term.exponents[l] == 2)
                v *= t[l] * t[l];
            else if (term.exponents[l] > 2)
                v *= std::pow(t[l], term.exponents[l]);
        }
        sum += v;
    }
    return sum;
}

inline double tanh_sinh_tolerance(double tol) { return std::max(tol, 1e-15); }

// Integral over [0, 1] of g(t, 1 - t), split at 1/2 so both endpoint
// neighbourhoods are sampled through exactly representable small offsets.
template <class T, class G>
T integrate_unit_interval(G&& g, double tol, double* error, std::size_t* evaluations) {
    boost::math::quadrature::tanh_sinh<double> ts;
    double e1 = 0, e2 = 0;
    auto left = [&](double t) -> T {
        ++*evaluations;
        return g(t, 1.0 - t);
    };
    auto right = [&](double v) -> T {
        ++*evaluations;
        return g(1.0 - v, v);
    };
    T a = ts.integrate(left, 0.0, 0.5, tanh_sinh_tolerance(tol), &e1);
    T b = ts.integrate(right, 0.0, 0.5, tanh_sinh_tolerance(tol), &e2);
    if (error) *error += e1 + e2;
    return a + b;
}

template <class T>
T finite_or_zero(T v) {
    if constexpr (std::is_same_v<T, Complex>) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return T{};
    } else {
        if (!std::isfinite(v)) return T{};
    }
    return v;
}

// Independent deterministic stream per Monte Carlo partition.
inline std::mt19937_64 partition_rng(std::uint64_t seed, std::size_t partition) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(partition)};
    return std::mt19937_64(seq);
}

// Mean and standard error of f over `samples` draws, split across fixed partitions.
template <class T, class Draw>
std::pair<T, double> monte_carlo(const QuadratureSpec& q, Draw&& draw_and_eval) {
    const std::size_t per = q.samples / q.partitions;
    auto parts = parallel_map(q.partitions, q.threads, [&](std::size_t p) {
        auto rng = partition_rng(q.seed, p);
        CompensatedSum<T> sum;
        CompensatedSum<double> sq;
        for (std::size_t i = 0; i < per; ++i) {
            T v = draw_and_eval(rng);
            sum.add(v);
            sq.add(std::norm(Complex(v)));
        }
        return std::pair<T, double>(sum.value(), sq.value());
    });
    CompensatedSum<T> sum;
    CompensatedSum<double> sq;
    for (const auto& [s, s2] : parts) {
        sum.add(s);
        sq.add(s2);
    }
    const double n = static_cast<double>(per * q.partitions);
    T mean = sum.value() / n;
    double var = std::max(0.0, sq.value() / n - std::norm(Complex(mean)));
    return {mean, std::sqrt(var / n)};
}

inline bool use_monte_carlo(const QuadratureSpec& q, std::size_t dim, std::size_t max_adaptive_dim) {
    if (q.scheme == QuadratureScheme::monte_carlo) return true;
    if (q.scheme == QuadratureScheme::automatic) return dim > max_adaptive_dim;
    return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parametric integrals

/// Integral over alpha in (0, inf)^L of exp(-V/U - sum alpha m^2) U^{-D/2}.
/// The radial integral is done in closed form (U and V are homogeneous of
/// degrees h and h+1), leaving Gamma(L - hD/2) times an integral over the
/// simplex sum x = 1 of U^{-D/2} (V/U + sum x m^2)^{-(L - hD/2)}.
inline EvalResult eval_parametric_commutative(const FeynmanGraph& g, const std::map<std::string, double>& s_values,
                                              const Rational& D_exact, const QuadratureSpec& q) {
    q.validate();
    g.require_connected();
    if (D_exact <= 0) throw ValidationError("parametric evaluation needs D > 0");
    if (g.num_lines() == 0) throw ValidationError("parametric evaluation needs at least one line");
    const double D = to_double(D_exact);
    const auto U = symanzik_u(g);
    const auto V = symanzik_v(g);
    const auto Ud = detail::to_double_poly(U, {});
    const auto Vd = detail::to_double_poly(V, s_values);
    const std::size_t L = g.num_lines();
    const int h = U.monomials.front().degree();
    const double a = static_cast<double>(L) - h * D / 2;
    if (a <= 0) throw NonConvergentError("parametric integral diverges: L - hD/2 <= 0 (overall power counting)");

    std::vector<double> m2;
    bool massive = true;
    for (const auto& l : g.lines()) {
        m2.push_back(to_double(l.mass2));
        massive = massive && l.mass2 > 0;
    }
    if (massive) {
        auto strip = analyticity_strip(build_cm(g));
        if (!in_strip(strip, D_exact))
            throw NonConvergentError("parametric integral diverges: D outside the convergence strip");
    } else {
        bool damped = std::any_of(Vd.begin(), Vd.end(), [](const detail::DoubleTerm& t) { return t.coefficient > 0; });
        if (!damped) throw NonConvergentError("parametric integral diverges: no mass and no positive V term");
    }

    EvalResult r;
    r.method = "parametric";
    r.seed = q.seed;
    auto integrand = [&](const std::vector<double>& x) {
        const double u = detail::eval_poly(Ud, x);
        double damp = detail::eval_poly(Vd, x) / u;
        for (std::size_t l = 0; l < L; ++l) damp += x[l] * m2[l];
        return detail::finite_or_zero(std::pow(u, -D / 2) * std::pow(damp, -a));
    };
    const double gamma_a = std::tgamma(a);
    const std::size_t dim = L - 1;

    if (dim == 0) {
        r.value = gamma_a * integrand({1.0});
        r.scheme = "exact";
        r.evaluations = 1;
        return r;
    }
    if (detail::use_monte_carlo(q, dim, 3)) {
        r.scheme = to_string(QuadratureScheme::monte_carlo);
        // Uniform points on the simplex from normalized exponentials; the simplex volume is 1/dim!.
        auto [mean, se] = detail::monte_carlo<double>(q, [&](std::mt19937_64& rng) {
            std::exponential_distribution<double> e(1.0);
            std::vector<double> x(L);
            double s = 0;
            for (auto& v : x) s += (v = e(rng));
            for (auto& v : x) v /= s;
            return integrand(x);
        });
        const double vol = 1.0 / std::tgamma(static_cast<double>(dim) + 1);
        r.value = gamma_a * mean * vol;
        r.error_estimate = gamma_a * se * vol;
        r.evaluations = (q.samples / q.partitions) * q.partitions;
        return r;
    }
    r.scheme = to_string(QuadratureScheme::adaptive);
    boost::math::quadrature::tanh_sinh<double> ts;
    double total_error = 0;
    std::size_t evals = 0;
    std::vector<double> x(L);
    // Nested integration: x_i in [0, remaining], x_L = remaining at the innermost level.
    std::function<double(std::size_t, double)> nest = [&](std::size_t i, double remaining) -> double {
        if (i == dim) {
            x[dim] = remaining;
            ++evals;
            if (evals > q.max_evaluations) throw ComputationError("parametric integral: evaluation budget exceeded");
            return integrand(x);
        }
        if (remaining <= 0) return 0.0;
        double err = 0;
        double v = ts.integrate(
            [&](double t) {
                x[i] = t;
                return nest(i + 1, remaining - t);
            },
            0.0, remaining, detail::tanh_sinh_tolerance(q.tolerance), &err);
        if (i == 0) total_error += err;
        return v;
    };
    r.value = gamma_a * nest(0, 1.0);
    r.error_estimate = gamma_a * total_error;
    r.evaluations = evals;
    return r;
}

/// Integral over t in (0,1)^L of prod (1 - t^2)^{D/2-1} exp(-(HV^R + i HV^I)/HU) HU^{-D/2}.
inline EvalResult eval_parametric_nc(const PolynomialSum& hu, const PolynomialSum& hvR, const PolynomialSum& hvI,
                                     const Rational& D_exact, const QuadratureSpec& q) {
    q.validate();
    if (D_exact <= 0) throw ValidationError("matrix-mode parametric evaluation needs D > 0");
    auto cm = build_cm(hu, hvR, hvI);
    if (!delta_witness(cm, D_exact))
        throw NonConvergentError("parametric integral diverges: power counting fails at this D (empty Mellin domain)");
    const double D = to_double(D_exact);
    const auto U = detail::to_double_poly(hu, {});
    const auto R = detail::to_double_poly(hvR, {});
    const auto I = detail::to_double_poly(hvI, {});
    const std::size_t L = hu.num_lines;

    auto integrand = [&](const std::vector<double>& t, const std::vector<double>& one_minus_t) -> Complex {
        double weight = 1;
        for (std::size_t l = 0; l < L; ++l) weight *= std::pow(one_minus_t[l] * (1.0 + t[l]), D / 2 - 1);
        const double u = detail::eval_poly(U, t);
        const Complex e(-detail::eval_poly(R, t) / u, -detail::eval_poly(I, t) / u);
        return detail::finite_or_zero(weight * std::exp(e) * std::pow(u, -D / 2));
    };

    EvalResult r;
    r.method = "parametric";
    r.seed = q.seed;
    if (detail::use_monte_carlo(q, L, 3)) {
        r.scheme = to_string(QuadratureScheme::monte_carlo);
        auto [mean, se] = detail::monte_carlo<Complex>(q, [&](std::mt19937_64& rng) {
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            std::vector<double> t(L), c(L);
            for (std::size_t l = 0; l < L; ++l) {
                t[l] = u01(rng);
                c[l] = 1.0 - t[l];
            }
            return integrand(t, c);
        });
        r.value = mean;
        r.error_estimate = se;
        r.evaluations = (q.samples / q.partitions) * q.partitions;
        return r;
    }
    r.scheme = to_string(QuadratureScheme::adaptive);
    std::vector<double> t(L), c(L);
    double total_error = 0;
    std::size_t evals = 0;
    std::function<Complex(std::size_t)> nest = [&](std::size_t i) -> Complex {
        if (i == L) {
            if (++evals > q.max_evaluations) throw ComputationError("parametric integral: evaluation budget exceeded");
            return integrand(t, c);
        }
        std::size_t inner = 0;
        double err = 0;
        Complex v = detail::integrate_unit_interval<Complex>(
            [&](double ti, double ci) {
                t[i] = ti;
                c[i] = ci;
                return nest(i + 1);
            },
            q.tolerance, &err, &inner);
        if (i == 0) total_error += err;
        return v;
    };
    r.value = nest(0);
    r.error_estimate = total_error;
    r.evaluations = evals;
    return r;
}

// ---------------------------------------------------------------------------
// Contour integral of the CM representation

namespace detail {

struct ContourIntegrand {
    const CMRep* cm;
    double D;
    std::vector<double> sigma;      // real parts of all variables
    std::vector<Complex> log_base;  // log of the base raised to each variable
    std::vector<std::size_t> independent;
    std::size_t dependent;          // last x variable, fixed by the balance
    std::vector<double> log_m2;     // commutative
    Complex log_prefactor;

    Complex operator()(const std::vector<double>& im) const {
        const std::size_t N = cm->num_vars();
        std::vector<Complex> z(N);
        double im_sum = 0;
        for (std::size_t k = 0; k < independent.size(); ++k) {
            z[independent[k]] = Complex(sigma[independent[k]], im[k]);
            im_sum += im[k];
        }
        z[dependent] = Complex(sigma[dependent], -im_sum);

        Complex log_f = log_prefactor;
        Complex sum_x = 0;
        for (std::size_t v = 0; v < N; ++v) {
            log_f += z[v] * log_base[v] + lgamma(-z[v]);
            if (v < cm->u_rows.size()) sum_x += z[v];
        }
        log_f -= lgamma(-sum_x);
        const bool nc = cm->mode == CmMode::noncommutative;
        for (std::size_t l = 0; l < cm->num_lines; ++l) {
            Complex phi = 1.0;
            for (std::size_t v = 0; v < N; ++v) {
                const int u = cm->phi_coefficient(l, v);
                if (u) phi += static_cast<double>(u) * z[v];
            }
            if (nc)
                log_f += lgamma(phi / 2.0) + lgamma(Complex(D / 2)) - std::log(2.0) - lgamma((phi + D) / 2.0);
            else
                log_f += -phi * log_m2[l] + lgamma(phi);
        }
        return finite_or_zero(std::exp(log_f));
    }
};

// Tensor-product rule over dim axes; outer axis split by node for the workers,
// partial sums combined in node order.
inline Complex tensor_integrate(const ContourIntegrand& f, const GaussRule& rule, std::size_t dim, unsigned threads) {
    const std::size_t M = rule.nodes.size();
    auto parts = parallel_map(M, threads, [&](std::size_t i0) {
        CompensatedSum<Complex> sum;
        std::vector<std::size_t> idx(dim, 0);
        idx[0] = i0;
        std::vector<double> im(dim);
        for (;;) {
            double w = 1;
            for (std::size_t k = 0; k < dim; ++k) {
                im[k] = rule.nodes[idx[k]];
                w *= rule.weights[idx[k]];
            }
            sum.add(w * f(im));
            // Odometer over the inner axes.
            bool done = true;
            for (std::size_t k = dim; k-- > 1;) {
                if (++idx[k] < M) {
                    done = false;
                    break;
                }
                idx[k] = 0;
            }
            if (done) return sum.value();
        }
    });
    CompensatedSum<Complex> total;
    for (const auto& p : parts) total.add(p);
    return total.value();
}

}  // namespace detail

/// Truncated contour integral of the CM integrand with real parts at the
/// max-slack witness of the Mellin domain; |Im| <= T on each independent
/// variable, measure prod d(Im)/2pi. `masses` overrides the commutative
/// masses when nonempty; matrix mode ignores it.
inline EvalResult eval_cm_contour(const CMRep& cm, const std::map<std::string, double>& invariant_values,
                                  const std::vector<double>& masses, const Rational& D_exact, double T,
                                  const QuadratureSpec& q) {
    q.validate();
    cm.validate();
    if (!(T > 0)) throw ValidationError("truncation T must be > 0");
    auto witness = delta_witness(cm, D_exact);
    if (!witness) throw ComputationError("contour evaluation: the Mellin domain is empty at D = " + D_exact.str());
    const double D = to_double(D_exact);
    const std::size_t N = cm.num_vars();
    const bool nc = cm.mode == CmMode::noncommutative;

    detail::ContourIntegrand f;
    f.cm = &cm;
    f.D = D;
    for (const auto& s : witness->point) f.sigma.push_back(to_double(s));
    for (std::size_t v = 0; v < N; ++v) {
        const auto& row = cm.row(v);
        double base = to_double(row.coefficient);
        if (!row.symbol.empty()) {
            auto it = invariant_values.find(row.symbol);
            if (it == invariant_values.end()) throw ValidationError("no value given for invariant '" + row.symbol + "'");
            base *= it->second;
        }
        if (base == 0) throw ValidationError("zero base for Mellin variable " + cm.label(v));
        if (cm.kind(v) == VarKind::yI) {
            // (i c)^y on the principal branch; c < 0 uses the conjugate form.
            const double half_pi = std::numbers::pi / 2;
            f.log_base.emplace_back(std::log(std::abs(base)), base > 0 ? half_pi : -half_pi);
        } else {
            f.log_base.push_back(std::log(Complex(base)));
        }
    }
    if (!nc) {
        std::vector<double> m2 = masses;
        if (m2.empty()) {
            for (const auto& m : cm.masses) m2.push_back(to_double(m));
        }
        if (m2.size() != cm.num_lines) throw ValidationError("contour evaluation: need one mass per line");
        for (double m : m2) {
            if (!(m > 0))
                throw ValidationError("contour evaluation of massless lines is not supported ((m^2)^-phi diverges)");
            f.log_m2.push_back(std::log(m));
        }
    }
    f.log_prefactor = std::log(Complex(to_double(cm.prefactor)));
    f.dependent = cm.u_rows.size() - 1;
    for (std::size_t v = 0; v < N; ++v) {
        if (v != f.dependent) f.independent.push_back(v);
    }
    const std::size_t dim = f.independent.size();

    EvalResult r;
    r.method = "contour";
    r.truncation = T;
    r.seed = q.seed;
    r.real_parts = f.sigma;
    const double measure = std::pow(2 * std::numbers::pi, -static_cast<double>(dim));

    if (dim == 0) {
        r.value = f({});
        r.scheme = "exact";
        r.evaluations = 1;
        return r;
    }
    const auto fine = composite_rule(gauss_legendre<20>(), -T, T, q.panel_width);
    const double grid_points = std::pow(static_cast<double>(fine.nodes.size()), static_cast<double>(dim));
    const bool mc = q.scheme == QuadratureScheme::monte_carlo ||
                    (q.scheme != QuadratureScheme::fixed_grid && dim > 4) ||
                    grid_points > static_cast<double>(q.max_evaluations);
    if (mc) {
        if (q.scheme == QuadratureScheme::fixed_grid)
            throw ComputationError("contour evaluation: fixed grid exceeds the evaluation budget");
        r.scheme = to_string(QuadratureScheme::monte_carlo);
        auto [mean, se] = detail::monte_carlo<Complex>(q, [&](std::mt19937_64& rng) {
            std::uniform_real_distribution<double> u(-T, T);
            std::vector<double> im(dim);
            for (auto& v : im) v = u(rng);
            return f(im);
        });
        const double vol = std::pow(2 * T, static_cast<double>(dim));
        r.value = mean * vol * measure;
        r.error_estimate = se * vol * measure;
        r.evaluations = (q.samples / q.partitions) * q.partitions;
        return r;
    }
    r.scheme = to_string(QuadratureScheme::fixed_grid);
    r.panel_width = q.panel_width;
    const auto coarse = composite_rule(gauss_legendre<10>(), -T, T, q.panel_width);
    Complex v_fine = detail::tensor_integrate(f, fine, dim, q.threads);
    Complex v_coarse = detail::tensor_integrate(f, coarse, dim, q.threads);
    r.value = v_fine * measure;
    r.error_estimate = std::abs(v_fine - v_coarse) * measure;
    r.evaluations = static_cast<std::size_t>(grid_points) +
                    static_cast<std::size_t>(std::pow(static_cast<double>(coarse.nodes.size()), static_cast<double>(dim)));
    return r;
}

// ---------------------------------------------------------------------------
// Beta functions. Both return the t-integral, i.e. half of beta / beta_m.

/// (1/2) Gamma(phi/2) Gamma(D/2) / Gamma((phi + D)/2) = int_0^1 (1-t^2)^{D/2-1} t^{phi-1} dt.
inline Complex beta_std(Complex phi, Complex D) {
    if (near_gamma_pole(phi / 2.0) || near_gamma_pole(D / 2.0)) throw ValidationError("beta_std: argument at a Gamma pole");
    return 0.5 * std::exp(lgamma(phi / 2.0) + lgamma(D / 2.0) - lgamma((phi + D) / 2.0));
}

namespace detail {

inline void require_beta_domain(Complex phi, Complex D, const char* op) {
    if (!(phi.real() > 0) || !(D.real() > 0)) throw ValidationError(std::string(op) + ": needs Re phi > 0 and Re D > 0");
}

// (1 - t^2)^{D/2-1} t^{phi-1} with 1 - t passed separately.
inline Complex beta_kernel(double t, double one_minus_t, Complex phi, Complex D) {
    return std::exp((D / 2.0 - 1.0) * std::log(one_minus_t * (1.0 + t)) + (phi - 1.0) * std::log(t));
}

}  // namespace detail

/// The same integral by tanh-sinh quadrature.
inline Complex beta_std_quadrature(Complex phi, Complex D, double tol = 1e-13) {
    detail::require_beta_domain(phi, D, "beta_std_quadrature");
    std::size_t evals = 0;
    return detail::integrate_unit_interval<Complex>(
        [&](double t, double c) { return detail::beta_kernel(t, c, phi, D); }, tol, nullptr, &evals);
}

/// int_0^1 (1-t^2)^{D/2-1} ((1-t)/(1+t))^{m2} t^{phi-1} dt by quadrature.
inline Complex beta_massive_quadrature(Complex phi, Complex D, double m2, double tol = 1e-13) {
    detail::require_beta_domain(phi, D, "beta_massive");
    if (m2 < 0) throw ValidationError("beta_massive: m2 must be >= 0");
    std::size_t evals = 0;
    return detail::integrate_unit_interval<Complex>(
        [&](double t, double c) {
            return detail::beta_kernel(t, c, phi, D) * std::exp(m2 * std::log(c / (1.0 + t)));
        },
        tol, nullptr, &evals);
}

/// Massive analogue; m2 = 0 takes the Gamma-formula path of beta_std.
inline Complex beta_massive(Complex phi, Complex D, double m2, double tol = 1e-13) {
    if (m2 == 0) {
        detail::require_beta_domain(phi, D, "beta_massive");
        return beta_std(phi, D);
    }
    return beta_massive_quadrature(phi, D, m2, tol);
}

/// beta_m - beta = 2 int_0^1 (1-t^2)^{D/2-1} [((1-t)/(1+t))^{m2} - 1] t^{phi-1} dt.
inline Complex beta_massive_minus_std(Complex phi, Complex D, double m2, double tol = 1e-13) {
    detail::require_beta_domain(phi, D, "beta_massive_minus_std");
    std::size_t evals = 0;
    return 2.0 * detail::integrate_unit_interval<Complex>(
                     [&](double t, double c) {
                         return detail::beta_kernel(t, c, phi, D) * std::expm1(m2 * std::log(c / (1.0 + t)));
                     },
                     tol, nullptr, &evals);
}

// ---------------------------------------------------------------------------
// Heaviside lemma: int_0^inf f(u) e^{-iu} du against the truncated Mellin side
// (1/2pi) int_{-T}^{T} Gamma(-y) e^{i pi y/2} M(y) dt, y = s + it, where
// M(y) = int_0^inf f(u) u^y du.

enum class TestFunction { gaussian, bump };

inline const char* to_string(TestFunction f) { return f == TestFunction::gaussian ? "gaussian" : "bump"; }

inline TestFunction parse_test_function(const std::string& name) {
    if (name == "gaussian") return TestFunction::gaussian;
    if (name == "bump") return TestFunction::bump;
    throw ValidationError("unknown test function '" + name + "' (expected gaussian or bump)");
}

struct AppendixAResult {
    Complex lhs;
    Complex rhs;
    double deviation = 0;
    double truncation = 0;
};

namespace detail {

// Smooth bump supported on (1, 3).
inline double bump(double u) {
    if (u <= 1 || u >= 3) return 0;
    return std::exp(-1.0 / ((u - 1) * (3 - u)));
}

inline Complex lemma_lhs(TestFunction f, double tol) {
    const Complex i(0, 1);
    if (f == TestFunction::gaussian) {
        boost::math::quadrature::exp_sinh<double> es;
        return es.integrate([&](double u) -> Complex { return std::exp(-u * u - i * u); }, tanh_sinh_tolerance(tol));
    }
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double u) -> Complex { return bump(u) * std::exp(-i * u); }, 1.0, 3.0,
                        tanh_sinh_tolerance(tol));
}

inline Complex lemma_mellin(TestFunction f, Complex y, double tol) {
    if (f == TestFunction::gaussian) return 0.5 * tgamma((y + 1.0) / 2.0);  // int e^{-u^2} u^y du
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([&](double u) -> Complex { return bump(u) * std::exp(y * std::log(u)); }, 1.0, 3.0,
                        tanh_sinh_tolerance(tol));
}

}  // namespace detail

inline AppendixAResult verify_appendix_a(TestFunction f, double s, double T, const QuadratureSpec& q) {
    q.validate();
    if (!(s > -1 && s < 0)) throw ValidationError("verify_appendix_a: s must lie in (-1, 0)");
    if (!(T > 0)) throw ValidationError("verify_appendix_a: T must be > 0");
    const Complex i(0, 1);
    const auto rule = composite_rule(gauss_legendre<20>(), -T, T, q.panel_width);
    auto values = parallel_map(rule.nodes.size(), q.threads, [&](std::size_t k) {
        const Complex y(s, rule.nodes[k]);
        return rule.weights[k] * tgamma(-y) * std::exp(i * std::numbers::pi / 2.0 * y) *
               detail::lemma_mellin(f, y, q.tolerance);
    });
    CompensatedSum<Complex> sum;
    for (const auto& v : values) sum.add(v);
    AppendixAResult r;
    r.truncation = T;
    r.lhs = detail::lemma_lhs(f, q.tolerance);
    r.rhs = sum.value() / (2 * std::numbers::pi);
    r.deviation = std::abs(r.lhs - r.rhs);
    return r;
}

// ---------------------------------------------------------------------------
// Convergence studies

struct ConvergenceRow {
    double truncation = 0;
    Complex value;
    double deviation = 0;
};

inline std::vector<ConvergenceRow> appendix_a_study(TestFunction f, double s, const std::vector<double>& grid,
                                                    const QuadratureSpec& q) {
    std::vector<ConvergenceRow> rows;
    for (double T : grid) {
        auto r = verify_appendix_a(f, s, T, q);
        rows.push_back({T, r.rhs, r.deviation});
    }
    return rows;
}

/// Contour values over a T grid, each compared with `reference`.
inline std::vector<ConvergenceRow> contour_study(const CMRep& cm, const std::map<std::string, double>& values,
                                                 const std::vector<double>& masses, const Rational& D,
                                                 const std::vector<double>& grid, Complex reference,
                                                 const QuadratureSpec& q) {
    std::vector<ConvergenceRow> rows;
    for (double T : grid) {
        auto r = eval_cm_contour(cm, values, masses, D, T, q);
        rows.push_back({T, r.value, std::abs(r.value - reference) / std::abs(reference)});
    }
    return rows;
}

/// Comma-separated "T,re,im,deviation" with a header line and 17 significant digits.
inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "T,re,im,deviation\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.truncation, r.value.real(), r.value.imag(),
                      r.deviation);
        os << buf;
    }
}

}  // namespace cmrep
