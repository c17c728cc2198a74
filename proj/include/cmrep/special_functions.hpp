#pragma once

// Complex log-gamma, compensated summation and Gauss-Legendre panels.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace cmrep {

using Complex = std::complex<double>;

namespace detail {

// log sin(pi z), stable for large |Im z| where sin overflows.
inline Complex log_sin_pi(Complex z) {
    constexpr double pi = std::numbers::pi;
    if (std::abs(z.imag()) < 1.0) return std::log(std::sin(pi * z));
    if (z.imag() < 0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) i / 2, with |e^{2 i pi z}| < 1.
    const Complex i(0, 1);
    const Complex w = std::exp(2.0 * i * pi * z);
    return -i * pi * z + std::log(1.0 - w) + std::log(i / 2.0);
}

}  // namespace detail

/// log Gamma(z) for complex z (Lanczos, g = 7, with reflection). The imaginary
/// part is a branch of arg Gamma; exp(lgamma(z)) is Gamma(z).
inline Complex lgamma(Complex z) {
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) return std::log(pi) - detail::log_sin_pi(z) - lgamma(1.0 - z);
    static constexpr std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    Complex x = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) x += c[k] / (z + static_cast<double>(k));
    const Complex t = z + 7.5;
    return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline Complex tgamma(Complex z) { return std::exp(lgamma(z)); }

/// True when z is within `eps` of a pole of Gamma (0, -1, -2, ...).
inline bool near_gamma_pole(Complex z, double eps = 1e-12) {
    if (std::abs(z.imag()) > eps || z.real() > eps) return false;
    return std::abs(z.real() - std::round(z.real())) <= eps;
}

/// Kahan-Babuska compensated sum.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        T t = sum_ + x;
        if (magnitude(sum_) >= magnitude(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    T value() const { return sum_ + comp_; }

private:
    static double magnitude(double x) { return std::abs(x); }
    static double magnitude(Complex x) { return std::max(std::abs(x.real()), std::abs(x.imag())); }

    T sum_{};
    T comp_{};
};

/// Nodes and weights of an N-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

template <unsigned N>
GaussRule gauss_legendre() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    GaussRule r;
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] == 0) continue;
        r.nodes.push_back(-x[i]);
        r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.nodes.push_back(x[i]);
        r.weights.push_back(w[i]);
    }
    return r;
}

/// Panels of width <= `width` covering [a, b], each carrying the rule mapped
/// to it; nodes listed in increasing order.
inline GaussRule composite_rule(const GaussRule& base, double a, double b, double width) {
    GaussRule out;
    const std::size_t panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / width)));
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        for (std::size_t i = 0; i < base.nodes.size(); ++i) {
            out.nodes.push_back(lo + 0.5 * h * (base.nodes[i] + 1.0));
            out.weights.push_back(0.5 * h * base.weights[i]);
        }
    }
    return out;
}

}  // namespace cmrep
