#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cmrep/numeric_eval.hpp"
#include "support.hpp"

using namespace cmrep;

namespace {

std::map<std::string, double> values_of(const GraphInput& in) {
    std::map<std::string, double> out;
    for (const auto& [k, v] : in.invariant_values) out[k] = to_double(v);
    return out;
}

}  // namespace

TEST(SpecialFunctions, GammaMatchesStd) {
    for (double x : {0.3, 1.0, 2.5, 7.25, -0.5, -2.7}) EXPECT_NEAR(tgamma(Complex(x, 0)).real(), std::tgamma(x), 1e-12 * std::abs(std::tgamma(x)));
}

TEST(SpecialFunctions, GammaReflectionAndLargeImaginary) {
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y).
    for (double y : {0.5, 3.0, 20.0, 80.0}) {
        const double expect = 0.5 * (std::log(std::numbers::pi) - std::log(std::cosh(std::numbers::pi * y)));
        EXPECT_NEAR(lgamma(Complex(0.5, y)).real(), expect, 1e-10 * std::max(1.0, std::abs(expect)));
    }
    EXPECT_TRUE(near_gamma_pole(Complex(-3, 0)));
    EXPECT_FALSE(near_gamma_pole(Complex(-3, 1e-3)));
}

TEST(Parametric, SingleLineClosedForm) {
    auto in = support::graph("single_line");
    auto r = eval_parametric_commutative(in.graph, values_of(in), 1, {});
    EXPECT_NEAR(r.value.real(), oracle::single_line_value(1, 1), 1e-10);
}

TEST(Parametric, BubbleMatchesAlphaSpaceIntegral) {
    auto in = support::graph("bubble");
    for (Rational D : {Rational(1), Rational(3, 2), Rational(3)}) {
        auto r = eval_parametric_commutative(in.graph, values_of(in), D, {});
        const double expect = oracle::bubble_alpha_integral(to_double(D), 1, 1);
        EXPECT_NEAR(r.value.real(), expect, 1e-8 * expect) << D;
    }
}

TEST(Parametric, BubbleFrozenValue) {
    // Direct two-dimensional alpha integral at D = 1, m2 = s = 1, evaluated
    // once at 20 digits with an independent arbitrary-precision quadrature.
    auto in = support::graph("bubble");
    auto r = eval_parametric_commutative(in.graph, values_of(in), 1, {});
    EXPECT_NEAR(r.value.real(), 0.70898154036220641092, 1e-9);
}

TEST(Parametric, DivergentDimensionRejected) {
    auto in = support::graph("bubble");
    EXPECT_THROW(eval_parametric_commutative(in.graph, values_of(in), 4, {}), NonConvergentError);
}

TEST(Parametric, MonteCarloIsSeededAndThreadIndependent) {
    auto in = support::graph("triangle");
    QuadratureSpec q;
    q.scheme = QuadratureScheme::monte_carlo;
    q.samples = 20000;
    q.seed = 42;
    auto a = eval_parametric_commutative(in.graph, values_of(in), 1, q);
    q.threads = 8;
    auto b = eval_parametric_commutative(in.graph, values_of(in), 1, q);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_estimate, b.error_estimate);
    auto exact = eval_parametric_commutative(in.graph, values_of(in), 1, {});
    EXPECT_NEAR(a.value.real(), exact.value.real(), 5 * a.error_estimate + 1e-6);
}

TEST(Contour, SingleLineAndBubbleAgreeWithParametric) {
    for (const char* name : {"single_line", "bubble"}) {
        auto in = support::graph(name);
        auto cm = build_cm(in.graph);
        auto p = eval_parametric_commutative(in.graph, values_of(in), 1, {});
        auto c = eval_cm_contour(cm, values_of(in), {}, 1, 10, {});
        EXPECT_LT(std::abs(c.value - p.value) / std::abs(p.value), 1e-6) << name;
        EXPECT_EQ(c.real_parts.size(), cm.num_vars());
    }
}

TEST(Contour, ThreadCountIndependent) {
    auto in = support::graph("bubble");
    auto cm = build_cm(in.graph);
    QuadratureSpec q;
    auto a = eval_cm_contour(cm, values_of(in), {}, 1, 6, q);
    q.threads = 8;
    auto b = eval_cm_contour(cm, values_of(in), {}, 1, 6, q);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_estimate, b.error_estimate);
}

TEST(Contour, EmptyDomainAndBadTruncation) {
    auto in = support::graph("bubble");
    auto cm = build_cm(in.graph);
    EXPECT_THROW(eval_cm_contour(cm, values_of(in), {}, 5, 10, {}), ComputationError);
    EXPECT_THROW(eval_cm_contour(cm, values_of(in), {}, 1, -1, {}), ValidationError);
}

TEST(Contour, StudyWritesCsv) {
    auto in = support::graph("single_line");
    auto cm = build_cm(in.graph);
    auto rows = contour_study(cm, values_of(in), {}, 1, {2, 4}, 0.5, {});
    std::ostringstream os;
    write_convergence_csv(os, rows);
    const std::string csv = os.str();
    EXPECT_EQ(csv.substr(0, 18), "T,re,im,deviation\n");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Beta, MassiveAtTwoTwoOne) {
    // int_0^1 t (1 - t)/(1 + t) dt = 3/2 - 2 ln 2.
    EXPECT_NEAR(beta_massive(2, 2, 1).real(), 1.5 - 2 * std::log(2.0), 1e-12);
}

TEST(Beta, StandardMatchesQuadrature) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> re(0.3, 4), im(-2, 2);
    for (int i = 0; i < 30; ++i) {
        Complex phi(re(rng), im(rng)), D(re(rng), im(rng));
        Complex a = beta_std(phi, D), b = beta_std_quadrature(phi, D);
        EXPECT_LT(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST(Beta, MasslessLimitAndDifference) {
    EXPECT_EQ(beta_massive(Complex(1.5, 0.2), Complex(2.5, -0.1), 0), beta_std(Complex(1.5, 0.2), Complex(2.5, -0.1)));
    const Complex diff = beta_massive_minus_std(2, 3, 1);
    EXPECT_NEAR(std::abs(diff - 2.0 * (beta_massive(2, 3, 1) - beta_std(2, 3))), 0, 1e-10);
    EXPECT_THROW(beta_massive(-1, 2, 1), ValidationError);
    EXPECT_THROW(beta_massive(1, 2, -1), ValidationError);
}

TEST(HeavisideLemma, GaussianLeftSideMatchesDawson) {
    auto r = verify_appendix_a(TestFunction::gaussian, -0.5, 4, {});
    EXPECT_LT(std::abs(r.lhs - oracle::gaussian_heaviside_lhs()), 1e-10);
}

TEST(HeavisideLemma, GaussianConverges) {
    auto rows = appendix_a_study(TestFunction::gaussian, -0.5, {2, 4, 8, 16}, {});
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].deviation, rows[i - 1].deviation);
    EXPECT_LT(rows.back().deviation, 1e-5);
}

TEST(HeavisideLemma, BumpDeviationShrinks) {
    auto rows = appendix_a_study(TestFunction::bump, -0.5, {4, 16}, {});
    EXPECT_LT(rows[1].deviation, rows[0].deviation);
}

TEST(HeavisideLemma, Validation) {
    EXPECT_THROW(verify_appendix_a(TestFunction::gaussian, 0.5, 4, {}), ValidationError);
    EXPECT_THROW(parse_test_function("box"), ValidationError);
}
