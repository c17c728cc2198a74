#include <gtest/gtest.h>

#include "cmrep/polynomials.hpp"
#include "support.hpp"

using namespace cmrep;

namespace {

std::vector<std::size_t> bits(std::uint64_t m, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (m >> i & 1u) out.push_back(i);
    }
    return out;
}

Rational power(const Rational& x, long e) {
    Rational r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

// HU of the GW model straight from its definition, with explicit submatrices.
oracle::PolyMap gw_hu_reference(const RibbonData& r) {
    oracle::PolyMap out;
    const auto B = r.B.rows();
    const std::size_t L = r.L;
    for (std::uint64_t K = 0; K < (std::uint64_t{1} << (2 * L)); ++K) {
        auto k = bits(K, 2 * L);
        if ((*r.parity_n + k.size()) % 2 == 0) continue;
        Rational pf = oracle::pfaffian(oracle::delete_indices(B, k));
        if (pf == 0) continue;
        std::vector<int> e(L);
        for (std::size_t l = 0; l < L; ++l) e[l] = !(K >> l & 1u) + (K >> (L + l) & 1u);
        long kk = static_cast<long>(k.size()) - static_cast<long>(L) - static_cast<long>(r.F) + 1;
        out[{e, ""}] += power(r.s, 2 * r.g - kk) * pf * pf;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

oracle::PolyMap lsz_hu_reference(const RibbonData& r) {
    oracle::PolyMap out;
    const auto B = r.B.rows();
    const std::size_t L = r.L;
    for (std::uint64_t I = 0; I < (std::uint64_t{1} << L); ++I) {
        auto i = bits(I, L);
        if ((*r.parity_n + i.size()) % 2 == 0) continue;
        Rational pf = oracle::pfaffian(oracle::delete_indices(B, i));
        long kk = static_cast<long>(i.size()) - static_cast<long>(L) - static_cast<long>(r.F) + 1;
        Rational a = power(r.s, 2 * r.g - kk) * pf * pf / power(2, static_cast<long>(i.size()));
        // prod_{l in I} (1 + t_l^2) prod_{l not in I} t_l, expanded.
        for (std::uint64_t J = 0; J < (std::uint64_t{1} << L); ++J) {
            if (J & ~I) continue;
            std::vector<int> e(L, 1);
            for (std::size_t l = 0; l < L; ++l) {
                if (I >> l & 1u) e[l] = (J >> l & 1u) ? 0 : 2;
            }
            out[{e, ""}] += a;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

}  // namespace

TEST(HyperbolicPolynomials, OneLineGwByHand) {
    auto r = support::ribbon("gw_one_line");
    // K = {} gives s^2 Pf(B)^2 t = 4t; K = {short, long} gives t.
    EXPECT_EQ(hu_gw(r).render("t"), "5*t1");
    // K = {short}: |x_2|^2 = 2, constant; K = {long}: |x_1|^2 = 2 t^2.
    EXPECT_EQ(hv_real_gw(r, r.externals).render("t"), "2 + 2*t1^2");
    // K = {}: both orderings of the pair contribute omega(x_1, x_2) = 1.
    EXPECT_EQ(hv_imag_gw(r, r.externals).render("t"), "2*t1");
}

TEST(HyperbolicPolynomials, GwFixturesMatchDefinition) {
    for (const char* name : {"gw_one_line", "gw_two_line"}) {
        auto r = support::ribbon(name);
        EXPECT_EQ(support::as_map(hu_gw(r)), gw_hu_reference(r)) << name;
    }
}

TEST(HyperbolicPolynomials, RandomGwMatrices) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        RibbonData r;
        r.model = RibbonModel::GW;
        r.L = 1 + trial % 3;
        r.F = 1 + trial % 2;
        r.g = 2;
        r.s = Rational(1 + trial % 3, 2);
        r.parity_n = trial % 2;
        r.B = AntisymMatrix::from_rows(oracle::random_antisymmetric(2 * r.L + trial % 3, rng));
        EXPECT_EQ(support::as_map(hu_gw(r)), gw_hu_reference(r));
    }
}

TEST(HyperbolicPolynomials, LszFixtureMatchesDefinition) {
    auto r = support::ribbon("lsz_two_line");
    EXPECT_EQ(support::as_map(hu_lsz(r)), lsz_hu_reference(r));
    // Pf(B)^2 = 4 enters only through I = {} when parity_n is odd.
    for (const auto& m : hu_lsz(r).monomials) EXPECT_GT(m.coefficient, 0);
}

TEST(HyperbolicPolynomials, ThreadCountDoesNotChangeResult) {
    auto r = support::ribbon("gw_two_line");
    const auto one = hu_gw(r, 1).render("t");
    EXPECT_EQ(hu_gw(r, 2).render("t"), one);
    EXPECT_EQ(hu_gw(r, 8).render("t"), one);
    EXPECT_EQ(hv_imag_gw(r, r.externals, 8).render("t"), hv_imag_gw(r, r.externals, 1).render("t"));
}

TEST(HyperbolicPolynomials, ExponentsStayInRange) {
    auto r = support::ribbon("gw_two_line");
    for (const auto& p : {hu_gw(r), hv_real_gw(r, r.externals), hv_imag_gw(r, r.externals)}) {
        for (const auto& m : p.monomials) {
            for (int e : m.exponents) {
                EXPECT_GE(e, 0);
                EXPECT_LE(e, 2);
            }
        }
    }
}

TEST(HyperbolicPolynomials, Validation) {
    auto r = support::ribbon("gw_one_line");
    r.parity_n.reset();
    EXPECT_THROW(hu_gw(r), ValidationError);
    auto l = support::ribbon("lsz_two_line");
    EXPECT_THROW(hu_gw(l), ValidationError);
    auto bad = support::ribbon("gw_one_line");
    bad.g = 0;
    bad.F = 1;  // 2g - k = -1 for K = {short, long}
    EXPECT_THROW(hu_gw(bad), ComputationError);
}
