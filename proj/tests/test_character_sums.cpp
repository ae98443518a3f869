#include <gtest/gtest.h>

#include <cmath>

#include "hadamax/character_sums.hpp"
#include "hadamax/error.hpp"
#include "test_support.hpp"

using namespace hadamax;
using hadamax::testing::CounterStream;

TEST(Characters, AdditiveBasics) {
    auto ctx = FieldContext::build(11, 1);
    EXPECT_TRUE(approx_equal(additive_char(*ctx, ctx->zero()), 1.0));
    EXPECT_TRUE(approx_equal(additive_char(*ctx, ctx->one()), std::polar(1.0, 2 * M_PI / 11)));
    auto big = FieldContext::build(3, 3);
    Complex sum = 0;
    for (std::uint32_t i = 0; i < big->order(); ++i) sum += additive_char(*big, big->element_at(i));
    EXPECT_TRUE(approx_equal(sum, 0.0));
}

TEST(Characters, MultiplicativeExponent) {
    auto ctx = FieldContext::build(17, 1);
    EXPECT_EQ(mult_char(*ctx, 8, ctx->one()), 0u);
    EXPECT_EQ(mult_char(*ctx, 8, ctx->omega_pow(1)), 1u);
    EXPECT_EQ(mult_char(*ctx, 4, ctx->omega_pow(10)), 2u);
    EXPECT_THROW(mult_char(*ctx, 8, ctx->zero()), Error);
    EXPECT_THROW(mult_char(*ctx, 3, ctx->one()), Error);
    EXPECT_TRUE(approx_equal(mult_char_value(*ctx, {8, 1}, ctx->zero()), 0.0));
    EXPECT_TRUE(approx_equal(mult_char_value(*ctx, {8, 0}, ctx->zero()), 1.0));
}

TEST(GaussSums, TrivialIsMinusOne) {
    auto ctx = FieldContext::build(13, 1);
    EXPECT_TRUE(approx_equal(gauss_sum(*ctx, 4, 0), -1.0));
    EXPECT_TRUE(approx_equal(gauss_sum(*ctx, 1, 1), -1.0));
}

TEST(GaussSums, QuadraticExamples) {
    EXPECT_TRUE(approx_equal(gauss_sum(*FieldContext::build(17, 1), 2), std::sqrt(17.0)));
    EXPECT_TRUE(approx_equal(gauss_sum(*FieldContext::build(11, 1), 2), Complex(0, std::sqrt(11.0))));
    // q = 9: s = 2, p = 3 -> (-1)^1 zeta_4^2 * 3 = 3.
    EXPECT_TRUE(approx_equal(gauss_sum(*FieldContext::build(3, 2), 2), 3.0));
    EXPECT_TRUE(approx_equal(quadratic_gauss_closed_form(3, 2), 3.0));
}

TEST(GaussSums, AbsoluteValueAndInverse) {
    for (auto [p, f] : {std::pair{13u, 1u}, std::pair{5u, 2u}, std::pair{3u, 4u}, std::pair{17u, 1u}}) {
        auto ctx = FieldContext::build(p, f);
        const auto n = ctx->group_order();
        for (std::uint32_t e = 2; e <= n; ++e) {
            if (n % e != 0 || e > 16) continue;
            for (std::int64_t j = 1; j < e; ++j) {
                const Complex g = gauss_sum(*ctx, e, j);
                EXPECT_NEAR(std::norm(g), static_cast<double>(ctx->order()), 1e-6);
                const Complex chi_m1 = mult_char_value(*ctx, {e, j}, ctx->minus_one());
                EXPECT_TRUE(approx_equal(gauss_sum(*ctx, e, -j), chi_m1 * std::conj(g)));
            }
        }
    }
}

TEST(GaussPeriods, QuadraticPeriodsAndSum) {
    auto ctx = FieldContext::build(11, 1);
    const Complex g = gauss_sum(*ctx, 2);
    EXPECT_TRUE(approx_equal(gauss_period(*ctx, 2, 0), (-1.0 + g) / 2.0));
    EXPECT_TRUE(approx_equal(gauss_period(*ctx, 2, 0), Complex(-0.5, std::sqrt(11.0) / 2)));
    EXPECT_TRUE(approx_equal(gauss_period(*ctx, 2, 1), (-1.0 - g) / 2.0));
    EXPECT_TRUE(approx_equal(gauss_period(*ctx, 1, 0), -1.0));
    auto big = FieldContext::build(5, 2);
    Complex total = 0;
    for (Complex v : gauss_periods(*big, 8)) total += v;
    EXPECT_TRUE(approx_equal(total, -1.0));
}

TEST(GaussSums, FourierInversion) {
    // chi(x) = chi(-1) G(chi)/q * sum_a chi^{-1}(a) psi(a x).
    auto ctx = FieldContext::build(5, 2);
    CounterStream rng(7);
    for (int t = 0; t < 50; ++t) {
        const std::uint32_t divisors[] = {2, 3, 4, 6, 8, 12, 24};
        const std::uint32_t e = divisors[rng.below(7)];
        const std::int64_t j = 1 + static_cast<std::int64_t>(rng.below(e - 1));
        const FieldElement x = ctx->element_at(1 + static_cast<std::uint32_t>(rng.below(ctx->group_order())));
        const CharSpec chi{e, j};
        Complex inner = 0;
        for (std::uint32_t a = 0; a < ctx->group_order(); ++a) {
            const FieldElement fa{a};
            inner += mult_char_value(*ctx, {e, -j}, fa) * additive_char(*ctx, ctx->mul(fa, x));
        }
        const Complex rhs = mult_char_value(*ctx, chi, ctx->minus_one()) * gauss_sum(*ctx, e, j) / 25.0 * inner;
        EXPECT_TRUE(approx_equal(mult_char_value(*ctx, chi, x), rhs));
    }
}

TEST(JacobiSums, RelationToGaussSums) {
    auto ctx = FieldContext::build(13, 1);
    const Complex j = jacobi_sum(*ctx, {2, 1}, {4, 1});
    EXPECT_NEAR(std::norm(j), 13.0, 1e-6);
    const Complex g = gauss_sum(*ctx, 2) * gauss_sum(*ctx, 4, 1) / gauss_sum(*ctx, 4, 3);
    EXPECT_TRUE(approx_equal(j, g));
    // Both trivial: every x contributes 1.
    EXPECT_TRUE(approx_equal(jacobi_sum(*ctx, {1, 0}, {1, 0}), 13.0));
}

TEST(Decomposition, Order8SmallFields) {
    for (std::uint32_t p : {11u, 3u}) {
        const std::uint32_t f = (p == 3) ? 6 : 2;
        auto ext = FieldContext::build(p, f);
        const auto d = decompose_gauss(*ext, GaussFamily::Order8);
        EXPECT_LT(d.residual, kTolerance);
        EXPECT_EQ(d.form, GaussForm::Order8);
    }
    auto ext = FieldContext::build(11, 2);
    const auto d = decompose_gauss(*ext, GaussFamily::Order8);
    EXPECT_EQ(d.m, 1u);
    EXPECT_EQ(d.epsilon, -1);
    EXPECT_EQ(d.delta, -1);
}

TEST(Decomposition, Order4) {
    const auto d5 = decompose_gauss(*FieldContext::build(5, 2), GaussFamily::Order4);
    EXPECT_EQ(d5.form, GaussForm::Order4Odd);
    EXPECT_NEAR(std::norm(d5.reconstructed), 5.0, 1e-9);
    const auto d13 = decompose_gauss(*FieldContext::build(13, 2), GaussFamily::Order4);
    EXPECT_EQ(d13.form, GaussForm::Order4Even);
    EXPECT_NEAR(std::norm(d13.reconstructed), 13.0, 1e-9);
    EXPECT_THROW(decompose_gauss(*FieldContext::build(7, 2), GaussFamily::Order4), Error);
    EXPECT_THROW(decompose_gauss(*FieldContext::build(13, 2), GaussFamily::Order8), Error);
}

TEST(DavenportHasse, SmallLifts) {
    auto b11 = FieldContext::build(11, 1);
    auto e121 = FieldContext::build(11, 2);
    const auto c = check_davenport_hasse(*b11, *e121, 2, 2);
    EXPECT_TRUE(c.holds());
    EXPECT_TRUE(approx_equal(c.lhs, 11.0));
    EXPECT_TRUE(check_davenport_hasse(*FieldContext::build(5, 1), *FieldContext::build(5, 2), 4, 2).holds());
    EXPECT_THROW(check_davenport_hasse(*b11, *e121, 1, 2), Error);
}

TEST(Lemmas, ClosedFormsHold) {
    auto ext = FieldContext::build(11, 2);
    for (std::uint64_t ell : {1u, 3u, 5u, 7u, 13u, 25u}) {
        EXPECT_TRUE(check_lemma31(*ext, 8, ell).holds()) << ell;
        for (std::uint32_t s = 0; s < 11; s += 4) {
            EXPECT_TRUE(check_lemma32(*ext, 8, ell, ext->subfield().element_at(s)).holds()) << ell << " " << s;
        }
    }
    auto e25 = FieldContext::build(5, 2);
    EXPECT_TRUE(check_lemma31_32(*e25, 4, 1, e25->subfield().zero()));
    EXPECT_THROW(check_lemma31(*e25, 4, 6), Error);
    EXPECT_THROW(check_lemma31(*e25, 3, 1), Error);
}
