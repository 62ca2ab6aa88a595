#include "entlab/error.hpp"
#include "entlab/kernel.hpp"
#include "entlab/rates.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace entlab;

namespace {

// Test-local slowly varying part of ln k(e^{-lambda}); ln k = tau lambda + slow.
double log_slow(const KernelSpec& k, double lambda) {
    switch (k.family) {
    case KernelFamily::Power: return 0.0;
    case KernelFamily::LogPower: return -k.beta * std::log(k.c0 + lambda);
    default: return std::log(lambda + std::log1p(std::exp(1 - lambda))); // ln ln(e + e^lambda)
    }
}

double log_kernel(const KernelSpec& k, double lambda) { return k.tau * lambda + log_slow(k, lambda); }

// ln of k(u)^q du / dlambda, grouped so large lambda does not cancel.
double log_weight(const KernelSpec& k, double q, double lambda) {
    return (q * k.tau - 1) * lambda + q * log_slow(k, lambda);
}

double log_kernel_at(const KernelSpec& k, double x) { return log_kernel(k, -std::log(x)); }

// int_0^c g(u) du for g singular at 0, computed in lambda = -ln u on [-ln c, inf).
template <class F>
double singular_panel(F g_over_u, double c) {
    if (c <= 0) return 0.0;
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate(g_over_u, -std::log(c), std::numeric_limits<double>::infinity());
}

// Independent q-integral: (int_0^r k^q)^{1/q} = (int_{-ln r}^inf exp(q lnk - lambda))^{1/q}.
double oracle_q_integral(const KernelSpec& k, double q, double r) {
    double v = singular_panel([&](double l) { return std::exp(log_weight(k, q, l)); }, r);
    return std::pow(v, 1.0 / q);
}

// int_0^c |k(u) - k(other(u))|^q du with the singular factor k(u) pulled out.
template <class O>
double diff_panel(const KernelSpec& k, double q, double c, O other) {
    return singular_panel(
        [&](double l) {
            double L = log_kernel(k, l), u = std::exp(-l);
            double ratio = std::exp(log_kernel_at(k, other(u)) - L);
            return std::exp(log_weight(k, q, l)) * std::pow(std::fabs(1 - ratio), q);
        },
        c);
}

// Independent metric (int_0^1 |K(s,x) - K(t,x)|^q dx)^{1/q}, split into panels
// that each carry one singularity at their left end.
double oracle_metric(const KernelSpec& k, double q, double s, double t) {
    const double a = std::min(s, t), b = std::max(s, t), D = b - a;
    if (D == 0) return 0.0;
    auto shifted = [&](double u) { return u + D; };
    double sum = diff_panel(k, q, a, shifted);
    if (k.mode == KernelMode::VO) {
        sum += singular_panel([&](double l) { return std::exp(log_weight(k, q, l)); }, D);
    } else {
        sum += diff_panel(k, q, 1 - b, shifted);
        sum += 2 * diff_panel(k, q, D / 2, [&](double u) { return D - u; });
    }
    return std::pow(sum, 1.0 / q);
}

} // namespace

TEST(KernelSpec, Validation) {
    EXPECT_THROW(KernelSpec::power(0.0), Error);
    EXPECT_THROW(KernelSpec::power(1.0), Error);
    EXPECT_NO_THROW(KernelSpec::logpower(0.5, 1.0, 1.0));
    EXPECT_FALSE(KernelSpec::logpower(0.5, 1.0, 1.0).warnings().empty()); // c0 <= beta q
    EXPECT_TRUE(KernelSpec::logpower(0.5, 1.0, 3.0).warnings().empty());
}

TEST(KernelSpec, DecreasingAndSingular) {
    for (const auto& k : {KernelSpec::power(0.25), KernelSpec::logpower(0.5, 0.75, 2.5),
                          KernelSpec::doublelog(0.5, 0.5, 1.0, 3.0)}) {
        double prev = k.value(1e-300);
        EXPECT_GT(prev, 1e6);
        for (double x = 1e-12; x <= 1.0; x *= 1.7) {
            double v = k.value(x);
            EXPECT_LT(v, prev);
            prev = v;
        }
    }
}

TEST(QIntegral, Examples) {
    auto p = KernelSpec::power(0.25);
    EXPECT_NEAR(kernel_q_integral(p, 2, 1.0), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(kernel_q_integral(p, 2, 0.25), 1.0, 1e-14);
    EXPECT_NEAR(kernel_q_integral(KernelSpec::logpower(0.5, 1, 1), 2, 1.0), 1.0, 1e-14);
    EXPECT_THROW(kernel_q_integral(KernelSpec::power(0.5), 2, 1.0), Error);
    EXPECT_THROW(kernel_q_integral(KernelSpec::logpower(0.5, 0.5, 1), 2, 1.0), Error);
}

TEST(QIntegral, ClosedFormsMatchIndependentQuadrature) {
    for (const auto& [k, q] : {std::pair{KernelSpec::power(0.25), 2.0}, {KernelSpec::power(0.125), 4.0},
                               {KernelSpec::logpower(0.5, 1.0, 1.0), 2.0},
                               {KernelSpec::logpower(0.25, 2.0, 3.0), 4.0}}) {
        ASSERT_TRUE(has_closed_form(k, q));
        for (int i = 0; i < 100; ++i) {
            double r = std::pow(10.0, -6.0 + 6.0 * i / 99.0);
            double want = oracle_q_integral(k, q, r);
            EXPECT_NEAR(kernel_q_integral(k, q, r), want, 1e-6 * want) << k.describe() << " r=" << r;
            EXPECT_NEAR(kernel_q_integral_quadrature(k, q, -std::log(r)), want, 1e-6 * want);
        }
    }
}

TEST(QIntegral, MonotoneInR) {
    auto k = KernelSpec::doublelog(0.5, 0.5, 1.0, 1.0);
    double prev = 0;
    for (double r = 1e-8; r <= 1.0; r *= 3) {
        double v = kernel_q_integral(k, 2, r);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(QIntegral, NegLogForTinyRadii) {
    auto k = KernelSpec::power(0.25);
    // (1 - q tau)^{-1/q} r^{1/q - tau} with r = e^{-800}
    EXPECT_NEAR(std::log(kernel_q_integral_neglog(k, 2, 800.0)), std::log(std::sqrt(2.0)) - 800 * 0.25, 1e-10);
}

TEST(PseudoMetric, Examples) {
    auto vo = KernelSpec::power(0.25, KernelMode::VO);
    EXPECT_EQ(pseudo_metric(vo, 2, 0.3, 0.3), 0.0);
    double d = pseudo_metric(vo, 2, 0.5, 0.25);
    EXPECT_GE(d, 1.0 - 1e-9);
    EXPECT_LE(d, std::sqrt(2.0) + 1e-9);
    auto ws = KernelSpec::power(0.25, KernelMode::WS);
    EXPECT_LE(pseudo_metric(ws, 2, 0.5, 0.25), 2.0);
    EXPECT_THROW(pseudo_metric(vo, 2, -0.1, 0.5), Error);
}

TEST(PseudoMetric, MatchesIndependentQuadrature) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0, 1);
    for (const auto& k : {KernelSpec::power(0.25, KernelMode::VO), KernelSpec::power(0.125, KernelMode::WS),
                          KernelSpec::logpower(0.5, 1.0, 2.0, KernelMode::VO)})
        for (int i = 0; i < 10; ++i) {
            double s = u(rng), t = u(rng);
            double want = oracle_metric(k, 2, s, t);
            EXPECT_NEAR(pseudo_metric(k, 2, s, t), want, 1e-6 * want) << k.describe();
        }
}

TEST(PseudoMetricProperty, SymmetricAndTriangle) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0, 1);
    for (const auto& k : {KernelSpec::power(0.25, KernelMode::VO), KernelSpec::power(0.25, KernelMode::WS),
                          KernelSpec::logpower(0.25, 0.75, 2.0, KernelMode::VO)})
        for (int i = 0; i < 30; ++i) {
            double a = u(rng), b = u(rng), c = u(rng);
            double ab = pseudo_metric(k, 2, a, b), bc = pseudo_metric(k, 2, b, c), ac = pseudo_metric(k, 2, a, c);
            EXPECT_NEAR(ab, pseudo_metric(k, 2, b, a), 1e-12 * (1 + ab));
            EXPECT_LE(ac, ab + bc + 1e-6);
        }
}

TEST(PseudoMetricProperty, VoMonotoneAwayFromZero) {
    // K(0, .) vanishes for VO kernels, so d(s, 0) drops back to the base
    // integral; monotonicity is checked on the grid points t >= h.
    auto k = KernelSpec::power(0.25, KernelMode::VO);
    const int m = 24;
    for (int i = 1; i <= m; ++i) {
        double s = double(i) / m, prev = 0;
        for (int j = i + 1; j <= m; ++j) {
            double d = pseudo_metric(k, 2, s, double(j) / m);
            EXPECT_GE(d, prev - 1e-9);
            prev = d;
        }
        prev = 0;
        for (int j = i - 1; j >= 1; --j) {
            double d = pseudo_metric(k, 2, s, double(j) / m);
            EXPECT_GE(d, prev - 1e-9);
            prev = d;
        }
    }
}

TEST(Sandwich, Examples) {
    auto p = KernelSpec::power(0.25, KernelMode::VO);
    auto z = sandwich_check(p, 2, 0.4, 0.4);
    EXPECT_EQ(z.base, 0.0);
    EXPECT_EQ(z.d, 0.0);
    EXPECT_TRUE(z.passed);
    auto r = sandwich_check(p, 2, 0.5, 0.25);
    EXPECT_NEAR(r.base, 1.0, 1e-14);
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.d, 1.41422);
    auto l = sandwich_check(KernelSpec::logpower(0.5, 1, 1, KernelMode::VO), 2, 0.5, 0.5 - std::exp(-1.0));
    EXPECT_NEAR(l.base, 1 / std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(l.passed);
}

TEST(Sandwich, AllFamiliesOnGrid) {
    for (double q : {4.0 / 3.0, 2.0, 4.0})
        for (auto mode : {KernelMode::VO, KernelMode::WS}) {
            auto k = KernelSpec::power(0.5 / q, mode);
            for (int i = 0; i <= 8; ++i)
                for (int j = 0; j <= 8; ++j) EXPECT_TRUE(sandwich_check(k, q, i / 8.0, j / 8.0).passed);
        }
}

TEST(IntervalRate, Examples) {
    auto f = interval_rate_under_d(KernelSpec::power(0.25), 2);
    EXPECT_DOUBLE_EQ(f.p0, 0.25);
    EXPECT_EQ(f.q0, 0.0);
    EXPECT_EQ(f.r0, 0.0);
    EXPECT_DOUBLE_EQ(f.printed_exponents()[0], -0.25);
    auto d1 = interval_rate_under_d(KernelSpec::doublelog(0.5, 0.75, 0.3, 1.0), 2);
    EXPECT_DOUBLE_EQ(d1.printed_exponents()[0], 0.0);
    EXPECT_DOUBLE_EQ(d1.printed_exponents()[1], 0.5 - 0.75);
    EXPECT_DOUBLE_EQ(d1.printed_exponents()[2], -0.3);
    auto d3 = interval_rate_under_d(KernelSpec::doublelog(0.5, 0.5, 0.8, 1.0), 2);
    EXPECT_DOUBLE_EQ(d3.printed_exponents()[1], 0.0);
    EXPECT_DOUBLE_EQ(d3.printed_exponents()[2], 0.5 - 0.8);
}

TEST(SampledMetric, TwoPointTable) {
    auto k = KernelSpec::power(0.25);
    auto c = sampled_interval_metric(k, 2, 2);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.dist(0, 0), 0.0);
    EXPECT_NEAR(c.dist(0, 1), pseudo_metric(k, 2, 0, 1), 1e-12);
    EXPECT_THROW(sampled_interval_metric(k, 2, 513), Error);
}

TEST(SampledMetric, WsBelowFourToTheOneOverQTimesVo) {
    auto vo = sampled_interval_metric(KernelSpec::power(0.25, KernelMode::VO), 2, 17);
    auto ws = sampled_interval_metric(KernelSpec::power(0.25, KernelMode::WS), 2, 17);
    for (std::size_t i = 0; i < 17; ++i)
        for (std::size_t j = 0; j < 17; ++j) EXPECT_LE(ws.dist(i, j), 2.0 * vo.dist(i, j) * (1 + 1e-4) + 1e-12);
}

TEST(SampledMetric, EntropyExponentOnGrid65) {
    auto c = sampled_interval_metric(KernelSpec::power(0.25, KernelMode::VO), 2, 65);
    auto e = entropy_numbers(c, 16, EntropyMethod::Greedy);
    std::vector<double> xs, ys;
    for (std::size_t n = 2; n <= 16; ++n) {
        xs.push_back(double(n));
        ys.push_back(e.nth(n));
    }
    auto fit = fit_rate_samples(xs, ys, {FitTerms::Power, 1.96});
    EXPECT_NEAR(fit.formula.p0, 0.25, 0.07);
}

TEST(CustomKernel, SlowlyVaryingFactorMatchesQuadrature) {
    // k(x) = x^{-1/4} ln(e + 1/x)
    auto k = KernelSpec::custom_kernel([](double x) { return std::pow(x, -0.25) * std::log(std::exp(1.0) + 1 / x); },
                                       0.25, 1.0);
    for (double r : {1e-4, 1e-2, 0.5, 1.0}) {
        double want = oracle_q_integral(k, 2, r);
        EXPECT_NEAR(kernel_q_integral(k, 2, r), want, 1e-6 * want);
    }
    auto f = interval_rate_under_d(k, 2);
    EXPECT_DOUBLE_EQ(f.p0, 0.25);
    EXPECT_DOUBLE_EQ(f.q0, -1.0);
}
