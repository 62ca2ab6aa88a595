#include "entlab/error.hpp"
#include "entlab/metricspace.hpp"
#include "entlab/operators.hpp"
#include "entlab/rates.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace entlab;

namespace {

const double kPi = std::acos(-1.0);

} // namespace

TEST(Apply, ZeroAndLinearity) {
    auto op = DiscretizedOperator::from_kernel(KernelSpec::power(0.25), 65);
    std::vector<double> z(65, 0.0);
    for (double v : apply_operator(op, z)) EXPECT_EQ(v, 0.0);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<double> f(65), h(65), fh(65);
    for (int i = 0; i < 65; ++i) {
        f[i] = g(rng);
        h[i] = g(rng);
        fh[i] = f[i] + h[i];
    }
    auto a = apply_operator(op, f), b = apply_operator(op, h), c = apply_operator(op, fh);
    for (int i = 0; i < 65; ++i) EXPECT_NEAR(c[i], a[i] + b[i], 1e-12);
    EXPECT_THROW(apply_operator(op, std::vector<double>(64, 1.0)), Error);
}

TEST(Apply, RiemannLiouvilleOnConstants) {
    auto op1 = DiscretizedOperator::riemann_liouville(1.0, 129);
    auto g1 = apply_operator(op1, std::vector<double>(129, 1.0));
    auto x = op1.nodes();
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(g1[i], x[i], 1e-10);
    auto op = DiscretizedOperator::riemann_liouville(0.5, 129);
    auto g = apply_operator(op, std::vector<double>(129, 1.0));
    EXPECT_NEAR(g.back(), 2 / std::sqrt(kPi), 1e-8);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(g[i], 2 * std::sqrt(x[i] / kPi), 1e-8);
}

TEST(Apply, CausalStructure) {
    auto op = DiscretizedOperator::riemann_liouville(0.75, 33);
    const auto& W = op.weights();
    for (Eigen::Index i = 0; i < W.rows(); ++i)
        for (Eigen::Index j = i + 1; j < W.cols(); ++j) EXPECT_EQ(W(i, j), 0.0);
    // order-2 rules give non-negative rows
    auto op2 = DiscretizedOperator::from_kernel(KernelSpec::power(0.25), 33, 2);
    EXPECT_GE(op2.weights().minCoeff(), 0.0);
}

TEST(Monomial, IdentityOnGrid256) {
    for (double a : {0.25, 0.5, 1.0, 1.5}) {
        auto op = DiscretizedOperator::riemann_liouville(a, 257);
        auto x = op.nodes();
        for (int k = 0; k <= 4; ++k) {
            std::vector<double> f;
            for (double t : x) f.push_back(std::pow(t, k));
            auto g = apply_operator(op, f);
            double sup = 0, err = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double want = std::tgamma(k + 1.0) / std::tgamma(k + 1.0 + a) * std::pow(x[i], k + a);
                EXPECT_NEAR(rl_monomial_image(a, k, x[i]), want, 1e-14 * (1 + want));
                sup = std::max(sup, std::fabs(want));
                err = std::max(err, std::fabs(g[i] - want));
            }
            EXPECT_LE(err, 1e-6 * sup) << "alpha=" << a << " k=" << k;
        }
    }
}

TEST(Semigroup, Examples) {
    EXPECT_LE(semigroup_check(0.5, 0.5, {1.0}, 257), 1e-6);
    EXPECT_LE(semigroup_check(1.0, 1.0, {0.0, 1.0}, 257), 1e-10);
    EXPECT_EQ(semigroup_check(0.5, 0.5, {0.0}, 65), 0.0);
}

TEST(ShiftModulus, Examples) {
    auto op = DiscretizedOperator::riemann_liouville(0.5, 257);
    std::vector<double> one(257, 1.0);
    auto z = shift_modulus_check(op, 2, 0.0, one);
    EXPECT_EQ(z.lhs, 0.0);
    EXPECT_TRUE(z.passed);
    auto r = shift_modulus_check(op, 2, 0.25, one);
    EXPECT_NEAR(r.rhs, 2 / std::sqrt(kPi), 1e-8);
    EXPECT_TRUE(r.passed);
    EXPECT_THROW(shift_modulus_check(DiscretizedOperator::from_kernel(KernelSpec::power(0.25, KernelMode::WS), 33), 2,
                                     0.25, std::vector<double>(33, 1.0)),
                 Error);
}

TEST(ShiftModulus, RandomInputs) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    auto op = DiscretizedOperator::from_kernel(KernelSpec::power(0.25), 129);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> f(129);
        for (auto& v : f) v = g(rng);
        for (double p : {1.0, 2.0, double(INFINITY)})
            EXPECT_TRUE(shift_modulus_check(op, p, 0.125, f).passed);
    }
}

TEST(Nets, Rademacher) {
    auto b = net_lower_rademacher(KernelSpec::custom_kernel([](double x) { return 1 / std::sqrt(x); }, 0.5, 0.0), 4);
    EXPECT_NEAR(b.separation, 2.0, 1e-10);
    EXPECT_NEAR(b.bound, 1.0, 1e-10);
    EXPECT_EQ(b.log2_cardinality, 4.0);
    auto one = net_lower_rademacher(KernelSpec::power(0.25), 1);
    EXPECT_NEAR(one.bound, 4.0 / 3.0, 1e-12);
    double prev = one.bound;
    for (std::uint64_t n = 2; n <= 64; n *= 2) {
        double v = net_lower_rademacher(KernelSpec::power(0.25), n).bound;
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(Nets, KernelAtoms) {
    auto b = net_lower_kernel_atoms(KernelSpec::power(0.25), 2, 4);
    EXPECT_NEAR(b.separation, 1.0, 1e-12);
    EXPECT_NEAR(b.bound, 0.5, 1e-12);
    EXPECT_NEAR(b.log2_cardinality, 2.0, 1e-14);
    auto l = net_lower_kernel_atoms_log(KernelSpec::logpower(0.5, 1, 1), 2, 3.0);
    EXPECT_NEAR(l.separation, 0.5, 1e-10);
    EXPECT_THROW(net_lower_kernel_atoms(KernelSpec::power(0.25), 2, 1), Error);
}

TEST(Nets, Means) {
    auto b = net_lower_means(KernelSpec::power(0.25), 2, 4);
    EXPECT_NEAR(b.log2_cardinality, 2.0, 1e-14);
    EXPECT_NEAR(b.separation, std::pow(4.0, -0.25), 1e-12);
    auto c = net_lower_means(KernelSpec::power(0.25), 2, 16);
    EXPECT_NEAR(c.log2_cardinality, 8.0, 1e-14);
    EXPECT_NEAR(c.separation, 0.5 * std::sqrt(0.5), 1e-12);
    EXPECT_THROW(net_lower_means(KernelSpec::power(0.25), 2, 5), Error);
}

TEST(Singular, RiemannLiouvilleHalf) {
    auto s = singular_values(DiscretizedOperator::riemann_liouville(0.5, 256));
    for (std::size_t n = 2; n <= s.size(); ++n) EXPECT_LE(s.nth(n), s.nth(n - 1));
    EXPECT_LE(s.nth(1), 2 / std::sqrt(kPi));
    std::vector<double> xs, ys;
    for (std::size_t n = 8; n <= 32; ++n) {
        xs.push_back(double(n));
        ys.push_back(s.nth(n));
    }
    double p0 = fit_rate_samples(xs, ys, {FitTerms::Power, 1.96}).formula.p0;
    EXPECT_GE(p0, 0.45);
    EXPECT_LE(p0, 0.55);
}

TEST(Singular, GridRefinementStable) {
    auto a = singular_values(DiscretizedOperator::riemann_liouville(1.0, 128));
    auto b = singular_values(DiscretizedOperator::riemann_liouville(1.0, 256));
    for (std::size_t n = 1; n <= 16; ++n) EXPECT_NEAR(a.nth(n), b.nth(n), 0.02 * b.nth(n));
}

TEST(Singular, NetBoundsBelowGreedyImageEntropy) {
    // Greedy entropy of the images of the sign-pattern net, in the grid sup norm,
    // against the certified lower bound at index 2^n - 1.
    auto k = KernelSpec::power(0.25);
    auto op = DiscretizedOperator::from_kernel(k, 129);
    const std::uint64_t n = 4;
    std::vector<Point> imgs;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<double> f;
        for (double x : op.nodes()) {
            std::size_t cell = std::min<std::size_t>(n - 1, std::size_t(x * n));
            f.push_back((mask >> cell & 1u) ? 1.0 : -1.0);
        }
        imgs.push_back(apply_operator(op, f));
    }
    auto cloud = PointCloud::from_points(imgs, double(INFINITY));
    auto e = entropy_numbers(cloud, (1u << n) - 1, EntropyMethod::Greedy);
    auto b = net_lower_rademacher(k, n);
    EXPECT_GE(e.nth((1u << n) - 1), b.bound);
}

TEST(Rieli, Examples) {
    EXPECT_NEAR(rieli_bound(KernelSpec::power(0.25), 2, 4, 1), std::sqrt(2.0) * 0.5, 1e-12);
    EXPECT_LT(rieli_bound(KernelSpec::power(0.25), 2, 1000000, 1), 1e-3);
}

TEST(Rieli, DominatesSpectrumWithFittedConstant) {
    auto s = singular_values(DiscretizedOperator::riemann_liouville(1.0, 256));
    double c = 0;
    for (std::uint64_t n = 1; n <= 32; ++n) c = std::max(c, s.nth(n) / rieli_bound_rl(1.0, 2, n, 1));
    for (std::uint64_t n = 1; n <= 32; ++n) EXPECT_LE(s.nth(n), rieli_bound_rl(1.0, 2, n, c) * (1 + 1e-12));
    EXPECT_LT(c, 2.0);
}

TEST(Rl04, Examples) {
    MonotoneSeq z(std::vector<double>(10, 0.0));
    EXPECT_EQ(rl04_bound(z, {Rl04Variant::Kind::II, 1, 0, 2}, 4).value, 1.0);
    std::vector<double> inv(10);
    for (int k = 1; k <= 10; ++k) inv[k - 1] = 1.0 / k;
    double want = 1;
    for (int k = 1; k <= 4; ++k) want += std::pow(k, -1.5);
    EXPECT_NEAR(rl04_bound(MonotoneSeq(inv), {Rl04Variant::Kind::II, 1, 0, 2}, 4).value, want, 1e-12);
    EXPECT_NEAR(want, 2.67100, 1e-5);
    auto v = rl04_bound(MonotoneSeq(inv), {Rl04Variant::Kind::I, 1, 0, 2}, 3);
    EXPECT_NEAR(v.value, 1.0, 1e-12);
    EXPECT_FALSE(v.truncated);
}
