#include "entlab/error.hpp"
#include "entlab/hull.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace entlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MonotoneSeq harmonic(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 1; k <= n; ++k) v[k - 1] = 1.0 / double(k);
    return MonotoneSeq(v);
}

HullSpec cross(double p) { return HullSpec{{{1, 0}, {0, 1}}, p}; }

// Brute count of k in Z^m with sum |k_i| <= K.
std::uint64_t brute_lattice(std::size_t m, int K) {
    if (m == 0) return 1;
    std::uint64_t c = 0;
    for (int k = -K; k <= K; ++k) c += brute_lattice(m - 1, K - std::abs(k));
    return c;
}

// floor(2^{n+2} sum_{k=2}^n 2^{-k} log2(2^{k+2} a_k / 2^n + 3)) + 2 in long double.
long double m_formula(const std::vector<std::uint64_t>& a) {
    const int n = int(a.size());
    long double s = 0;
    for (int k = 2; k <= n; ++k)
        s += std::ldexp(1.0L, -k) * std::log2(std::ldexp((long double)a[k - 1], k + 2 - n) + 3.0L);
    return std::floor(std::ldexp(s, n + 2)) + 2;
}

} // namespace

TEST(HullSpec, Validation) {
    EXPECT_THROW(HullSpec({}, 2.0).validate(), Error);
    EXPECT_THROW((HullSpec{{{1, 0}, {1}}, 2.0}.validate()), Error);
    EXPECT_NO_THROW(cross(kInf).validate());
}

TEST(Support, EvenAndSublinear) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    HullSpec s{{{1, 2, 0}, {-0.5, 0.3, 1}, {0, 0, 2}, {0.7, -1, 0.1}}, 2.0};
    for (int i = 0; i < 200; ++i) {
        Point u(3), v(3), w(3), mu(3);
        for (int j = 0; j < 3; ++j) {
            u[j] = g(rng);
            v[j] = g(rng);
            w[j] = u[j] + v[j];
            mu[j] = -u[j];
        }
        EXPECT_DOUBLE_EQ(support_function(s, u), support_function(s, mu));
        EXPECT_LE(support_function(s, w), support_function(s, u) + support_function(s, v) + 1e-12);
        Point su = u;
        for (auto& x : su) x *= 2.5;
        EXPECT_NEAR(support_function(s, su), 2.5 * support_function(s, u), 1e-12);
    }
}

TEST(Lattice, CountMatchesBruteForce) {
    for (std::size_t m = 1; m <= 5; ++m)
        for (int K = 0; K <= 6; ++K) EXPECT_EQ(lattice_count(m, std::uint64_t(K)), double(brute_lattice(m, K)));
}

TEST(HullNet, Segment) {
    HullSpec s{{{3, 4}}, 2.0};
    auto net = hull_net(s, 0.5);
    ASSERT_EQ(net.cloud.size(), 5u);
    EXPECT_DOUBLE_EQ(net.delta, 2.5);
    std::vector<double> firsts;
    for (const auto& p : net.cloud.points()) firsts.push_back(p[0]);
    std::sort(firsts.begin(), firsts.end());
    EXPECT_EQ(firsts, (std::vector<double>{-3, -1.5, 0, 1.5, 3}));
}

TEST(HullNet, CrossPolytope) {
    auto coarse = hull_net(cross(2.0), 1.0);
    EXPECT_EQ(coarse.cloud.size(), 5u);
    EXPECT_DOUBLE_EQ(coarse.delta, 2.0);
    auto fine = hull_net(cross(2.0), 0.25);
    EXPECT_EQ(fine.cloud.size(), 41u);
    for (const auto& p : fine.cloud.points()) {
        EXPECT_LE(std::fabs(p[0]) + std::fabs(p[1]), 1.0 + 1e-12);
        EXPECT_NEAR(std::fmod(std::fabs(p[0]) * 4, 1.0), 0.0, 1e-12);
    }
}

TEST(HullNet, MembershipThroughSupportFunction) {
    HullSpec s{{{1, 0.5}, {-0.3, 1}, {0.2, 0.2}}, 2.0};
    auto net = hull_net(s, 0.125);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int i = 0; i < 50; ++i) {
        Point u{g(rng), g(rng)};
        double h = support_function(s, u);
        for (const auto& p : net.cloud.points()) EXPECT_LE(std::fabs(u[0] * p[0] + u[1] * p[1]), h + 1e-12);
    }
}

TEST(HullNet, RefusesBlowUp) {
    HullSpec s = diag_set(harmonic(12), 2.0, 12);
    try {
        hull_net(s, 0.05);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceCap);
    }
}

TEST(HullBounds, Segment) {
    HullSpec s{{{0.6, 0.8}}, 2.0};
    auto b = hull_entropy_bounds(s, 1, 0.1);
    EXPECT_GE(b.lower, 0.0);
    EXPECT_LE(b.lower, b.upper);
    // eps_1 of the segment is |t| = 1; the certified upper bound carries delta
    EXPECT_LE(b.radius, 1.0 + 1e-12);
    EXPECT_LE(b.upper, 1.0 + b.delta + 1e-12);
    EXPECT_LE(b.lower, 1.0);
}

TEST(HullBounds, CrossPolytopeSupNorm) {
    auto b = hull_entropy_bounds(cross(kInf), 1, 0.05);
    EXPECT_LE(b.lower, 1.0);
    EXPECT_GE(b.upper, 1.0);
    EXPECT_DOUBLE_EQ(b.radius, 1.0);
}

TEST(HullBounds, CrossPolytopeFourCentreCover) {
    auto net = hull_net(cross(kInf), 0.05);
    ASSERT_EQ(net.cloud.size(), 841u);
    CoveringResult four;
    four.epsilon = 0.5;
    four.kind = CoverKind::Exact;
    for (const auto& p : net.cloud.points()) ASSERT_EQ(p.size(), 2u);
    for (std::size_t i = 0; i < net.cloud.size(); ++i) {
        const auto& p = net.cloud.point(i);
        if (std::fabs(std::fabs(p[0]) - 0.5) < 1e-12 && std::fabs(std::fabs(p[1]) - 0.5) < 1e-12)
            four.centers.push_back(i);
    }
    ASSERT_EQ(four.centers.size(), 4u);
    four.count = 4;
    EXPECT_TRUE(verify_cover(net.cloud, four));
    EXPECT_LE(packing_lower(net.cloud, 0.5).count, 4u);
    EXPECT_TRUE(verify_cover(net.cloud, greedy_cover(net.cloud, 0.5)));
}

TEST(HullProfileProperty, OrderedAndMonotone) {
    for (double mesh : {0.25, 0.125}) {
        auto prof = hull_entropy_profile(diag_set(harmonic(4), 2.0, 4), 12, mesh);
        for (std::size_t k = 1; k <= 12; ++k) {
            EXPECT_LE(prof.lower(k), prof.upper(k));
            if (k > 1) EXPECT_LE(prof.upper(k), prof.upper(k - 1));
        }
    }
    double prev = kInf;
    for (double mesh : {0.5, 0.25, 0.125, 0.0625}) {
        double d = hull_net(diag_set(harmonic(3), 2.0, 3), mesh).delta;
        EXPECT_LE(d, prev);
        prev = d;
    }
}

TEST(HullProfile, AgreesWithMaterialisedTraversal) {
    auto spec = diag_set(harmonic(3), 2.0, 3);
    auto net = hull_net(spec, 0.2);
    auto t = farthest_point_traversal(net.cloud, 10);
    auto prof = hull_entropy_profile(spec, 10, 0.2);
    // both start from the origin when it is the first net point
    for (std::size_t k = 2; k <= 10; ++k) EXPECT_LE(prof.radius[k - 1], prof.radius[k - 2]);
    EXPECT_NEAR(prof.radius[0], t.radius[0], 1e-12);
}

TEST(DiagSet, Examples) {
    auto one = diag_set(MonotoneSeq({1.0}), 2.0, 1);
    ASSERT_EQ(one.generators.size(), 1u);
    EXPECT_EQ(one.generators[0], (Point{1.0}));
    auto three = diag_set(MonotoneSeq({1, 0.5, 0.25}), 2.0, 3);
    EXPECT_EQ(three.generators[1], (Point{0, 0.5, 0}));
    EXPECT_EQ(three.generators[2], (Point{0, 0, 0.25}));
    EXPECT_THROW(diag_set(MonotoneSeq({1, 0.5}), 2.0, 3), Error);
    auto opt = optimality_sequence(1, 2, 8);
    EXPECT_DOUBLE_EQ(opt.nth(1), 1.0);
    EXPECT_NEAR(opt.nth(5), std::pow(std::log2(6.0), -1) * std::pow(std::log2(std::log2(8.0)), -2), 1e-15);
}

TEST(L02, Examples) {
    EXPECT_EQ(l02_lower(MonotoneSeq(std::vector<double>(20, 0.0)), 2, 2, 1).value, 0.0);
    auto h = harmonic(64);
    EXPECT_DOUBLE_EQ(l02_lower(h, 2, 2, 1).value, 0.25);
    EXPECT_DOUBLE_EQ(l02_lower(h, 2, 3, 1).value, 0.125);
    // first branch at n = 3: 3^{-1/2} (log2 4)^{1/2} / 9
    double branch = std::pow(3.0, -0.5) * std::sqrt(2.0) / 9;
    EXPECT_NEAR(branch, 0.0907, 1e-4);
    EXPECT_DOUBLE_EQ(l02_lower(h, 2, 3, 2).value, 0.25);
    auto tr = l02_lower(harmonic(5), 2, 3, 1);
    EXPECT_TRUE(tr.truncated);
    EXPECT_DOUBLE_EQ(tr.value, 0.2);
}

TEST(L02, NeverAboveCertifiedUpper) {
    for (std::size_t dim : {4, 6}) {
        auto sigma = harmonic(dim);
        auto spec = diag_set(sigma, 2.0, dim);
        auto prof = hull_entropy_profile(spec, 3, 0.2);
        for (std::uint64_t n = 1; n <= 3; ++n)
            EXPECT_LE(l02_lower(sigma, 2, n, 1).value, prof.upper(n) + prof.delta);
    }
}

TEST(SchuettGG, Examples) {
    EXPECT_DOUBLE_EQ(schuett_gg_lower(1, 2, 2, 1), 1.0);
    EXPECT_DOUBLE_EQ(schuett_gg_lower(4, 64, 2, 1), 1.0);
    EXPECT_LT(schuett_gg_lower(1000, 1001, 2, 1), 0.002);
    EXPECT_THROW(schuett_gg_lower(4, 4, 2, 1), Error);
}

TEST(Steinwart, MFormula) {
    auto r = steinwart_upper(harmonic(100), SteinwartParams::with_alphas({1, 2}), 2);
    EXPECT_EQ(r.m, 15.0);
    EXPECT_TRUE(r.m_exact);
    EXPECT_EQ(double(m_formula({1, 2})), 15.0);
    for (const auto& a : std::vector<std::vector<std::uint64_t>>{{1, 5, 9}, {2, 3, 100, 1000}, {1, 2, 3, 4, 5}})
        EXPECT_EQ(steinwart_upper(harmonic(10), SteinwartParams::with_alphas(a), a.size()).m, double(m_formula(a)));
}

TEST(Steinwart, ZeroDataGivesZeroBound) {
    auto r = steinwart_upper(MonotoneSeq(std::vector<double>(10, 0.0)), SteinwartParams::with_alphas({1, 2}), 2);
    EXPECT_EQ(r.bound, 0.0);
    EXPECT_EQ(r.m, 15.0);
}

TEST(SteinwartProperty, HomogeneousAndMonotone) {
    std::vector<double> v(200);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(double(i + 1), -0.6);
    MonotoneSeq d(v);
    std::vector<double> w = v;
    for (auto& x : w) x *= 4.5;
    auto P = SteinwartParams::with_alphas({2, 7, 30});
    P.p = 1.5;
    P.t = 0.8;
    auto a = steinwart_upper(d, P, 3), b = steinwart_upper(MonotoneSeq(w), P, 3);
    EXPECT_NEAR(b.bound, 4.5 * a.bound, 1e-12 * b.bound);
    EXPECT_GE(a.m, 2.0);
    double prev = 0;
    for (std::uint64_t a2 : {8, 20, 100, 1000, 100000}) {
        double m = steinwart_upper(d, SteinwartParams::with_alphas({2, a2, 200000}), 3).m;
        EXPECT_GE(m, prev);
        prev = m;
    }
}

TEST(Steinwart, LogSpaceMatchesBigNumberOracle) {
    std::vector<double> v(64);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / std::sqrt(double(i + 1));
    MonotoneSeq d(v);
    for (std::uint64_t n = 2; n <= 4; ++n) {
        auto sch = steinwart_alpha_schedule(n, 0.75);
        SteinwartParams P;
        P.p = 1.5;
        P.t = 0.7;
        P.log2_alphas = sch.log2_alphas;
        P.alpha_decimal = sch.decimal;
        auto fast = steinwart_upper(d, P, n), exact = steinwart_upper_exact(d, P, n);
        EXPECT_NEAR(fast.bound, exact.bound, 1e-9 * exact.bound);
        EXPECT_EQ(fast.m, exact.m);
    }
}

TEST(Steinwart, MalformedAlphas) {
    EXPECT_THROW(steinwart_upper(harmonic(10), SteinwartParams::with_alphas({2, 2}), 2), Error);
    EXPECT_THROW(steinwart_upper(harmonic(10), SteinwartParams::with_alphas({1, 2, 3}), 2), Error);
    auto P = SteinwartParams::with_alphas({1, 2});
    P.p = 2.5;
    EXPECT_THROW(steinwart_upper(harmonic(10), P, 2), Error);
}

TEST(Tt02, Examples) {
    auto a = tt02_params(2, 1, 1);
    EXPECT_DOUBLE_EQ(a.p_prime, 2);
    EXPECT_DOUBLE_EQ(a.alpha, 0.5);
    EXPECT_DOUBLE_EQ(tt02_params(2, 2.0 / 3.0, 2).alpha, -0.5);
    double prev = kInf;
    for (double s : {1.0, 2.0, 10.0, 1e6}) {
        double v = tt02_params(1.5, 1, s).alpha;
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_NEAR(prev, 1.0 / 3.0 - 1.0, 1e-3);
    EXPECT_THROW(tt02_params(2, 2, 1), Error);
}

TEST(FiniteInequality, Examples) {
    auto s = harmonic(20);
    auto r = finite_inequality_check(s, s, WeightPreset::tt03(4, 2, 0), 20, 1.0);
    EXPECT_DOUBLE_EQ(r.ratio, 1.0);
    auto z = finite_inequality_check(MonotoneSeq(std::vector<double>(20, 0.0)), s, WeightPreset::th03(2), 20, 1.0);
    EXPECT_EQ(z.ratio, 0.0);
    // ENHIL: sup of left-weighted terms over (sup of right-weighted terms + 1).
    const double rs[] = {1.5, 2.0, 3.0}, b = 0.5;
    for (int c = 1; c <= 3; ++c) {
        const double r = rs[c - 1];
        double L = 0, R = 0;
        for (int n = 1; n <= 20; ++n) {
            double lg = std::log2(n + 1.0), llg = std::log2(std::log2(n + 3.0)), x = 1.0 / n;
            double wl = c == 1   ? std::pow(llg, b) * std::pow(lg, 1 / r - 0.5) * std::sqrt(double(n))
                        : c == 2 ? std::pow(lg, b - 1) * std::sqrt(double(n))
                                 : std::pow(lg, b) * std::pow(n, 1 / r);
            double wr = c == 3 ? wl : std::pow(lg, b) * std::pow(n, 1 / r);
            L = std::max(L, wl * x);
            R = std::max(R, wr * x);
        }
        EXPECT_NEAR(finite_inequality_check(s, s, WeightPreset::enhil(c, r, b), 20, 1.0).ratio, L / (R + 1), 1e-14);
    }
    EXPECT_THROW(WeightPreset::enhil(4, 2, 0.5), Error);
    EXPECT_THROW(WeightPreset::enhil(1, 2, 0.5), Error);
}

TEST(CA, Examples) {
    HullSpec pm{{{0.6, 0.8}, {-0.6, -0.8}}, 2.0};
    EXPECT_DOUBLE_EQ(c_A_ratio(pm), 0.5);
    EXPECT_NEAR(c_A_ratio(cross(2.0)), 1 / std::sqrt(2.0), 1e-15);
    HullSpec same{{{1, 1}, {1, 1}}, 2.0};
    EXPECT_TRUE(std::isinf(c_A_ratio(same)));
}
