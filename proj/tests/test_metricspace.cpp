#include "entlab/error.hpp"
#include "entlab/metricspace.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace entlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PointCloud line(std::vector<double> xs) {
    std::vector<Point> pts;
    for (double x : xs) pts.push_back({x});
    return PointCloud::from_points(pts, 2.0);
}

PointCloud uniform_grid(std::size_t m) {
    std::vector<double> xs(m);
    for (std::size_t i = 0; i < m; ++i) xs[i] = double(i) / double(m - 1);
    return line(xs);
}

// Smallest number of in-set centres covering at radius eps, by subset enumeration.
std::size_t brute_cover(const PointCloud& c, double eps) {
    const std::size_t n = c.size();
    std::size_t best = n;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::size_t k = std::size_t(__builtin_popcount(mask));
        if (k >= best) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            bool hit = false;
            for (std::size_t j = 0; j < n; ++j)
                if ((mask >> j & 1u) && c.dist(i, j) <= eps) { hit = true; break; }
            ok = hit;
        }
        if (ok) best = k;
    }
    return best;
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t d, double p) {
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<Point> pts(n, Point(d));
    for (auto& q : pts)
        for (auto& x : q) x = u(rng);
    return PointCloud::from_points(pts, p);
}

} // namespace

TEST(PointCloud, DistancesAndValidation) {
    auto c = PointCloud::from_points({{0, 0}, {3, 4}}, 2.0);
    EXPECT_DOUBLE_EQ(c.dist(0, 1), 5.0);
    EXPECT_DOUBLE_EQ(lp_distance({0, 0}, {3, 4}, 1.0), 7.0);
    EXPECT_DOUBLE_EQ(lp_distance({0, 0}, {3, 4}, kInf), 4.0);
    EXPECT_THROW(PointCloud::from_points({{0, 0}, {1}}, 2.0), Error);
    EXPECT_THROW(PointCloud::from_table({0, 1, 2, 0}, 2), Error);          // asymmetric
    EXPECT_THROW(PointCloud::from_table({0, 1, 5, 1, 0, 1, 5, 1, 0}, 3), Error); // triangle
    EXPECT_NO_THROW(PointCloud::from_table({0, 0, 0, 0}, 2));              // pseudo-metric
}

TEST(Greedy, Examples) {
    auto c = line({0, 0.3, 0.6, 1.0});
    auto r = greedy_cover(c, 2.0);
    EXPECT_EQ(r.count, 1u);
    auto g = greedy_cover(c, 0.35);
    EXPECT_EQ(g.count, 3u);
    EXPECT_EQ(g.centers, (std::vector<std::size_t>{0, 3, 2}));
    EXPECT_TRUE(verify_cover(c, g));
    EXPECT_EQ(g.kind, CoverKind::UpperGreedy);
}

TEST(Greedy, UniformGridQuarterRadius) {
    // The farthest-point rule starts at 0 and then takes 1.0, leaving the
    // middle third uncovered: three centres. The optimum is two.
    auto c = uniform_grid(1001);
    auto g = greedy_cover(c, 0.25);
    EXPECT_TRUE(verify_cover(c, g));
    EXPECT_EQ(g.count, 3u);
    EXPECT_EQ(exact_cover(c, 0.25).count, 2u);
    EXPECT_EQ(std::size_t(std::ceil(1.0 / (2 * 0.25))), 2u);
}

TEST(Greedy, GridCentres) {
    auto c = line({0, 0.3, 0.6, 1.0});
    GreedyOptions o{CenterPolicy::FromGrid, {{0.15}, {0.8}}};
    auto g = greedy_cover(c, 0.21, o);
    EXPECT_EQ(g.count, 2u);
    EXPECT_TRUE(verify_cover(c, g));
    EXPECT_EQ(g.center_points.size(), 2u);
    EXPECT_THROW(greedy_cover(c, 0.1, o), Error); // 0.3 and 0.6 are out of reach
}

TEST(Exact, Examples) {
    EXPECT_EQ(exact_cover(line({0.4}), 0.01).count, 1u);
    auto c = line({0, 0.3, 0.6, 1.0});
    auto e = exact_cover(c, 0.35);
    EXPECT_EQ(e.count, 2u);
    EXPECT_TRUE(verify_cover(c, e));
    auto sq = PointCloud::from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, kInf);
    EXPECT_EQ(exact_cover(sq, 0.4).count, 4u);
}

TEST(Exact, CapRefusesLargeUnorderedClouds) {
    std::mt19937_64 rng(1);
    auto c = random_cloud(rng, 26, 2, 2.0);
    try {
        exact_cover(c, 0.1);
        FAIL() << "expected a cap error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceCap);
    }
}

TEST(Packing, Examples) {
    EXPECT_EQ(packing_lower(line({0.2}), 0.5).count, 1u);
    auto c = line({0, 0.3, 0.6, 1.0});
    EXPECT_EQ(packing_lower(c, 0.1).count, 4u);
    auto p = packing_lower(c, 0.35);
    EXPECT_GE(p.count, 1u);
    EXPECT_LE(p.count, 2u);
    for (std::size_t i = 0; i < p.centers.size(); ++i)
        for (std::size_t j = i + 1; j < p.centers.size(); ++j)
            EXPECT_GT(c.dist(p.centers[i], p.centers[j]), 0.7);
}

TEST(CoverProperty, OrderingAgainstBruteForce) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> nd(2, 12), dd(1, 4), pd(0, 2);
    const double ps[] = {1.0, 2.0, kInf};
    for (int trial = 0; trial < 150; ++trial) {
        auto c = random_cloud(rng, std::size_t(nd(rng)), std::size_t(dd(rng)), ps[pd(rng)]);
        std::uniform_real_distribution<double> ed(0.05, 0.8);
        double eps = ed(rng);
        auto pk = packing_lower(c, eps), ex = exact_cover(c, eps), gr = greedy_cover(c, eps);
        EXPECT_EQ(ex.count, brute_cover(c, eps));
        EXPECT_LE(pk.count, ex.count);
        EXPECT_LE(ex.count, gr.count);
        EXPECT_TRUE(verify_cover(c, ex));
        EXPECT_TRUE(verify_cover(c, gr));
    }
}

TEST(CoverProperty, CountNonIncreasingInEps) {
    std::mt19937_64 rng(5);
    auto c = random_cloud(rng, 14, 2, 2.0);
    std::size_t prev = c.size() + 1;
    for (double eps = 0.02; eps < 1.5; eps += 0.02) {
        std::size_t e = exact_cover(c, eps).count;
        EXPECT_LE(e, prev);
        prev = e;
        EXPECT_GE(greedy_cover(c, eps).count, e);
    }
}

TEST(CoverProperty, InSetAtTwiceRadiusBeatsAmbientCover) {
    // Ambient cover of the grid with centres 0.125, 0.375, ... at eps = 0.125
    // uses 4 balls; in-set centres at 0.25 need no more.
    auto c = uniform_grid(101);
    std::size_t ambient = 4;
    EXPECT_LE(exact_cover(c, 0.25).count, ambient);
}

TEST(Entropy, GridValues) {
    auto c = uniform_grid(1001);
    auto e = entropy_numbers(c, 10, EntropyMethod::Exact);
    EXPECT_DOUBLE_EQ(e.nth(1), 0.5);
    EXPECT_DOUBLE_EQ(e.nth(2), 0.25);
    for (std::size_t n = 1; n <= 10; ++n) EXPECT_NEAR(e.nth(n), 1.0 / (2.0 * n), 1e-3 + 1e-12);
    auto g = entropy_numbers(c, 10, EntropyMethod::Greedy);
    for (std::size_t n = 1; n <= 10; ++n) EXPECT_GE(g.nth(n), e.nth(n) - 1e-15);
}

TEST(Entropy, IdenticalPoints) {
    auto c = line({0.3, 0.3});
    auto e = entropy_numbers(c, 3, EntropyMethod::Exact);
    for (double x : e.values()) EXPECT_EQ(x, 0.0);
}

TEST(Entropy, NonIncreasingAndMatchesBruteInversion) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_cloud(rng, 9, 2, 2.0);
        auto e = entropy_numbers(c, 6, EntropyMethod::Exact);
        // brute: smallest pairwise distance (or 0) with brute_cover <= n
        std::vector<double> cand{0.0};
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) cand.push_back(c.dist(i, j));
        std::sort(cand.begin(), cand.end());
        for (std::size_t n = 1; n <= 6; ++n) {
            double want = 0;
            for (double d : cand)
                if (brute_cover(c, d) <= n) { want = d; break; }
            EXPECT_DOUBLE_EQ(e.nth(n), want);
            if (n > 1) EXPECT_LE(e.nth(n), e.nth(n - 1));
        }
    }
}

TEST(Entropy, DyadicReadingGivesDyadicEntropy) {
    auto c = uniform_grid(1001);
    auto e = entropy_numbers(c, 16, EntropyMethod::Exact);
    auto d = dyadic_subsequence(e);
    ASSERT_EQ(d.size(), 5u);
    for (std::size_t j = 0; j < d.size(); ++j) EXPECT_EQ(d[j], e.nth(std::size_t(1) << j));
}

TEST(Traversal, RadiiNonIncreasing) {
    std::mt19937_64 rng(4);
    auto c = random_cloud(rng, 60, 3, 1.0);
    auto t = farthest_point_traversal(c, 60);
    EXPECT_EQ(t.order.front(), 0u);
    for (std::size_t k = 1; k < t.radius.size(); ++k) EXPECT_LE(t.radius[k], t.radius[k - 1]);
    EXPECT_EQ(t.radius.back(), 0.0);
}

TEST(IntervalPhi, Examples) {
    EXPECT_DOUBLE_EQ(interval_entropy_under_phi([](double u) { return u; }, 2), 0.25);
    EXPECT_NEAR(interval_entropy_under_phi([](double u) { return std::pow(u, 0.25); }, 8), 0.5, 1e-15);
    EXPECT_EQ(interval_entropy_under_phi([](double) { return 0.0; }, 5), 0.0);
}
