#include "entlab/metricspace.hpp"

#include "entlab/error.hpp"
#include "entlab/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace entlab {

namespace {

constexpr const char* kMod = "metricspace";

} // namespace

double lp_distance(const Point& a, const Point& b, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    }
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

PointCloud PointCloud::from_points(std::vector<Point> points, double norm_p) {
    if (!(norm_p >= 1.0)) fail_validation(kMod, "norm_p must lie in [1, inf]");
    if (points.empty()) fail_validation(kMod, "empty point cloud");
    std::size_t d = points[0].size();
    if (d == 0) fail_validation(kMod, "points must have dimension >= 1");
    for (const auto& p : points) {
        if (p.size() != d) fail_validation(kMod, "points have unequal dimension");
        for (double x : p)
            if (!std::isfinite(x)) fail_validation(kMod, "non-finite coordinate");
    }
    PointCloud c;
    c.n_ = points.size();
    c.p_ = norm_p;
    c.points_ = std::move(points);
    c.detect_line_order();
    return c;
}

PointCloud PointCloud::from_table(std::vector<double> table, std::size_t n) {
    if (n == 0) fail_validation(kMod, "empty distance table");
    if (table.size() != n * n) fail_validation(kMod, "distance table is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i * n + i] != 0.0) fail_validation(kMod, "distance table diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            double v = table[i * n + j];
            if (!std::isfinite(v) || v < 0.0)
                fail_validation(kMod, "distance table entries must be finite and non-negative");
            if (v != table[j * n + i]) fail_validation(kMod, "distance table is not symmetric");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double dij = table[i * n + j];
            for (std::size_t k = 0; k < n; ++k) {
                double via = dij + table[j * n + k];
                if (table[i * n + k] > via + 1e-12 * std::max(1.0, via))
                    fail_validation(kMod, "triangle inequality fails at (" + std::to_string(i) +
                                              "," + std::to_string(j) + "," +
                                              std::to_string(k) + ")");
            }
        }
    PointCloud c;
    c.n_ = n;
    c.p_ = 0.0;
    c.table_ = std::move(table);
    c.detect_line_order();
    return c;
}

double PointCloud::dist(std::size_t i, std::size_t j) const {
    if (!table_.empty()) return table_[i * n_ + j];
    return lp_distance(points_[i], points_[j], p_);
}

void PointCloud::detect_line_order() {
    line_order_.clear();
    if (table_.empty()) {
        if (dim() != 1) return;
        line_order_.resize(n_);
        std::iota(line_order_.begin(), line_order_.end(), 0);
        std::stable_sort(line_order_.begin(), line_order_.end(),
                         [&](std::size_t a, std::size_t b) { return points_[a][0] < points_[b][0]; });
        return;
    }
    for (std::size_t c = 0; c < n_; ++c) {
        for (std::size_t j = 0; j + 1 <= c; ++j)
            if (table_[c * n_ + j] < table_[c * n_ + j + 1]) return;
        for (std::size_t j = c; j + 1 < n_; ++j)
            if (table_[c * n_ + j + 1] < table_[c * n_ + j]) return;
    }
    line_order_.resize(n_);
    std::iota(line_order_.begin(), line_order_.end(), 0);
}

std::string to_string(CoverKind k) {
    switch (k) {
    case CoverKind::Exact: return "EXACT";
    case CoverKind::UpperGreedy: return "UPPER_GREEDY";
    case CoverKind::LowerPacking: return "LOWER_PACKING";
    }
    return "?";
}

bool verify_cover(const PointCloud& cloud, const CoveringResult& r) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        bool ok = false;
        if (!r.center_points.empty()) {
            for (const auto& c : r.center_points)
                if (lp_distance(cloud.point(i), c, cloud.norm_p()) <= r.epsilon) { ok = true; break; }
        } else {
            for (std::size_t c : r.centers)
                if (cloud.dist(i, c) <= r.epsilon) { ok = true; break; }
        }
        if (!ok) return false;
    }
    return true;
}

namespace {

void check_eps(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        fail_validation(kMod, "epsilon must be a positive finite real");
}

CoveringResult greedy_in_set(const PointCloud& cloud, double epsilon) {
    const std::size_t n = cloud.size();
    std::vector<double> dmin(n, std::numeric_limits<double>::infinity());
    CoveringResult r;
    r.epsilon = epsilon;
    r.kind = CoverKind::UpperGreedy;
    std::size_t next = 0;
    while (true) {
        r.centers.push_back(next);
        double far = -1.0;
        std::size_t far_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dmin[i] = std::min(dmin[i], cloud.dist(i, next));
            if (dmin[i] > far) { far = dmin[i]; far_i = i; }
        }
        if (far <= epsilon) break;
        next = far_i;
    }
    r.count = r.centers.size();
    return r;
}

CoveringResult greedy_from_grid(const PointCloud& cloud, double epsilon, const std::vector<Point>& grid) {
    if (cloud.has_table()) fail_validation(kMod, "grid centres need coordinate points");
    if (grid.empty()) fail_validation(kMod, "empty centre grid");
    const std::size_t n = cloud.size();
    std::vector<char> covered(n, 0);
    std::vector<double> dmin(n, std::numeric_limits<double>::infinity());
    CoveringResult r;
    r.epsilon = epsilon;
    r.kind = CoverKind::UpperGreedy;
    std::size_t target = 0;
    while (true) {
        // among grid points within epsilon of the target, take the one covering most
        std::size_t best = grid.size(), best_gain = 0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            if (lp_distance(cloud.point(target), grid[g], cloud.norm_p()) > epsilon) continue;
            std::size_t gain = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (!covered[i] && lp_distance(cloud.point(i), grid[g], cloud.norm_p()) <= epsilon) ++gain;
            if (gain > best_gain) { best_gain = gain; best = g; }
        }
        if (best == grid.size())
            fail_validation(kMod, "centre grid has no point within epsilon of point " +
                                      std::to_string(target));
        r.centers.push_back(best);
        r.center_points.push_back(grid[best]);
        double far = -1.0;
        std::size_t far_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = lp_distance(cloud.point(i), grid[best], cloud.norm_p());
            if (d <= epsilon) covered[i] = 1;
            dmin[i] = std::min(dmin[i], d);
            if (!covered[i] && dmin[i] > far) { far = dmin[i]; far_i = i; }
        }
        if (far < 0.0) break;
        target = far_i;
    }
    r.count = r.centers.size();
    return r;
}

// Minimum cover when balls are contiguous in line order: sweep from the left,
// always taking the candidate ball that reaches furthest right.
CoveringResult exact_line(const PointCloud& cloud, double epsilon) {
    const auto& ord = cloud.line_order();
    const std::size_t n = ord.size();
    auto d = [&](std::size_t a, std::size_t b) { return cloud.dist(ord[a], ord[b]); };
    auto reach = [&](std::size_t c) {
        std::size_t R = c;
        while (R + 1 < n && d(c, R + 1) <= epsilon) ++R;
        return R;
    };
    CoveringResult r;
    r.epsilon = epsilon;
    r.kind = CoverKind::Exact;
    std::size_t i = 0;
    while (i < n) {
        std::size_t best_c = i, best_R = reach(i);
        for (std::size_t c = i + 1; c < n && d(i, c) <= epsilon; ++c) {
            std::size_t R = reach(c);
            if (R > best_R || (R == best_R && ord[c] < ord[best_c])) { best_R = R; best_c = c; }
        }
        for (std::size_t c = i; c-- > 0 && d(i, c) <= epsilon;) {
            std::size_t R = reach(c);
            if (R > best_R || (R == best_R && ord[c] < ord[best_c])) { best_R = R; best_c = c; }
        }
        r.centers.push_back(ord[best_c]);
        i = best_R + 1;
    }
    std::sort(r.centers.begin(), r.centers.end());
    r.count = r.centers.size();
    return r;
}

struct SetCoverSearch {
    std::size_t n = 0;
    std::uint64_t all = 0;
    std::vector<std::uint64_t> ball;
    std::vector<std::vector<std::size_t>> covering; // centres whose ball contains point i
    std::vector<std::size_t> chosen, best;
    std::size_t best_count = 0;

    void run(std::uint64_t covered) {
        if (covered == all) {
            if (chosen.size() < best_count) {
                best_count = chosen.size();
                best = chosen;
            }
            return;
        }
        std::uint64_t open = all & ~covered;
        int remaining = std::popcount(open);
        int max_gain = 0;
        for (std::size_t c = 0; c < n; ++c) max_gain = std::max(max_gain, std::popcount(ball[c] & open));
        std::size_t lower = (remaining + max_gain - 1) / max_gain;
        if (chosen.size() + lower >= best_count) return;
        // branch on the open point with the fewest candidate centres
        std::size_t pick = n, fewest = n + 1;
        for (std::size_t i = 0; i < n; ++i)
            if ((open >> i) & 1u)
                if (covering[i].size() < fewest) { fewest = covering[i].size(); pick = i; }
        std::vector<std::size_t> cand = covering[pick];
        std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
            return std::popcount(ball[a] & open) > std::popcount(ball[b] & open);
        });
        for (std::size_t c : cand) {
            chosen.push_back(c);
            run(covered | ball[c]);
            chosen.pop_back();
        }
    }
};

} // namespace

CoveringResult greedy_cover(const PointCloud& cloud, double epsilon, const GreedyOptions& opts) {
    check_eps(epsilon);
    if (cloud.size() == 0) fail_validation(kMod, "empty cloud");
    CoveringResult r = opts.policy == CenterPolicy::InSet ? greedy_in_set(cloud, epsilon)
                                                          : greedy_from_grid(cloud, epsilon, opts.grid);
    if (!verify_cover(cloud, r)) fail_numeric(kMod, "greedy cover failed its coverage check");
    return r;
}

CoveringResult exact_cover(const PointCloud& cloud, double epsilon, const ExactOptions& opts) {
    check_eps(epsilon);
    const std::size_t n = cloud.size();
    if (n == 0) fail_validation(kMod, "empty cloud");
    CoveringResult r;
    if (!cloud.line_order().empty()) {
        r = exact_line(cloud, epsilon);
    } else {
        if (n > opts.max_points || n > 64)
            fail_cap(kMod, "exact cover refuses " + std::to_string(n) + " points (cap " +
                               std::to_string(std::min<std::size_t>(opts.max_points, 64)) + ")");
        SetCoverSearch s;
        s.n = n;
        s.all = n == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
        s.ball.assign(n, 0);
        s.covering.assign(n, {});
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t i = 0; i < n; ++i)
                if (cloud.dist(c, i) <= epsilon) {
                    s.ball[c] |= std::uint64_t(1) << i;
                    s.covering[i].push_back(c);
                }
        CoveringResult g = greedy_in_set(cloud, epsilon);
        s.best = g.centers;
        s.best_count = g.count;
        s.run(0);
        r.epsilon = epsilon;
        r.centers = s.best;
        std::sort(r.centers.begin(), r.centers.end());
        r.count = r.centers.size();
    }
    r.kind = CoverKind::Exact;
    if (!verify_cover(cloud, r)) fail_numeric(kMod, "exact cover failed its coverage check");
    return r;
}

CoveringResult packing_lower(const PointCloud& cloud, double epsilon) {
    check_eps(epsilon);
    CoveringResult r;
    r.epsilon = epsilon;
    r.kind = CoverKind::LowerPacking;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        bool separated = true;
        for (std::size_t c : r.centers)
            if (cloud.dist(i, c) <= 2.0 * epsilon) { separated = false; break; }
        if (separated) r.centers.push_back(i);
    }
    r.count = r.centers.size();
    return r;
}

Traversal farthest_point_traversal(const PointCloud& cloud, std::size_t k_max) {
    const std::size_t n = cloud.size();
    Traversal t;
    std::vector<double> dmin(n, std::numeric_limits<double>::infinity());
    std::size_t next = 0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        t.order.push_back(next);
        double far = 0.0;
        std::size_t far_i = next;
        for (std::size_t i = 0; i < n; ++i) {
            dmin[i] = std::min(dmin[i], cloud.dist(i, next));
            if (dmin[i] > far) { far = dmin[i]; far_i = i; }
        }
        t.radius.push_back(far);
        if (far == 0.0) {
            t.radius.resize(k_max, 0.0);
            break;
        }
        next = far_i;
    }
    return t;
}

MonotoneSeq entropy_numbers(const PointCloud& cloud, std::size_t n_max, EntropyMethod method,
                            const ExactOptions& opts) {
    if (n_max < 1) fail_validation(kMod, "n_max must be >= 1");
    if (cloud.size() == 0) fail_validation(kMod, "empty cloud");
    if (method == EntropyMethod::Greedy)
        return MonotoneSeq(farthest_point_traversal(cloud, n_max).radius);

    if (cloud.line_order().empty() && cloud.size() > opts.max_points)
        fail_cap(kMod, "exact entropy numbers refuse " + std::to_string(cloud.size()) + " points");
    const std::size_t n = cloud.size();
    std::vector<double> radii;
    radii.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) radii.push_back(cloud.dist(i, j));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    radii.erase(std::remove(radii.begin(), radii.end(), 0.0), radii.end());

    auto count_at = [&](double eps) { return exact_cover(cloud, eps, opts).count; };
    std::vector<double> out(n_max, 0.0);
    std::size_t hi_prev = radii.size(); // eps_n is non-increasing in n
    for (std::size_t k = 1; k <= n_max; ++k) {
        if (k >= n || radii.empty()) break; // every point its own centre
        // least radius index with count <= k, searched in [0, hi_prev)
        std::size_t lo = 0, hi = std::min(hi_prev, radii.size() - 1);
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (count_at(radii[mid]) <= k) hi = mid; else lo = mid + 1;
        }
        out[k - 1] = radii[lo];
        hi_prev = lo + 1;
    }
    return MonotoneSeq(std::move(out));
}

double interval_entropy_under_phi(const std::function<double(double)>& phi, std::size_t n) {
    if (n < 1) fail_validation(kMod, "n must be >= 1");
    return phi(1.0 / (2.0 * double(n)));
}

PointCloud read_points_csv(const std::string& path, double norm_p) {
    CsvTable t = read_csv(path);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].size() != t.header.size())
            fail_validation(kMod, path + ": row " + std::to_string(i + 1) + " has wrong field count");
        Point p;
        for (const auto& f : t.rows[i]) p.push_back(parse_double(f, path + " row " + std::to_string(i + 1)));
        pts.push_back(std::move(p));
    }
    return PointCloud::from_points(std::move(pts), norm_p);
}

PointCloud read_table_csv(const std::string& path) {
    CsvTable t = read_csv(path, false);
    std::size_t n = t.rows.size();
    std::vector<double> table;
    for (std::size_t i = 0; i < n; ++i) {
        if (t.rows[i].size() != n) fail_validation(kMod, path + ": table is not square");
        for (const auto& f : t.rows[i]) table.push_back(parse_double(f, path));
    }
    return PointCloud::from_table(std::move(table), n);
}

} // namespace entlab
