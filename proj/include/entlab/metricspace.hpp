#pragma once

#include "entlab/seqspace.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace entlab {

using Point = std::vector<double>;

// Finite metric space: points of R^d under an l_p norm, or an explicit
// (pseudo-)distance table that replaces the norm.
class PointCloud {
public:
    static PointCloud from_points(std::vector<Point> points, double norm_p);
    static PointCloud from_table(std::vector<double> table, std::size_t n);

    std::size_t size() const { return n_; }
    bool has_table() const { return !table_.empty(); }
    std::size_t dim() const { return has_table() ? 0 : points_.empty() ? 0 : points_[0].size(); }
    double norm_p() const { return p_; }
    const Point& point(std::size_t i) const { return points_.at(i); }
    const std::vector<Point>& points() const { return points_; }
    double dist(std::size_t i, std::size_t j) const;
    // Index order in which every closed ball is a contiguous range; empty when
    // no such order was detected (1-D data sorted, or row-unimodal tables).
    const std::vector<std::size_t>& line_order() const { return line_order_; }

private:
    std::size_t n_ = 0;
    double p_ = 2.0;
    std::vector<Point> points_;
    std::vector<double> table_;
    std::vector<std::size_t> line_order_;

    void detect_line_order();
};

double lp_distance(const Point& a, const Point& b, double p);

enum class CoverKind { Exact, UpperGreedy, LowerPacking };
std::string to_string(CoverKind k);

struct CoveringResult {
    double epsilon = 0.0;
    std::size_t count = 0;
    std::vector<std::size_t> centers;   // indices into the cloud (or into the grid)
    std::vector<Point> center_points;   // filled for grid-centre covers
    CoverKind kind = CoverKind::Exact;
};

enum class CenterPolicy { InSet, FromGrid };

struct GreedyOptions {
    CenterPolicy policy = CenterPolicy::InSet;
    std::vector<Point> grid; // candidate centres for FromGrid
};

CoveringResult greedy_cover(const PointCloud& cloud, double epsilon, const GreedyOptions& opts = {});

struct ExactOptions {
    std::size_t max_points = 25; // branch-and-bound cap; line-ordered clouds are exempt
};

CoveringResult exact_cover(const PointCloud& cloud, double epsilon, const ExactOptions& opts = {});
CoveringResult packing_lower(const PointCloud& cloud, double epsilon);

// Independent check that every point lies within epsilon of a centre.
bool verify_cover(const PointCloud& cloud, const CoveringResult& r);

// Farthest-point traversal from index 0; radius[k-1] is the covering radius of
// the first k centres, order holds the centre indices.
struct Traversal {
    std::vector<std::size_t> order;
    std::vector<double> radius;
};
Traversal farthest_point_traversal(const PointCloud& cloud, std::size_t k_max);

enum class EntropyMethod { Exact, Greedy };

MonotoneSeq entropy_numbers(const PointCloud& cloud, std::size_t n_max, EntropyMethod method,
                            const ExactOptions& opts = {});

double interval_entropy_under_phi(const std::function<double(double)>& phi, std::size_t n);

PointCloud read_points_csv(const std::string& path, double norm_p);
PointCloud read_table_csv(const std::string& path);

} // namespace entlab
