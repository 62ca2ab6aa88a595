#pragma once

#include "entlab/metricspace.hpp"
#include "entlab/seqspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace entlab {

// Finite generator set A in R^d; the hull is aco(A) = {sum a_i t_i : sum |a_i| <= 1}
// measured in the l_p norm given by ambient_p (infinity allowed).
struct HullSpec {
    std::vector<Point> generators;
    double ambient_p = 2.0;

    void validate() const;
    std::size_t dim() const { return generators.empty() ? 0 : generators[0].size(); }
    double max_generator_norm() const;
};

// h(u) = max_i |<u, t_i>|.
double support_function(const HullSpec& spec, const Point& u);

PointCloud generator_cloud(const HullSpec& spec);

// Number of integer vectors k in Z^m with sum |k_i| <= K.
double lattice_count(std::size_t m, std::uint64_t K);

struct HullNet {
    PointCloud cloud;
    double delta = 0.0; // Hausdorff distance bound between aco(A) and the net
    std::uint64_t budget = 0; // K: coefficients are k_i * mesh with sum |k_i| <= K
};

// Materialised net; refused above 10^6 points.
HullNet hull_net(const HullSpec& spec, double mesh);

// Farthest-point traversal of the net started at the origin, streamed so the
// net is never stored. radius[k-1] is the covering radius of the first k
// centres. Since the net lies inside aco(A), k+1 points at mutual distance
// >= radius[k-1] give eps_k(aco A) >= radius[k-1]/2, and the k centres give
// eps_k(aco A) <= radius[k-1] + delta.
struct HullProfile {
    std::vector<double> radius;
    double delta = 0.0;
    double mesh = 0.0;
    std::uint64_t net_size = 0;

    double lower(std::size_t k) const { return 0.5 * radius.at(k - 1); }
    double upper(std::size_t k) const { return radius.at(k - 1) + delta; }
};

HullProfile hull_entropy_profile(const HullSpec& spec, std::size_t n_max, double mesh);

struct HullBounds {
    double lower = 0.0;
    double upper = 0.0;
    double delta = 0.0;
    double radius = 0.0;
};

HullBounds hull_entropy_bounds(const HullSpec& spec, std::size_t n, double mesh);

// Generators sigma_k u_k, k <= dim, in l_p^dim.
HullSpec diag_set(const MonotoneSeq& sigma, double p, std::size_t dim);

// (log2(k+1))^{-1/r} (log2 log2(k+3))^{-gamma}, k = 1..length.
MonotoneSeq optimality_sequence(double r, double gamma, std::size_t length);

struct FlaggedValue {
    double value = 0.0;
    bool truncated = false; // an index beyond the data was read as the last value
};

// c max{ n^{-1/p'} (log2(n+1))^{1/p'} sigma_{n^2}, sigma_{2^n} }.
FlaggedValue l02_lower(const MonotoneSeq& sigma, double p, std::uint64_t n, double c);

// c (log2(m/n)/n)^{1/p'}.
double schuett_gg_lower(std::uint64_t n, std::uint64_t m, double p, double c);

struct SteinwartParams {
    double p = 2.0;
    double t = 1.0;
    double c_t = 1.0;
    double tau_p = 1.0;
    // log2 of alpha_1 < ... < alpha_n. alpha_decimal, when given, holds the
    // exact integers and is what the high-precision evaluator reads.
    std::vector<double> log2_alphas;
    std::vector<std::string> alpha_decimal;

    static SteinwartParams with_alphas(const std::vector<std::uint64_t>& alphas);
    void validate(std::size_t n) const;
};

// alpha_k = floor(2^{n 2^{a(k-1)}}), k = 1..n.
struct AlphaSchedule {
    std::vector<double> log2_alphas;
    std::vector<std::string> decimal;
};
AlphaSchedule steinwart_alpha_schedule(std::uint64_t n, double a);

struct SteinwartResult {
    double m = 0.0;      // exact while m_exact
    double log2_m = 0.0;
    bool m_exact = true; // m < 2^53
    double bound = 0.0;
    double first_term = 0.0;
    double second_term = 0.0;
    bool truncated = false;
};

SteinwartResult steinwart_upper(const MonotoneSeq& entropy_data, const SteinwartParams& params,
                                std::uint64_t n);

// Same quantities with big integers and 100-digit floats; needs alpha_decimal.
SteinwartResult steinwart_upper_exact(const MonotoneSeq& entropy_data, const SteinwartParams& params,
                                      std::uint64_t n);

struct Tt02Params {
    double p_prime = 0.0;
    double alpha = 0.0;
};
Tt02Params tt02_params(double p, double r, double s);

struct WeightPreset {
    enum class Kind { TT03, TH03, ENHIL } kind = Kind::TT03;
    double r = 2.0;
    double s = 1.0;
    bool s_infinite = false; // TT03 sup form
    double alpha = 0.0;
    int enhil_case = 1; // 1, 2 or 3
    double beta = 0.0;

    static WeightPreset tt03(double r, double s, double alpha);
    static WeightPreset tt03_sup(double r, double alpha);
    static WeightPreset th03(double r);
    static WeightPreset enhil(int enhil_case, double r, double beta);
    void validate() const;
};

// Weighted lhs over weighted rhs (c_A enters TT03 and TH03). Zero over zero
// reads as 0.
InequalityRatio finite_inequality_check(const MonotoneSeq& lhs, const MonotoneSeq& rhs,
                                        const WeightPreset& weights, std::size_t N, double c_A);

// sup ||t|| / eps_1(A) with the single centre taken from A; +inf when eps_1 = 0.
double c_A_ratio(const HullSpec& spec);

HullSpec read_generators_csv(const std::string& path, double ambient_p);

} // namespace entlab
