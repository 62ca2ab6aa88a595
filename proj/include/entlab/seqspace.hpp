#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace entlab {

// Finite non-increasing sequence of non-negative reals. Indexing through nth()
// is 1-based to match the usual e_n / sigma_n notation.
class MonotoneSeq {
public:
    MonotoneSeq() = default;
    explicit MonotoneSeq(std::vector<double> values);

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    double operator[](std::size_t i) const { return v_[i]; }
    double nth(std::size_t n) const;
    // Out-of-range indices return the last value and set `truncated`.
    double nth_extended(std::uint64_t n, bool& truncated) const;
    const std::vector<double>& values() const { return v_; }

private:
    std::vector<double> v_;
};

struct LorentzParams {
    double r = 1.0;
    double s = 1.0;          // ignored when s_infinite
    bool s_infinite = false;
    double alpha = 0.0;

    static LorentzParams finite(double r, double s, double alpha);
    static LorentzParams sup(double r, double alpha);
    void validate() const;
};

// Right-continuous step profile eps -> N(A, eps). Breakpoints are stored with
// eps strictly decreasing and counts strictly increasing.
struct EntropyProfile {
    std::vector<std::pair<double, std::uint64_t>> breakpoints;
    void validate() const;
};

struct ProfileValue {
    double value = 0.0;
    double truncated_at = 0.0; // smallest breakpoint; the sum stops there
};

enum class RatioStatus { Finite, ZeroOverZero, Violated };

struct InequalityRatio {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    RatioStatus status = RatioStatus::Finite;
};

InequalityRatio make_ratio(double lhs, double rhs);

double lorentz_functional(const MonotoneSeq& seq, const LorentzParams& params, std::size_t N);
MonotoneSeq dyadic_subsequence(const MonotoneSeq& seq);
ProfileValue profile_functional(const EntropyProfile& profile, const LorentzParams& params);

InequalityRatio lh1_check(const MonotoneSeq& seq, double r, double s, double alpha, double t,
                          std::size_t N);
InequalityRatio lh2_check(const MonotoneSeq& seq, double r, double alpha, double t, std::size_t N);

// Constant from the averaging argument behind lh2_check:
// sup_n sum_{k<=n} (log2(k+1))^{-alpha t} k^{-t/r} / ((log2(n+1))^{-alpha t} n^{1-t/r}),
// enumerated up to n_max and combined with the n -> infinity limit 1/(1-t/r).
// Returned already raised to 1/t, so lh2 ratios are bounded by it.
double lh2_averaging_constant(double t, double r, double alpha, std::size_t n_max);

// Largest lh1 ratio over the step sequences 1_{[1,m]}, m <= N. For s = t these
// are the extreme rays of the monotone cone and the value is the sharp constant.
double lh1_step_constant(double t, double r, double s, double alpha, std::size_t N);

MonotoneSeq read_sequence_csv(const std::string& path);
EntropyProfile read_profile_csv(const std::string& path);

} // namespace entlab
