#include "entlab/seqspace.hpp"

#include "entlab/error.hpp"
#include "entlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entlab {

namespace {

constexpr const char* kMod = "seqspace";

double log2p1(double n) { return std::log2(n + 1.0); }

} // namespace

MonotoneSeq::MonotoneSeq(std::vector<double> values) : v_(std::move(values)) {
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (!std::isfinite(v_[i]) || v_[i] < 0.0)
            fail_validation(kMod, "sequence entry " + std::to_string(i + 1) +
                                      " is negative or not finite");
        if (i > 0 && v_[i] > v_[i - 1])
            fail_validation(kMod, "sequence increases at index " + std::to_string(i + 1));
    }
}

double MonotoneSeq::nth(std::size_t n) const {
    if (n < 1 || n > v_.size())
        fail_validation(kMod, "index " + std::to_string(n) + " outside 1.." +
                                  std::to_string(v_.size()));
    return v_[n - 1];
}

double MonotoneSeq::nth_extended(std::uint64_t n, bool& truncated) const {
    if (v_.empty()) fail_validation(kMod, "empty sequence");
    if (n < 1) fail_validation(kMod, "index 0 is not valid (1-based)");
    if (n > v_.size()) {
        truncated = true;
        return v_.back();
    }
    return v_[n - 1];
}

LorentzParams LorentzParams::finite(double r, double s, double alpha) {
    LorentzParams p{r, s, false, alpha};
    p.validate();
    return p;
}

LorentzParams LorentzParams::sup(double r, double alpha) {
    LorentzParams p{r, 1.0, true, alpha};
    p.validate();
    return p;
}

void LorentzParams::validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) fail_validation(kMod, "r must be a positive real");
    if (!s_infinite && (!(s > 0.0) || !std::isfinite(s)))
        fail_validation(kMod, "s must be positive or INFINITY");
    if (!std::isfinite(alpha)) fail_validation(kMod, "alpha must be finite");
}

void EntropyProfile::validate() const {
    if (breakpoints.empty()) fail_validation(kMod, "profile has no breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        auto [eps, count] = breakpoints[i];
        if (!(eps > 0.0) || !std::isfinite(eps))
            fail_validation(kMod, "profile epsilon must be positive and finite");
        if (count < 1) fail_validation(kMod, "profile count must be >= 1");
        if (i > 0) {
            if (!(eps < breakpoints[i - 1].first))
                fail_validation(kMod, "profile epsilons must be strictly decreasing");
            if (!(count > breakpoints[i - 1].second))
                fail_validation(kMod, "profile counts must be strictly increasing");
        }
    }
}

InequalityRatio make_ratio(double lhs, double rhs) {
    InequalityRatio r{lhs, rhs, 0.0, RatioStatus::Finite};
    if (rhs > 0.0) {
        r.ratio = lhs / rhs;
    } else if (lhs == 0.0) {
        r.status = RatioStatus::ZeroOverZero;
    } else {
        r.ratio = std::numeric_limits<double>::infinity();
        r.status = RatioStatus::Violated;
    }
    return r;
}

double lorentz_functional(const MonotoneSeq& seq, const LorentzParams& params, std::size_t N) {
    params.validate();
    if (N < 1 || N > seq.size())
        fail_validation(kMod, "N = " + std::to_string(N) + " outside 1.." +
                                  std::to_string(seq.size()));
    if (params.s_infinite) {
        double best = 0.0;
        for (std::size_t n = 1; n <= N; ++n) {
            double x = seq[n - 1];
            if (x == 0.0) continue;
            double w = std::pow(log2p1(n), -params.alpha) * std::pow(double(n), 1.0 / params.r);
            best = std::max(best, w * x);
        }
        return best;
    }
    const double s = params.s;
    double sum = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        double x = seq[n - 1];
        if (x == 0.0) continue;
        double w = std::pow(log2p1(n), -params.alpha * s) * std::pow(double(n), s / params.r - 1.0);
        sum += w * std::pow(x, s);
    }
    return std::pow(sum, 1.0 / s);
}

MonotoneSeq dyadic_subsequence(const MonotoneSeq& seq) {
    std::vector<double> out;
    for (std::size_t idx = 1; idx <= seq.size(); idx *= 2) {
        out.push_back(seq[idx - 1]);
        if (idx > seq.size() / 2) break;
    }
    return MonotoneSeq(std::move(out));
}

ProfileValue profile_functional(const EntropyProfile& profile, const LorentzParams& params) {
    profile.validate();
    params.validate();
    const auto& bp = profile.breakpoints;
    // On [eps_{i+1}, eps_i) the count is count_{i+1}.
    auto weight = [&](double H) {
        if (H == 0.0) return 0.0;
        double sexp = params.s_infinite ? 1.0 : params.s;
        return std::pow(std::log2(2.0 + H), -params.alpha * sexp) * std::pow(H, sexp / params.r);
    };
    ProfileValue out;
    out.truncated_at = bp.back().first;
    if (params.s_infinite) {
        double best = 0.0;
        for (std::size_t i = 0; i < bp.size(); ++i) {
            double H_below = std::log2(double(i + 1 < bp.size() ? bp[i + 1].second : bp[i].second));
            double eps = bp[i].first;
            // sup over [eps_{i+1}, eps_i) is approached at eps_i from below
            best = std::max(best, eps * weight(H_below));
        }
        out.value = best;
        return out;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double H = std::log2(double(bp[i + 1].second));
        sum += weight(H) * (std::pow(bp[i].first, params.s) - std::pow(bp[i + 1].first, params.s));
    }
    out.value = sum;
    return out;
}

InequalityRatio lh1_check(const MonotoneSeq& seq, double r, double s, double alpha, double t,
                          std::size_t N) {
    if (!(t > 0.0) || !(t < r) || !std::isfinite(r))
        fail_validation(kMod, "lh1 requires 0 < t < r < infinity");
    if (!(s > 0.0) || !std::isfinite(s)) fail_validation(kMod, "lh1 requires 0 < s < infinity");
    if (N < 1 || N > seq.size()) fail_validation(kMod, "N outside the sequence length");
    double lhs = 0.0, rhs = 0.0, partial = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        double x = seq[n - 1];
        partial += std::pow(x, t);
        double w = std::pow(log2p1(n), alpha) * std::pow(double(n), s / r - 1.0);
        lhs += w * std::pow(partial / double(n), s / t);
        rhs += w * std::pow(x, s);
    }
    return make_ratio(lhs, rhs);
}

InequalityRatio lh2_check(const MonotoneSeq& seq, double r, double alpha, double t, std::size_t N) {
    if (!(t > 0.0) || !(t < r) || !std::isfinite(r))
        fail_validation(kMod, "lh2 requires 0 < t < r < infinity");
    if (N < 1 || N > seq.size()) fail_validation(kMod, "N outside the sequence length");
    double lhs = 0.0, rhs = 0.0, partial = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        double x = seq[n - 1];
        partial += std::pow(x, t);
        double w = std::pow(log2p1(n), alpha) * std::pow(double(n), 1.0 / r);
        lhs = std::max(lhs, w * std::pow(partial / double(n), 1.0 / t));
        rhs = std::max(rhs, w * x);
    }
    return make_ratio(lhs, rhs);
}

double lh2_averaging_constant(double t, double r, double alpha, std::size_t n_max) {
    if (!(t > 0.0) || !(t < r)) fail_validation(kMod, "requires 0 < t < r");
    double sum = 0.0, best = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        double lw = std::pow(log2p1(n), -alpha * t);
        sum += lw * std::pow(double(n), -t / r);
        best = std::max(best, sum / (lw * std::pow(double(n), 1.0 - t / r)));
    }
    best = std::max(best, 1.0 / (1.0 - t / r));
    return std::pow(best, 1.0 / t);
}

double lh1_step_constant(double t, double r, double s, double alpha, std::size_t N) {
    if (!(t > 0.0) || !(t < r)) fail_validation(kMod, "requires 0 < t < r");
    std::vector<double> w(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        w[n] = std::pow(log2p1(n), alpha) * std::pow(double(n), s / r - 1.0);
    double best = 0.0, head = 0.0;
    for (std::size_t m = 1; m <= N; ++m) {
        head += w[m];
        double tail = 0.0;
        for (std::size_t n = m + 1; n <= N; ++n) tail += w[n] * std::pow(double(m) / n, s / t);
        best = std::max(best, (head + tail) / head);
    }
    return best;
}

MonotoneSeq read_sequence_csv(const std::string& path) {
    CsvTable t = read_csv(path);
    if (t.header.size() != 1 || t.header[0] != "value")
        fail_validation(kMod, path + ": expected single column 'value'");
    std::vector<double> v;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        v.push_back(parse_double(t.rows[i].at(0), path + " row " + std::to_string(i + 1)));
    return MonotoneSeq(std::move(v));
}

EntropyProfile read_profile_csv(const std::string& path) {
    CsvTable t = read_csv(path);
    if (t.header.size() != 2 || t.header[0] != "epsilon" || t.header[1] != "count")
        fail_validation(kMod, path + ": expected columns 'epsilon,count'");
    EntropyProfile p;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].size() != 2) fail_validation(kMod, path + ": row with wrong field count");
        std::string ctx = path + " row " + std::to_string(i + 1);
        p.breakpoints.emplace_back(parse_double(t.rows[i][0], ctx), parse_count(t.rows[i][1], ctx));
    }
    p.validate();
    return p;
}

} // namespace entlab
