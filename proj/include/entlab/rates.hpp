#pragma once

#include "entlab/seqspace.hpp"

#include <array>
#include <cstdint>

namespace entlab {

// C * n^{-p0} * (log2(n+1))^{-q0} * (log2 log2(n+3))^{-r0}; positive exponents mean decay.
struct RateFormula {
    double C = 1.0;
    double p0 = 0.0;
    double q0 = 0.0;
    double r0 = 0.0;

    // Exponents as they appear when the rate is printed as n^{a}(log n)^{b}(loglog n)^{c}.
    std::array<double, 3> printed_exponents() const { return {-p0, -q0, -r0}; }
};

double eval_rate(const RateFormula& f, double n);

enum class FitTerms { Power, PowerLog, PowerLogLogLog };

struct FitOptions {
    FitTerms terms = FitTerms::PowerLog;
    double confidence_z = 1.96;
};

struct RateFit {
    RateFormula formula;
    double residual = 0.0;       // RMS of log residuals on the samples
    double condition = 0.0;      // 2-norm condition number of the design matrix
    std::array<double, 3> half_width{0.0, 0.0, 0.0}; // CI half-widths for p0, q0, r0
    std::size_t samples = 0;
};

// Least squares on log a_n at n = 2^j within [n_min, n_max].
RateFit fit_rate(const MonotoneSeq& seq, std::uint64_t n_min, std::uint64_t n_max,
                 const FitOptions& opts = {});

// Same fit on arbitrary (n, value) samples; used for sequences that are not
// materialised index by index.
RateFit fit_rate_samples(const std::vector<double>& n, const std::vector<double>& value,
                         const FitOptions& opts = {});

} // namespace entlab
