#include "entlab/rates.hpp"

#include "entlab/error.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace entlab {

namespace {
constexpr const char* kMod = "rates";
}

double eval_rate(const RateFormula& f, double n) {
    if (!(n >= 1.0)) fail_validation(kMod, "eval_rate needs n >= 1");
    double v = f.C * std::pow(n, -f.p0);
    if (f.q0 != 0.0) v *= std::pow(std::log2(n + 1.0), -f.q0);
    if (f.r0 != 0.0) v *= std::pow(std::log2(std::log2(n + 3.0)), -f.r0);
    return v;
}

RateFit fit_rate_samples(const std::vector<double>& n, const std::vector<double>& value,
                         const FitOptions& opts) {
    const int k = opts.terms == FitTerms::Power ? 2 : opts.terms == FitTerms::PowerLog ? 3 : 4;
    const std::size_t m = n.size();
    if (value.size() != m) fail_validation(kMod, "sample size mismatch");
    if (m < std::size_t(k + 2))
        fail_validation(kMod, "need at least " + std::to_string(k + 2) + " samples, got " +
                                  std::to_string(m));
    Eigen::MatrixXd X(m, k);
    Eigen::VectorXd y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(value[i] > 0.0) || !std::isfinite(value[i]))
            fail_numeric(kMod, "non-positive entry at n = " + std::to_string(n[i]));
        X(i, 0) = 1.0;
        X(i, 1) = -std::log(n[i]);
        if (k > 2) X(i, 2) = -std::log(std::log2(n[i] + 1.0));
        if (k > 3) X(i, 3) = -std::log(std::log2(std::log2(n[i] + 3.0)));
        y(i) = std::log(value[i]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd beta = svd.solve(y);
    const auto& sv = svd.singularValues();
    RateFit out;
    out.samples = m;
    out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    out.formula.C = std::exp(beta(0));
    out.formula.p0 = beta(1);
    out.formula.q0 = k > 2 ? beta(2) : 0.0;
    out.formula.r0 = k > 3 ? beta(3) : 0.0;
    Eigen::VectorXd res = y - X * beta;
    out.residual = std::sqrt(res.squaredNorm() / double(m));
    // (X^T X)^{-1} = V diag(1/s^2) V^T
    double sigma2 = res.squaredNorm() / double(m - k);
    Eigen::MatrixXd V = svd.matrixV();
    for (int j = 1; j < k; ++j) {
        double var = 0.0;
        for (int c = 0; c < k; ++c) var += V(j, c) * V(j, c) / (sv(c) * sv(c));
        out.half_width[j - 1] = opts.confidence_z * std::sqrt(sigma2 * var);
    }
    return out;
}

RateFit fit_rate(const MonotoneSeq& seq, std::uint64_t n_min, std::uint64_t n_max,
                 const FitOptions& opts) {
    if (n_min < 2) fail_validation(kMod, "n_min must be >= 2");
    if (n_max > seq.size()) fail_validation(kMod, "n_max exceeds the sequence length");
    if (n_max < n_min) fail_validation(kMod, "n_max < n_min");
    std::vector<double> ns, vs;
    for (std::uint64_t p = 1; p <= n_max; p *= 2) {
        if (p < n_min) continue;
        ns.push_back(double(p));
        vs.push_back(seq[p - 1]);
    }
    if (ns.size() < 6)
        fail_validation(kMod, "need at least 6 dyadic samples in [n_min, n_max], got " + std::to_string(ns.size()));
    return fit_rate_samples(ns, vs, opts);
}

} // namespace entlab
