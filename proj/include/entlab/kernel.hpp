#pragma once

#include "entlab/metricspace.hpp"
#include "entlab/rates.hpp"

#include <functional>
#include <string>
#include <vector>

namespace entlab {

enum class KernelFamily { Power, LogPower, DoubleLog, Custom };
enum class KernelMode { WS, VO };

// k(x) on (0,1]:
//   Power      x^{-tau}
//   LogPower   x^{-tau} (c0 - ln x)^{-beta}
//   DoubleLog  x^{-tau} (c0 - ln x)^{-beta} (c0 + ln(c0 - ln x))^{-gamma}
//   Custom     user function; tau and log_exponent describe x^{-tau} l(1/x) with
//              l(y) ~ (ln y)^{log_exponent}, used only for rate predictions.
// Logarithms in this module are natural.
struct KernelSpec {
    KernelFamily family = KernelFamily::Power;
    KernelMode mode = KernelMode::VO;
    double tau = 0.25;
    double beta = 0.0;
    double gamma = 0.0;
    double c0 = 1.0;
    double log_exponent = 0.0;
    std::function<double(double)> custom;

    static KernelSpec power(double tau, KernelMode mode = KernelMode::VO);
    static KernelSpec logpower(double tau, double beta, double c0, KernelMode mode = KernelMode::VO);
    static KernelSpec doublelog(double tau, double beta, double gamma, double c0,
                                KernelMode mode = KernelMode::VO);
    static KernelSpec custom_kernel(std::function<double(double)> k, double tau, double log_exponent,
                                    KernelMode mode = KernelMode::VO);

    void validate() const;
    // Non-fatal notes, e.g. c0 too small for monotonicity on all of (0,1].
    std::vector<std::string> warnings() const;

    double value(double x) const;
    // ln k(e^{-lambda}); finite for every lambda >= 0 on built-in families.
    double log_value_at(double lambda) const;
    std::string describe() const;
};

bool is_critical(double tau, double q);
bool kernel_integrable(const KernelSpec& spec, double q);

// (int_0^r k^q)^{1/q}: closed forms where available, otherwise quadrature.
double kernel_q_integral(const KernelSpec& spec, double q, double r);
// Same with r = exp(-neg_log_r), for radii below the double range.
double kernel_q_integral_neglog(const KernelSpec& spec, double q, double neg_log_r);
// Always the quadrature route; the oracle for the closed forms.
double kernel_q_integral_quadrature(const KernelSpec& spec, double q, double neg_log_r);
bool has_closed_form(const KernelSpec& spec, double q);

double pseudo_metric(const KernelSpec& spec, double q, double s, double t);

struct SandwichResult {
    double base = 0.0;
    double d = 0.0;
    bool passed = false;
};
SandwichResult sandwich_check(const KernelSpec& spec, double q, double s, double t, double tol = 1e-4);

RateFormula interval_rate_under_d(const KernelSpec& spec, double q);

PointCloud sampled_interval_metric(const KernelSpec& spec, double q, std::size_t grid_size);

} // namespace entlab
