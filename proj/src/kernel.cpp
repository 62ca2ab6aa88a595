#include "entlab/kernel.hpp"

#include "entlab/error.hpp"
#include "entlab/io.hpp"
#include "entlab/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace entlab {

namespace {

constexpr const char* kMod = "kernel";
constexpr double kCritTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool builtin(const KernelSpec& s) { return s.family != KernelFamily::Custom; }

// Substitution depth for int_0^b k^q: 0 -> u = e^{-lambda}; 1 -> additionally
// c0 + lambda = e^w; 2 -> additionally c0 + w = e^v. Each level turns the
// algebraic tail of the previous one into an exponential one.
int tail_level(const KernelSpec& s, double q) {
    if (!is_critical(s.tau, q)) return 0;
    if (s.beta * q > 1.0 + kCritTol) return 1;
    return 2;
}

using PartnerLog = std::function<double(double)>; // u -> ln k(g(u))

// int_0^b k(u)^q |1 - k(g(u))/k(u)|^q du with b = exp(-lambda0).
double singular_part(const KernelSpec& s, double q, double lambda0, const PartnerLog* partner) {
    const double tq = s.tau * q;
    auto finish = [&](double base, double lambda, double logk) {
        double factor = 0.0;
        if (partner) {
            double rho = 0.0;
            if (std::isfinite(lambda) && std::isfinite(logk)) {
                double u = std::exp(-lambda);
                rho = std::exp((*partner)(u) - logk);
            }
            double gap = std::abs(1.0 - rho);
            if (gap == 0.0) return 0.0;
            factor = q * std::log(gap);
        }
        return std::exp(base + factor);
    };

    if (!builtin(s)) {
        auto f = [&](double lambda) {
            double u = std::exp(-lambda);
            if (u <= 0.0) return 0.0;
            double logk = std::log(s.value(u));
            return finish(-lambda + q * logk, lambda, logk);
        };
        return integrate_to_infinity(f, lambda0, 1e-11);
    }

    const int level = tail_level(s, q);
    if (level == 0) {
        auto f = [&](double lambda) {
            double L0 = std::log(s.c0 + lambda);
            double L1 = s.gamma != 0.0 ? std::log(s.c0 + L0) : 0.0;
            double sl = s.beta * L0 + s.gamma * L1;
            double logk = s.tau * lambda - sl;
            return finish(-(1.0 - tq) * lambda - q * sl, lambda, logk);
        };
        return integrate_to_infinity(f, lambda0, 1e-11);
    }
    if (level == 1) {
        auto f = [&](double w) {
            double lambda = std::exp(w) - s.c0;
            double L1 = s.gamma != 0.0 ? std::log(s.c0 + w) : 0.0;
            double logk = s.tau * lambda - s.beta * w - s.gamma * L1;
            return finish((1.0 - s.beta * q) * w - q * s.gamma * L1, lambda, logk);
        };
        return integrate_to_infinity(f, std::log(s.c0 + lambda0), 1e-11);
    }
    auto f = [&](double v) {
        double L0 = std::exp(v) - s.c0;
        double lambda = std::isfinite(L0) ? std::exp(L0) - s.c0 : kInf;
        double logk = std::isfinite(lambda) ? s.tau * lambda - s.beta * L0 - s.gamma * v : kInf;
        return finish((1.0 - s.gamma * q) * v, lambda, logk);
    };
    return integrate_to_infinity(f, std::log(s.c0 + std::log(s.c0 + lambda0)), 1e-11);
}

void check_q(double q) {
    if (!(q >= 1.0) || !std::isfinite(q)) fail_validation(kMod, "q must be a finite real >= 1");
}

} // namespace

bool is_critical(double tau, double q) { return std::abs(tau * q - 1.0) <= kCritTol; }

KernelSpec KernelSpec::power(double tau, KernelMode mode) {
    KernelSpec s;
    s.family = KernelFamily::Power;
    s.tau = tau;
    s.mode = mode;
    s.validate();
    return s;
}

KernelSpec KernelSpec::logpower(double tau, double beta, double c0, KernelMode mode) {
    KernelSpec s;
    s.family = KernelFamily::LogPower;
    s.tau = tau;
    s.beta = beta;
    s.c0 = c0;
    s.mode = mode;
    s.validate();
    return s;
}

KernelSpec KernelSpec::doublelog(double tau, double beta, double gamma, double c0, KernelMode mode) {
    KernelSpec s;
    s.family = KernelFamily::DoubleLog;
    s.tau = tau;
    s.beta = beta;
    s.gamma = gamma;
    s.c0 = c0;
    s.mode = mode;
    s.validate();
    return s;
}

KernelSpec KernelSpec::custom_kernel(std::function<double(double)> k, double tau, double log_exponent,
                                     KernelMode mode) {
    KernelSpec s;
    s.family = KernelFamily::Custom;
    s.custom = std::move(k);
    s.tau = tau;
    s.log_exponent = log_exponent;
    s.mode = mode;
    s.validate();
    return s;
}

void KernelSpec::validate() const {
    if (!std::isfinite(tau) || !std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(c0))
        fail_validation(kMod, "kernel parameters must be finite");
    switch (family) {
    case KernelFamily::Power:
        if (!(tau > 0.0 && tau < 1.0)) fail_validation(kMod, "POWER needs 0 < tau < 1");
        break;
    case KernelFamily::LogPower:
        if (!(tau > 0.0 && tau <= 1.0)) fail_validation(kMod, "LOGPOWER needs 0 < tau <= 1");
        if (!(c0 > 0.0)) fail_validation(kMod, "LOGPOWER needs c0 > 0");
        break;
    case KernelFamily::DoubleLog:
        if (!(tau > 0.0 && tau <= 1.0)) fail_validation(kMod, "DOUBLELOG needs 0 < tau <= 1");
        if (!(c0 > 0.0) || !(c0 + std::log(c0) > 0.0))
            fail_validation(kMod, "DOUBLELOG needs c0 + ln c0 > 0 so that the outer log stays positive");
        break;
    case KernelFamily::Custom:
        if (!custom) fail_validation(kMod, "CUSTOM kernel needs a function");
        break;
    }
    // positivity and decrease, spot-checked on a log grid
    double prev = kInf;
    for (int j = 60; j >= 0; --j) {
        double x = std::pow(2.0, -0.5 * j);
        double v = value(x);
        bool ok = family == KernelFamily::Custom ? v >= 0.0 : v > 0.0;
        if (!ok || !std::isfinite(v))
            fail_validation(kMod, "kernel is not positive and finite at x = " + format_double(x));
        if (family == KernelFamily::Custom && v > prev)
            fail_validation(kMod, "CUSTOM kernel increases near x = " + format_double(x));
        prev = v;
    }
}

std::vector<std::string> KernelSpec::warnings() const {
    std::vector<std::string> out;
    if (family == KernelFamily::LogPower || family == KernelFamily::DoubleLog) {
        // d/d lambda of ln k(e^{-lambda}) at lambda = 0 is the smallest slope
        double slope = tau - beta / c0;
        if (family == KernelFamily::DoubleLog) slope -= gamma / (c0 * (c0 + std::log(c0)));
        if (slope <= 0.0)
            out.push_back("k is not decreasing on all of (0,1]: increase c0 (e.g. c0 > beta/tau)");
    }
    return out;
}

double KernelSpec::value(double x) const {
    if (x > 1.0 && x <= 1.0 + 1e-12) x = 1.0;
    if (!(x > 0.0) || x > 1.0) fail_validation(kMod, "kernel argument outside (0,1]: " + format_double(x));
    switch (family) {
    case KernelFamily::Power: return std::pow(x, -tau);
    case KernelFamily::LogPower: return std::pow(x, -tau) * std::pow(c0 - std::log(x), -beta);
    case KernelFamily::DoubleLog: {
        double l = c0 - std::log(x);
        return std::pow(x, -tau) * std::pow(l, -beta) * std::pow(c0 + std::log(l), -gamma);
    }
    case KernelFamily::Custom: return custom(x);
    }
    return 0.0;
}

double KernelSpec::log_value_at(double lambda) const {
    switch (family) {
    case KernelFamily::Power: return tau * lambda;
    case KernelFamily::LogPower: return tau * lambda - beta * std::log(c0 + lambda);
    case KernelFamily::DoubleLog: {
        double L0 = std::log(c0 + lambda);
        return tau * lambda - beta * L0 - gamma * std::log(c0 + L0);
    }
    case KernelFamily::Custom: return std::log(custom(std::exp(-lambda)));
    }
    return 0.0;
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    switch (family) {
    case KernelFamily::Power: os << "POWER(tau=" << tau << ")"; break;
    case KernelFamily::LogPower: os << "LOGPOWER(tau=" << tau << ",beta=" << beta << ",c0=" << c0 << ")"; break;
    case KernelFamily::DoubleLog:
        os << "DOUBLELOG(tau=" << tau << ",beta=" << beta << ",gamma=" << gamma << ",c0=" << c0 << ")";
        break;
    case KernelFamily::Custom: os << "CUSTOM(tau=" << tau << ",log_exponent=" << log_exponent << ")"; break;
    }
    os << (mode == KernelMode::WS ? "/WS" : "/VO");
    return os.str();
}

bool kernel_integrable(const KernelSpec& spec, double q) {
    check_q(q);
    const double tq = spec.tau * q;
    switch (spec.family) {
    case KernelFamily::Power: return tq < 1.0 && !is_critical(spec.tau, q);
    case KernelFamily::LogPower:
        if (is_critical(spec.tau, q)) return spec.beta * q > 1.0 + kCritTol;
        return tq < 1.0;
    case KernelFamily::DoubleLog:
        if (is_critical(spec.tau, q)) {
            if (spec.beta * q > 1.0 + kCritTol) return true;
            return std::abs(spec.beta * q - 1.0) <= kCritTol && spec.gamma * q > 1.0 + kCritTol;
        }
        return tq < 1.0;
    case KernelFamily::Custom: {
        double err = 0.0;
        double v = 0.0;
        try {
            v = integrate_to_infinity(
                [&](double lambda) {
                    double u = std::exp(-lambda);
                    return u > 0.0 ? u * std::pow(spec.value(u), q) : 0.0;
                },
                0.0, 1e-8, &err);
        } catch (const Error&) {
            return false;
        }
        return std::isfinite(v) && err <= 1e-6 * std::max(1.0, v);
    }
    }
    return false;
}

bool has_closed_form(const KernelSpec& spec, double q) {
    switch (spec.family) {
    case KernelFamily::Power: return true;
    case KernelFamily::LogPower: return is_critical(spec.tau, q);
    case KernelFamily::DoubleLog:
        return is_critical(spec.tau, q) && std::abs(spec.beta * q - 1.0) <= kCritTol;
    case KernelFamily::Custom: return false;
    }
    return false;
}

double kernel_q_integral_quadrature(const KernelSpec& spec, double q, double neg_log_r) {
    check_q(q);
    if (!kernel_integrable(spec, q))
        fail_validation(kMod, spec.describe() + " is not in L_q for q = " + format_double(q));
    if (!(neg_log_r >= 0.0)) fail_validation(kMod, "r must lie in (0,1]");
    if (std::isinf(neg_log_r)) return 0.0;
    return std::pow(singular_part(spec, q, neg_log_r, nullptr), 1.0 / q);
}

double kernel_q_integral_neglog(const KernelSpec& spec, double q, double neg_log_r) {
    check_q(q);
    if (!kernel_integrable(spec, q))
        fail_validation(kMod, spec.describe() + " is not in L_q for q = " + format_double(q));
    if (!(neg_log_r >= 0.0)) fail_validation(kMod, "r must lie in (0,1]");
    if (std::isinf(neg_log_r)) return 0.0;
    if (!has_closed_form(spec, q)) return kernel_q_integral_quadrature(spec, q, neg_log_r);
    const double L = neg_log_r;
    switch (spec.family) {
    case KernelFamily::Power: {
        double a = 1.0 - spec.tau * q;
        return std::exp((-std::log(a) - a * L) / q);
    }
    case KernelFamily::LogPower: {
        double b = spec.beta * q - 1.0;
        return std::pow(std::pow(spec.c0 + L, -b) / b, 1.0 / q);
    }
    case KernelFamily::DoubleLog: {
        double g = spec.gamma * q - 1.0;
        return std::pow(std::pow(spec.c0 + std::log(spec.c0 + L), -g) / g, 1.0 / q);
    }
    case KernelFamily::Custom: break;
    }
    return 0.0;
}

double kernel_q_integral(const KernelSpec& spec, double q, double r) {
    if (!(r >= 0.0) || r > 1.0) fail_validation(kMod, "r must lie in (0,1]");
    if (r == 0.0) return 0.0;
    return kernel_q_integral_neglog(spec, q, -std::log(r));
}

double pseudo_metric(const KernelSpec& spec, double q, double s, double t) {
    check_q(q);
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
        fail_validation(kMod, "pseudo_metric arguments must lie in [0,1]");
    if (!kernel_integrable(spec, q))
        fail_validation(kMod, spec.describe() + " is not in L_q for q = " + format_double(q));
    if (s == t) return 0.0;
    const double lo = std::min(s, t), hi = std::max(s, t), h = hi - lo;
    auto logk = [&](double x) { return std::log(spec.value(x)); };

    // int_0^a |k(u) - k(u+h)|^q du
    auto side = [&](double a) {
        if (a <= 0.0) return 0.0;
        double b = std::min(a, h);
        PartnerLog shifted = [&](double u) { return logk(u + h); };
        double v = singular_part(spec, q, -std::log(b), &shifted);
        if (a > h)
            v += integrate_interval(
                [&](double u) { return std::pow(std::abs(spec.value(u) - spec.value(u + h)), q); }, h, a,
                1e-10);
        return v;
    };

    double total = side(lo);
    if (spec.mode == KernelMode::VO) {
        total += std::pow(kernel_q_integral(spec, q, h), q);
    } else {
        PartnerLog mirrored = [&](double u) { return logk(h - u); };
        total += 2.0 * singular_part(spec, q, -std::log(0.5 * h), &mirrored);
        total += side(1.0 - hi);
    }
    return std::pow(total, 1.0 / q);
}

SandwichResult sandwich_check(const KernelSpec& spec, double q, double s, double t, double tol) {
    SandwichResult r;
    double h = std::abs(s - t);
    r.base = h > 0.0 ? kernel_q_integral(spec, q, h) : 0.0;
    r.d = pseudo_metric(spec, q, s, t);
    if (spec.mode == KernelMode::VO)
        r.passed = r.base * (1.0 - tol) <= r.d && r.d <= std::pow(2.0, 1.0 / q) * r.base * (1.0 + tol);
    else
        r.passed = r.d <= std::pow(4.0, 1.0 / q) * r.base * (1.0 + tol);
    return r;
}

RateFormula interval_rate_under_d(const KernelSpec& spec, double q) {
    check_q(q);
    const double iq = 1.0 / q;
    const bool crit = is_critical(spec.tau, q);
    auto mismatch = [&](const std::string& why) -> RateFormula {
        fail_validation(kMod, spec.describe() + " at q = " + format_double(q) + ": " + why);
    };
    switch (spec.family) {
    case KernelFamily::Power:
        if (!(spec.tau < iq) || crit) return mismatch("POWER needs 0 < tau < 1/q");
        return {1.0, iq - spec.tau, 0.0, 0.0};
    case KernelFamily::LogPower:
        if (crit) {
            if (!(spec.beta > iq + kCritTol)) return mismatch("tau = 1/q needs beta > 1/q");
            return {1.0, 0.0, spec.beta - iq, 0.0};
        }
        if (!(spec.tau < iq)) return mismatch("needs tau <= 1/q");
        return {1.0, iq - spec.tau, spec.beta, 0.0};
    case KernelFamily::DoubleLog:
        if (!crit) {
            if (!(spec.tau < iq)) return mismatch("needs tau <= 1/q");
            return {1.0, iq - spec.tau, spec.beta, spec.gamma};
        }
        if (spec.beta > iq + kCritTol) return {1.0, 0.0, spec.beta - iq, spec.gamma};
        if (std::abs(spec.beta - iq) <= kCritTol && spec.gamma > iq + kCritTol)
            return {1.0, 0.0, 0.0, spec.gamma - iq};
        return mismatch("tau = 1/q needs beta > 1/q, or beta = 1/q with gamma > 1/q");
    case KernelFamily::Custom:
        if (!(spec.tau < iq)) return mismatch("CUSTOM rate needs tau < 1/q");
        return {1.0, iq - spec.tau, -spec.log_exponent, 0.0};
    }
    return {};
}

PointCloud sampled_interval_metric(const KernelSpec& spec, double q, std::size_t grid_size) {
    if (grid_size < 2) fail_validation(kMod, "grid_size must be >= 2");
    if (grid_size > 512) fail_cap(kMod, "grid_size " + std::to_string(grid_size) + " exceeds 512");
    const std::size_t n = grid_size;
    std::vector<double> table(n * n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
            table[i * n + j] = pseudo_metric(spec, q, double(i) / double(n - 1), double(j) / double(n - 1));
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) table[i * n + j] = table[j * n + i];
    return PointCloud::from_table(std::move(table), n);
}

} // namespace entlab
