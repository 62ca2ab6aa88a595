#include "entlab/quadrature.hpp"

#include "entlab/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace entlab {

double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double* error) {
    if (!(b > a)) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    auto g = [&](double x) {
        double v = f(x);
        return std::isfinite(v) ? v : 0.0;
    };
    double err = 0.0;
    double v = 0.0;
    try {
        v = rule.integrate(g, a, b, rel_tol, &err);
    } catch (const std::exception& e) {
        fail_numeric("quadrature", e.what());
    }
    if (error) *error = err;
    return v;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double rel_tol,
                             double* error) {
    thread_local boost::math::quadrature::exp_sinh<double> rule(12);
    auto g = [&](double x) {
        double v = f(x);
        return std::isfinite(v) ? v : 0.0;
    };
    double err = 0.0;
    double v = 0.0;
    try {
        v = rule.integrate(g, a, std::numeric_limits<double>::infinity(), rel_tol, &err);
    } catch (const std::exception& e) {
        fail_numeric("quadrature", e.what());
    }
    if (error) *error = err;
    return v;
}

const std::vector<TanhSinhNode>& tanh_sinh_nodes() {
    static const std::vector<TanhSinhNode> nodes = [] {
        std::vector<TanhSinhNode> out;
        const double h = 1.0 / 64.0;
        const double half_pi = std::acos(0.0);
        for (int k = -400; k <= 400; ++k) {
            double t = k * h;
            double s = half_pi * std::sinh(t);
            // x = 1/(1+e^{-2s}), 1-x = 1/(1+e^{2s})
            double x = 1.0 / (1.0 + std::exp(-2.0 * s));
            double xc = 1.0 / (1.0 + std::exp(2.0 * s));
            double w = h * half_pi * std::cosh(t) * 2.0 * x * xc;
            if (!(x > 0.0) || !(xc > 0.0) || !(w > 1e-300)) continue;
            out.push_back({x, xc, w});
        }
        return out;
    }();
    return nodes;
}

unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ENTLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return unsigned(v);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned T = std::min<std::size_t>(thread_count(), n);
    if (T <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(T);
    for (unsigned w = 0; w < T; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += T) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace entlab
