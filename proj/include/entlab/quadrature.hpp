#pragma once

#include <functional>
#include <vector>

namespace entlab {

// Adaptive double-exponential rules (thread-local instances, so callers may run
// in parallel). f may be singular at either endpoint but must be finite inside.
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double* error = nullptr);
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10, double* error = nullptr);

// Fixed tanh-sinh nodes on [0,1]. Each node carries x and 1-x computed
// separately so integrands can resolve endpoint singularities.
struct TanhSinhNode {
    double x;
    double one_minus_x;
    double w;
};

const std::vector<TanhSinhNode>& tanh_sinh_nodes();

// Parallel loop over [0, n) honouring ENTLAB_THREADS; chunks are static, so the
// body must write to disjoint outputs.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);
unsigned thread_count();

} // namespace entlab
