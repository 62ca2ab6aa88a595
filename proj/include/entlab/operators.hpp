#pragma once

#include "entlab/kernel.hpp"
#include "entlab/seqspace.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace entlab {

enum class OperatorKind { Kernel, RiemannLiouville };

// Collocation discretisation of (Tf)(t) = int_0^1 K(t,x) f(x) dx on the nodes
// x_j = j/(n-1). f is replaced panel by panel with a Lagrange interpolant of
// `order` nodes and the kernel is integrated exactly against it (product
// integration). Causal operators (VO kernels and Riemann-Liouville) only use
// nodes x_j <= t_i in row i, so the matrix is lower triangular.
class DiscretizedOperator {
public:
    static DiscretizedOperator from_kernel(const KernelSpec& spec, std::size_t grid_n, int order = 5);
    static DiscretizedOperator riemann_liouville(double alpha, std::size_t grid_n, int order = 5);

    OperatorKind kind() const { return kind_; }
    const KernelSpec& spec() const { return spec_; }
    double alpha() const { return alpha_; }
    std::size_t grid_n() const { return n_; }
    int order() const { return order_; }
    bool causal() const;
    std::vector<double> nodes() const;

    // k(u) for u in (0,1]; for Riemann-Liouville u^{alpha-1}/Gamma(alpha).
    double kernel_value(double u) const;
    // ln k(e^{-lambda}), -inf where k vanishes.
    double log_kernel_at(double lambda) const;
    // int_0^r k(u) du.
    double kernel_l1(double r) const;

    const Eigen::MatrixXd& weights() const { return w_; }

private:
    OperatorKind kind_ = OperatorKind::Kernel;
    KernelSpec spec_;
    double alpha_ = 0.0;
    std::size_t n_ = 0;
    int order_ = 5;
    Eigen::MatrixXd w_;

    void assemble();
};

std::vector<double> apply_operator(const DiscretizedOperator& op, const std::vector<double>& f);

// Causal operators only: int_0^{t_i} k(t_i - x) x^sigma p(x) dx, with p sampled
// at the nodes. For sigma > 0 the value at node 0 is ignored.
std::vector<double> apply_weighted(const DiscretizedOperator& op, const std::vector<double>& p,
                                   double sigma);

// R_gamma x^k = Gamma(k+1)/Gamma(k+1+gamma) x^{k+gamma}.
double rl_monomial_image(double gamma, int k, double x);

// max_i |R_alpha(R_beta f) - R_{alpha+beta} f|(x_i) for f = sum_k coeffs[k] x^k.
// R_beta f is computed numerically; the outer application treats it as
// x^beta times a smooth factor.
double semigroup_check(double alpha, double beta, const std::vector<double>& coeffs, std::size_t grid_n,
                       int order = 5);

struct ShiftModulusResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool passed = false;
};

// Discrete L_p norms use the trapezoid rule; p = infinity is the grid maximum.
// delta*(n-1) must be an integer so the shift maps nodes to nodes.
ShiftModulusResult shift_modulus_check(const DiscretizedOperator& op, double p, double delta,
                                       const std::vector<double>& f);
double discrete_lp_norm(const std::vector<double>& v, double p, double h);

enum class NetKind { Rademacher, KernelAtoms, Means };
std::string to_string(NetKind k);

struct NetLowerBound {
    NetKind kind = NetKind::Rademacher;
    double m_or_n = 0.0;
    double separation = 0.0;
    double log2_cardinality = 0.0;
    // Half the separation: the certified lower bound for eps_{2^{log2_cardinality}-1}.
    double bound = 0.0;
};

NetLowerBound net_lower_rademacher(const KernelSpec& spec, std::uint64_t n);
NetLowerBound net_lower_kernel_atoms(const KernelSpec& spec, double p, std::uint64_t m);
// Same net with m = exp(log_m); used for m = 2^{n-1}+1 beyond the integer range.
NetLowerBound net_lower_kernel_atoms_log(const KernelSpec& spec, double p, double log_m);
NetLowerBound net_lower_means(const KernelSpec& spec, double p, std::uint64_t m);

// Singular values of the L2-Galerkin matrix on grid_n equal cells, which
// approximate the singular values of the operator on L2[0,1].
MonotoneSeq singular_values(const DiscretizedOperator& op);

// c sqrt(q) n^{-1/2} (int_0^{1/n} k^2)^{1/2}.
double rieli_bound(const KernelSpec& spec, double q, std::uint64_t n, double c);
double rieli_bound_rl(double alpha, double q, std::uint64_t n, double c);

struct Rl04Variant {
    enum class Kind { I, II } kind = Kind::II;
    double rho = 1.0;
    double gamma = 0.0;
    double p = 2.0;
};

struct BoundValue {
    double value = 0.0;
    bool truncated = false; // data were extended by their last value
};

// Variant I: sup_{k <= n^{1+1/(p rho)}} k^rho (log2(k+1))^gamma eps_k.
// Variant II: 1 + sum_{k<=n} k^{-1/2} e_k, reading the data as e_k.
BoundValue rl04_bound(const MonotoneSeq& entropy_data, const Rl04Variant& variant, std::uint64_t n);

} // namespace entlab
