#include "entlab/operators.hpp"

#include "entlab/error.hpp"
#include "entlab/io.hpp"
#include "entlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace entlab {

namespace {

constexpr const char* kMod = "operator";
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Coefficients (in xi) of the Lagrange basis polynomials on the given nodes.
std::vector<std::vector<double>> lagrange_coefficients(const std::vector<double>& nodes) {
    const std::size_t q = nodes.size();
    std::vector<std::vector<double>> out(q, std::vector<double>(q, 0.0));
    for (std::size_t m = 0; m < q; ++m) {
        std::vector<double> poly{1.0};
        double denom = 1.0;
        for (std::size_t l = 0; l < q; ++l) {
            if (l == m) continue;
            std::vector<double> next(poly.size() + 1, 0.0);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= nodes[l] * poly[k];
            }
            poly = std::move(next);
            denom *= nodes[m] - nodes[l];
        }
        for (std::size_t k = 0; k < q; ++k) out[m][k] = poly[k] / denom;
    }
    return out;
}

// Lagrange bases keyed by (stencil size, stencil start relative to the panel).
class BasisCache {
public:
    const std::vector<std::vector<double>>& get(int q, long offset) {
        auto key = std::make_pair(q, offset);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<double> nodes(q);
        for (int l = 0; l < q; ++l) nodes[l] = double(offset + l);
        return cache_.emplace(key, lagrange_coefficients(nodes)).first->second;
    }

private:
    std::map<std::pair<int, long>, std::vector<std::vector<double>>> cache_;
};

long clamp_start(long centred, long lo, long hi) { return std::max(lo, std::min(centred, hi)); }

void check_grid(std::size_t n, int order) {
    if (n < 2) fail_validation(kMod, "grid_n must be >= 2");
    if (n > 4096) fail_cap(kMod, "grid_n " + std::to_string(n) + " exceeds 4096");
    if (order < 1 || order > 8) fail_validation(kMod, "interpolation order must lie in [1,8]");
}

} // namespace

DiscretizedOperator DiscretizedOperator::from_kernel(const KernelSpec& spec, std::size_t grid_n, int order) {
    check_grid(grid_n, order);
    spec.validate();
    if (!kernel_integrable(spec, 1.0)) fail_validation(kMod, spec.describe() + " is not integrable");
    DiscretizedOperator op;
    op.kind_ = OperatorKind::Kernel;
    op.spec_ = spec;
    op.n_ = grid_n;
    op.order_ = order;
    op.assemble();
    return op;
}

DiscretizedOperator DiscretizedOperator::riemann_liouville(double alpha, std::size_t grid_n, int order) {
    check_grid(grid_n, order);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) fail_validation(kMod, "alpha must be a positive real");
    DiscretizedOperator op;
    op.kind_ = OperatorKind::RiemannLiouville;
    op.alpha_ = alpha;
    op.n_ = grid_n;
    op.order_ = order;
    op.assemble();
    return op;
}

bool DiscretizedOperator::causal() const {
    return kind_ == OperatorKind::RiemannLiouville || spec_.mode == KernelMode::VO;
}

std::vector<double> DiscretizedOperator::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = double(i) / double(n_ - 1);
    return x;
}

double DiscretizedOperator::kernel_value(double u) const {
    if (kind_ == OperatorKind::RiemannLiouville) return std::exp((alpha_ - 1.0) * std::log(u) - std::lgamma(alpha_));
    return spec_.value(u);
}

double DiscretizedOperator::log_kernel_at(double lambda) const {
    if (kind_ == OperatorKind::RiemannLiouville) return -(alpha_ - 1.0) * lambda - std::lgamma(alpha_);
    if (spec_.family == KernelFamily::Custom) {
        double u = std::exp(-lambda);
        if (u <= 0.0) return kNegInf;
        double v = spec_.value(u);
        return v > 0.0 ? std::log(v) : kNegInf;
    }
    return spec_.log_value_at(lambda);
}

double DiscretizedOperator::kernel_l1(double r) const {
    if (r <= 0.0) return 0.0;
    if (kind_ == OperatorKind::RiemannLiouville) return std::exp(alpha_ * std::log(r) - std::lgamma(alpha_ + 1.0));
    return kernel_q_integral(spec_, 1.0, r);
}

namespace {

// h * int_0^1 k(h eta) w(eta) d eta with eta = e^{-mu}; resolves the kernel
// singularity in log space. `w` receives mu.
double near_panel_moment(const DiscretizedOperator& op, double h, const std::function<double(double)>& w) {
    const double log_h = std::log(h);
    return h * integrate_to_infinity(
                   [&](double mu) {
                       double lk = op.log_kernel_at(mu - log_h);
                       if (lk == kNegInf) return 0.0;
                       return std::exp(lk - mu) * w(mu);
                   },
                   0.0, 1e-12);
}

} // namespace

void DiscretizedOperator::assemble() {
    const std::size_t n = n_;
    const double h = 1.0 / double(n - 1);
    const int q = std::min<int>(order_, int(n));
    const auto& rule = tanh_sinh_nodes();
    const bool is_causal = causal();

    // behind[d][p] = h int_0^1 k(h(d - xi)) xi^p d xi, panel left of the row node (d >= 1)
    // ahead[e][p]  = h int_0^1 k(h(e + xi)) xi^p d xi, panel right of it (e >= 0)
    std::vector<std::vector<double>> behind(n, std::vector<double>(q, 0.0));
    std::vector<std::vector<double>> ahead(is_causal ? 0 : n, std::vector<double>(q, 0.0));

    parallel_for(n, [&](std::size_t d) {
        if (d == 1) {
            for (int p = 0; p < q; ++p)
                behind[1][p] = near_panel_moment(*this, h, [p](double mu) {
                    return std::pow(-std::expm1(-mu), p);
                });
        } else if (d >= 2) {
            for (const auto& nd : rule) {
                double k = kernel_value(h * (double(d - 1) + nd.one_minus_x));
                double xp = nd.w * k * h;
                for (int p = 0; p < q; ++p) {
                    behind[d][p] += xp;
                    xp *= nd.x;
                }
            }
        }
        if (!is_causal && d + 1 < n) {
            if (d == 0) {
                for (int p = 0; p < q; ++p)
                    ahead[0][p] = near_panel_moment(*this, h, [p](double mu) { return std::exp(-p * mu); });
            } else {
                for (const auto& nd : rule) {
                    double k = kernel_value(h * (double(d) + nd.x));
                    double xp = nd.w * k * h;
                    for (int p = 0; p < q; ++p) {
                        ahead[d][p] += xp;
                        xp *= nd.x;
                    }
                }
            }
        }
    });

    w_ = Eigen::MatrixXd::Zero(long(n), long(n));
    BasisCache bases;
    for (std::size_t i = 0; i < n; ++i) {
        long last_panel = is_causal ? long(i) - 1 : long(n) - 2;
        int qi = is_causal ? std::min<int>(q, int(i) + 1) : q;
        long hi = is_causal ? long(i) + 1 - qi : long(n) - q;
        for (long j = 0; j <= last_panel; ++j) {
            long start = clamp_start(j - (qi - 1) / 2, 0, hi);
            const auto& basis = bases.get(qi, start - j);
            const std::vector<double>& mom = j < long(i) ? behind[i - j] : ahead[j - long(i)];
            for (int m = 0; m < qi; ++m) {
                double acc = 0.0;
                for (int p = 0; p < qi; ++p) acc += basis[m][p] * mom[p];
                w_(long(i), start + m) += acc;
            }
        }
    }
}

std::vector<double> apply_operator(const DiscretizedOperator& op, const std::vector<double>& f) {
    if (f.size() != op.grid_n())
        fail_validation(kMod, "sample length " + std::to_string(f.size()) + " does not match grid_n " +
                                  std::to_string(op.grid_n()));
    for (double v : f)
        if (!std::isfinite(v)) fail_validation(kMod, "samples must be finite");
    Eigen::Map<const Eigen::VectorXd> fv(f.data(), long(f.size()));
    Eigen::VectorXd g = op.weights() * fv;
    return std::vector<double>(g.data(), g.data() + g.size());
}

std::vector<double> apply_weighted(const DiscretizedOperator& op, const std::vector<double>& pv, double sigma) {
    if (!op.causal()) fail_validation(kMod, "apply_weighted needs a causal operator");
    if (!(sigma >= 0.0)) fail_validation(kMod, "sigma must be >= 0");
    const std::size_t n = op.grid_n();
    if (pv.size() != n) fail_validation(kMod, "sample length does not match grid_n");
    if (sigma == 0.0) return apply_operator(op, pv);

    const double h = 1.0 / double(n - 1);
    const int q = std::min<int>(op.order(), int(n) - 1);
    const auto& rule = tanh_sinh_nodes();
    const std::size_t nr = rule.size();

    // kern[d][r] = k(h(d - xi_r)), xpow[j][r] = (h(j + xi_r))^sigma
    std::vector<std::vector<double>> kern(n), xpow(n);
    parallel_for(n, [&](std::size_t d) {
        xpow[d].resize(nr);
        for (std::size_t r = 0; r < nr; ++r) xpow[d][r] = std::pow(h * (double(d) + rule[r].x), sigma);
        if (d >= 2) {
            kern[d].resize(nr);
            for (std::size_t r = 0; r < nr; ++r)
                kern[d][r] = op.kernel_value(h * (double(d - 1) + rule[r].one_minus_x));
        }
    });

    std::vector<double> out(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        if (i == 0) return;
        // Pointwise evaluation, not a matrix row: the stencil may reach past
        // node i, so early rows keep the full interpolation order.
        BasisCache bases;
        int qi = q;
        long hi = long(n) - qi;
        std::vector<double> mom(qi);
        double acc_row = 0.0;
        for (long j = 0; j < long(i); ++j) {
            std::size_t d = i - std::size_t(j);
            std::fill(mom.begin(), mom.end(), 0.0);
            if (d == 1) {
                for (int p = 0; p < qi; ++p)
                    mom[p] = near_panel_moment(op, h, [&, p](double mu) {
                        double eta = std::exp(-mu);
                        double xi = -std::expm1(-mu);
                        double x = j == 0 ? h * xi : h * (double(j + 1) - eta);
                        return std::pow(x, sigma) * std::pow(xi, p);
                    });
            } else {
                for (std::size_t r = 0; r < nr; ++r) {
                    double v = rule[r].w * kern[d][r] * xpow[j][r] * h;
                    for (int p = 0; p < qi; ++p) {
                        mom[p] += v;
                        v *= rule[r].x;
                    }
                }
            }
            long start = clamp_start(j - (qi - 1) / 2, 1, hi);
            const auto& basis = bases.get(qi, start - j);
            for (int m = 0; m < qi; ++m) {
                double c = 0.0;
                for (int p = 0; p < qi; ++p) c += basis[m][p] * mom[p];
                acc_row += c * pv[start + m];
            }
        }
        out[i] = acc_row;
    });
    return out;
}

double rl_monomial_image(double gamma, int k, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(std::lgamma(k + 1.0) - std::lgamma(k + 1.0 + gamma) + (k + gamma) * std::log(x));
}

double semigroup_check(double alpha, double beta, const std::vector<double>& coeffs, std::size_t grid_n,
                       int order) {
    if (!(alpha > 0.0 && alpha <= 2.0) || !(beta > 0.0 && beta <= 2.0))
        fail_validation(kMod, "semigroup_check needs alpha, beta in (0,2]");
    if (coeffs.size() > 7) fail_validation(kMod, "semigroup_check accepts polynomials of degree <= 6");
    auto inner = DiscretizedOperator::riemann_liouville(beta, grid_n, order);
    auto outer = DiscretizedOperator::riemann_liouville(alpha, grid_n, order);
    auto x = inner.nodes();
    std::vector<double> f(grid_n, 0.0);
    for (std::size_t i = 0; i < grid_n; ++i) {
        double v = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x[i] + coeffs[k];
        f[i] = v;
    }
    auto g = apply_operator(inner, f);
    std::vector<double> smooth(grid_n, 0.0);
    for (std::size_t i = 1; i < grid_n; ++i) smooth[i] = g[i] / std::pow(x[i], beta);
    auto composed = apply_weighted(outer, smooth, beta);
    double err = 0.0;
    for (std::size_t i = 0; i < grid_n; ++i) {
        double exact = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            exact += coeffs[k] * rl_monomial_image(alpha + beta, int(k), x[i]);
        err = std::max(err, std::abs(composed[i] - exact));
    }
    return err;
}

double discrete_lp_norm(const std::vector<double>& v, double p, double h) {
    if (v.empty()) return 0.0;
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (v.size() == 1) return 0.0;
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    s -= 0.5 * (std::pow(std::abs(v.front()), p) + std::pow(std::abs(v.back()), p));
    return std::pow(h * s, 1.0 / p);
}

ShiftModulusResult shift_modulus_check(const DiscretizedOperator& op, double p, double delta,
                                       const std::vector<double>& f) {
    if (!op.causal()) fail_validation(kMod, "shift_modulus_check needs a VO kernel or Riemann-Liouville operator");
    if (!(p >= 1.0)) fail_validation(kMod, "p must lie in [1, inf]");
    if (!(delta >= 0.0 && delta <= 1.0)) fail_validation(kMod, "delta must lie in [0,1]");
    const std::size_t n = op.grid_n();
    double steps = delta * double(n - 1);
    std::size_t shift = std::size_t(std::llround(steps));
    if (std::abs(steps - double(shift)) > 1e-9)
        fail_validation(kMod, "delta*(grid_n-1) must be an integer; got " + format_double(steps));
    auto g = apply_operator(op, f);
    const double h = 1.0 / double(n - 1);
    std::vector<double> diff(n - shift);
    for (std::size_t i = 0; i + shift < n; ++i) diff[i] = g[i + shift] - g[i];
    ShiftModulusResult r;
    r.lhs = shift == 0 ? 0.0 : discrete_lp_norm(diff, p, h);
    r.rhs = 2.0 * discrete_lp_norm(f, p, h) * op.kernel_l1(delta);
    r.passed = r.lhs <= r.rhs * (1.0 + 1e-3);
    return r;
}

std::string to_string(NetKind k) {
    switch (k) {
    case NetKind::Rademacher: return "RADEMACHER";
    case NetKind::KernelAtoms: return "KERNEL_ATOMS";
    case NetKind::Means: return "MEANS";
    }
    return "?";
}

namespace {

void check_vo(const KernelSpec& spec) {
    if (spec.mode != KernelMode::VO) fail_validation(kMod, "distance nets are built for VO kernels");
}

double conjugate(double p) {
    if (!(p >= 2.0) || std::isinf(p)) fail_validation(kMod, "p must satisfy 2 <= p < infinity");
    return p / (p - 1.0);
}

} // namespace

NetLowerBound net_lower_rademacher(const KernelSpec& spec, std::uint64_t n) {
    check_vo(spec);
    if (n < 1) fail_validation(kMod, "n must be >= 1");
    if (!kernel_integrable(spec, 1.0)) fail_validation(kMod, spec.describe() + " is not in L_1");
    NetLowerBound b;
    b.kind = NetKind::Rademacher;
    b.m_or_n = double(n);
    b.separation = 2.0 * kernel_q_integral_neglog(spec, 1.0, std::log(double(n)));
    b.log2_cardinality = double(n);
    b.bound = 0.5 * b.separation;
    return b;
}

NetLowerBound net_lower_kernel_atoms_log(const KernelSpec& spec, double p, double log_m) {
    check_vo(spec);
    double pc = conjugate(p);
    if (!(log_m >= std::log(2.0) - 1e-15)) fail_validation(kMod, "kernel-atom net needs m >= 2");
    if (!kernel_integrable(spec, pc)) fail_validation(kMod, spec.describe() + " is not in L_{p'}");
    NetLowerBound b;
    b.kind = NetKind::KernelAtoms;
    b.m_or_n = std::exp(log_m);
    // alpha_m^{p-1} = (int_0^{1/m} k^{p'})^{1/p'}
    b.separation = kernel_q_integral_neglog(spec, pc, log_m);
    b.log2_cardinality = log_m / std::log(2.0);
    b.bound = 0.5 * b.separation;
    return b;
}

NetLowerBound net_lower_kernel_atoms(const KernelSpec& spec, double p, std::uint64_t m) {
    if (m < 2) fail_validation(kMod, "kernel-atom net needs m >= 2");
    return net_lower_kernel_atoms_log(spec, p, std::log(double(m)));
}

NetLowerBound net_lower_means(const KernelSpec& spec, double p, std::uint64_t m) {
    check_vo(spec);
    double pc = conjugate(p);
    std::uint64_t root = std::uint64_t(std::llround(std::sqrt(double(m))));
    if (m < 4 || root * root != m) fail_validation(kMod, "means net needs a perfect square m >= 4");
    if (!kernel_integrable(spec, pc)) fail_validation(kMod, spec.describe() + " is not in L_{p'}");
    double log_m = std::log(double(m));
    NetLowerBound b;
    b.kind = NetKind::Means;
    b.m_or_n = double(m);
    b.separation = std::pow(double(m), -1.0 / (2.0 * p)) * kernel_q_integral_neglog(spec, pc, log_m);
    b.log2_cardinality = 0.5 * double(root) * std::log2(double(m));
    b.bound = 0.5 * b.separation;
    return b;
}

MonotoneSeq singular_values(const DiscretizedOperator& op) {
    const std::size_t N = op.grid_n();
    if (N > 1024) fail_cap(kMod, "singular_values supports grid_n <= 1024");
    const double h = 1.0 / double(N);
    auto k = [&](double u) { return u > 0.0 ? op.kernel_value(std::min(u, 1.0)) : 0.0; };
    // Galerkin entries depend on the cell offset d only:
    // (1/h) int_{-h}^{h} (h - |v|) k(d h + v) dv.
    std::vector<double> band(N, 0.0);
    parallel_for(N, [&](std::size_t d) {
        double right = integrate_interval([&](double u) { return (h - u) * k(double(d) * h + u); }, 0.0, h);
        double left = d == 0 ? 0.0
                             : integrate_interval([&](double u) { return u * k(double(d - 1) * h + u); }, 0.0, h);
        band[d] = (left + right) / h;
    });
    const bool symmetric = !op.causal();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(long(N), long(N));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c <= r; ++c) {
            double v = band[r - c];
            if (symmetric && r == c) v *= 2.0;
            a(long(r), long(c)) = v;
            if (symmetric && r != c) a(long(c), long(r)) = v;
        }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    if (svd.info() != Eigen::Success) fail_numeric(kMod, "singular value decomposition failed");
    const auto& s = svd.singularValues();
    std::vector<double> vals(s.data(), s.data() + s.size());
    for (std::size_t i = 1; i < vals.size(); ++i) vals[i] = std::min(vals[i], vals[i - 1]);
    return MonotoneSeq(std::move(vals));
}

double rieli_bound(const KernelSpec& spec, double q, std::uint64_t n, double c) {
    if (!(q >= 1.0) || !(c > 0.0) || n < 1) fail_validation(kMod, "rieli_bound needs q >= 1, c > 0, n >= 1");
    if (!kernel_integrable(spec, 2.0)) fail_validation(kMod, spec.describe() + " is not in L_2");
    return c * std::sqrt(q / double(n)) * kernel_q_integral_neglog(spec, 2.0, std::log(double(n)));
}

double rieli_bound_rl(double alpha, double q, std::uint64_t n, double c) {
    if (!(q >= 1.0) || !(c > 0.0) || n < 1) fail_validation(kMod, "rieli_bound needs q >= 1, c > 0, n >= 1");
    if (!(alpha > 0.5)) fail_validation(kMod, "the Riemann-Liouville kernel is in L_2 only for alpha > 1/2");
    double l2sq = std::pow(double(n), 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0) * std::exp(-2.0 * std::lgamma(alpha));
    return c * std::sqrt(q / double(n)) * std::sqrt(l2sq);
}

BoundValue rl04_bound(const MonotoneSeq& data, const Rl04Variant& v, std::uint64_t n) {
    if (data.empty()) fail_validation(kMod, "entropy data must be non-empty");
    if (n < 1) fail_validation(kMod, "n must be >= 1");
    BoundValue out;
    if (v.kind == Rl04Variant::Kind::II) {
        double s = 1.0;
        for (std::uint64_t k = 1; k <= n; ++k) s += data.nth_extended(k, out.truncated) / std::sqrt(double(k));
        out.value = s;
        return out;
    }
    if (!(v.rho > 0.0) || !std::isfinite(v.gamma) || !(v.p >= 2.0) || std::isinf(v.p))
        fail_validation(kMod, "variant I needs rho > 0, finite gamma and 2 <= p < infinity");
    auto weight = [&](double k) { return std::pow(k, v.rho) * std::pow(std::log2(k + 1.0), v.gamma); };
    double kmax = std::floor(std::pow(double(n), 1.0 + 1.0 / (v.p * v.rho)) + 1e-9);
    double len = double(data.size());
    double best = 0.0;
    for (double k = 1; k <= std::min(kmax, len); k += 1.0) best = std::max(best, weight(k) * data.nth(std::size_t(k)));
    if (kmax > len) {
        // extension by the last value; k^rho (log)^gamma is quasi-convex, so the
        // sup over the extension sits at an end point
        out.truncated = true;
        double last = data.values().back();
        best = std::max({best, weight(len + 1.0) * last, weight(kmax) * last});
    }
    out.value = best;
    return out;
}

} // namespace entlab
