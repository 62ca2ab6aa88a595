#include "entlab/hull.hpp"

#include "entlab/error.hpp"
#include "entlab/io.hpp"
#include "entlab/quadrature.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace entlab {

namespace {

constexpr const char* kMod = "hull";
constexpr double kNetCap = 1e6;
constexpr double kStreamCap = 2e7;
constexpr double kWorkCap = 4e9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/p' = 1 - 1/p, with p = infinity allowed.
double inv_conj(double p) { return std::isinf(p) ? 1.0 : 1.0 - 1.0 / p; }

double norm(const Point& x, double p) { return lp_distance(x, Point(x.size(), 0.0), p); }

std::uint64_t mesh_budget(double mesh) {
    if (!(mesh > 0.0) || !(mesh <= 1.0)) fail_validation(kMod, "mesh must lie in (0, 1]");
    return std::uint64_t(std::floor(1.0 / mesh + 1e-9));
}

struct Walker {
    const HullSpec& spec;
    double mesh;
    std::uint64_t K;

    // Values in visiting order for one coordinate with the given budget.
    static std::vector<std::int64_t> values(std::uint64_t budget) {
        std::vector<std::int64_t> v{0};
        for (std::int64_t s = 1; s <= std::int64_t(budget); ++s) {
            v.push_back(s);
            v.push_back(-s);
        }
        return v;
    }

    template <class Leaf>
    void walk(std::size_t i, std::uint64_t budget, std::vector<Point>& acc, Leaf& leaf) const {
        const std::size_t m = spec.generators.size();
        if (i == m) {
            leaf(acc[m]);
            return;
        }
        const Point& t = spec.generators[i];
        const Point& cur = acc[i];
        Point& nxt = acc[i + 1];
        for (std::uint64_t s = 0; s <= budget; ++s) {
            for (int sign : {1, -1}) {
                if (s == 0 && sign < 0) continue;
                double a = double(sign) * double(s) * mesh;
                for (std::size_t j = 0; j < t.size(); ++j) nxt[j] = cur[j] + a * t[j];
                walk(i + 1, budget - s, acc, leaf);
            }
        }
    }

    // Chunks split on the first coefficient; offsets give global point indices.
    struct Chunk {
        std::int64_t first;
        std::uint64_t offset;
        std::uint64_t size;
    };

    std::vector<Chunk> chunks() const {
        std::vector<Chunk> out;
        std::uint64_t off = 0;
        const std::size_t m = spec.generators.size();
        for (auto v : values(K)) {
            std::uint64_t rest = K - std::uint64_t(std::llabs(v));
            auto sz = std::uint64_t(lattice_count(m - 1, rest));
            out.push_back({v, off, sz});
            off += sz;
        }
        return out;
    }

    template <class Leaf>
    void walk_chunk(const Chunk& c, Leaf& leaf) const {
        const std::size_t m = spec.generators.size(), d = spec.dim();
        std::vector<Point> acc(m + 1, Point(d, 0.0));
        const Point& t = spec.generators[0];
        double a = double(c.first) * mesh;
        for (std::size_t j = 0; j < d; ++j) acc[1][j] = a * t[j];
        walk(1, K - std::uint64_t(std::llabs(c.first)), acc, leaf);
    }
};

} // namespace

void HullSpec::validate() const {
    if (generators.empty()) fail_validation(kMod, "at least one generator is required");
    std::size_t d = generators[0].size();
    if (d == 0) fail_validation(kMod, "generators must have positive dimension");
    for (const auto& g : generators) {
        if (g.size() != d) fail_validation(kMod, "generators differ in dimension");
        for (double x : g)
            if (!std::isfinite(x)) fail_validation(kMod, "generator coordinates must be finite");
    }
    if (!(ambient_p >= 1.0)) fail_validation(kMod, "ambient_p must be >= 1");
}

double HullSpec::max_generator_norm() const {
    double m = 0.0;
    for (const auto& g : generators) m = std::max(m, norm(g, ambient_p));
    return m;
}

double support_function(const HullSpec& spec, const Point& u) {
    spec.validate();
    if (u.size() != spec.dim()) fail_validation(kMod, "direction has the wrong dimension");
    double h = 0.0;
    for (const auto& g : spec.generators) {
        double s = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * g[j];
        h = std::max(h, std::abs(s));
    }
    return h;
}

PointCloud generator_cloud(const HullSpec& spec) {
    spec.validate();
    return PointCloud::from_points(spec.generators, spec.ambient_p);
}

double lattice_count(std::size_t m, std::uint64_t K) {
    // sum_j 2^j C(m,j) C(K,j): choose the j non-zero coordinates, their signs,
    // and a composition of at most K into j positive parts.
    double total = 0.0, cm = 1.0, ck = 1.0, pw = 1.0;
    for (std::size_t j = 0; j <= m && j <= K; ++j) {
        if (j > 0) {
            cm *= double(m - j + 1) / double(j);
            ck *= double(K - j + 1) / double(j);
            pw *= 2.0;
        }
        total += pw * std::round(cm) * std::round(ck);
    }
    return total;
}

HullNet hull_net(const HullSpec& spec, double mesh) {
    spec.validate();
    std::uint64_t K = mesh_budget(mesh);
    double count = lattice_count(spec.generators.size(), K);
    if (count > kNetCap)
        fail_cap(kMod, "net would have " + format_double(count) + " points (cap 1e6); use a coarser mesh");
    Walker w{spec, mesh, K};
    std::vector<Point> pts;
    pts.reserve(std::size_t(count));
    auto leaf = [&](const Point& x) { pts.push_back(x); };
    for (const auto& c : w.chunks()) w.walk_chunk(c, leaf);
    HullNet out{PointCloud::from_points(std::move(pts), spec.ambient_p),
                mesh * double(spec.generators.size()) * spec.max_generator_norm(), K};
    return out;
}

HullProfile hull_entropy_profile(const HullSpec& spec, std::size_t n_max, double mesh) {
    spec.validate();
    if (n_max < 1) fail_validation(kMod, "n must be >= 1");
    std::uint64_t K = mesh_budget(mesh);
    const double count = lattice_count(spec.generators.size(), K);
    if (count > kStreamCap)
        fail_cap(kMod, "net would have " + format_double(count) + " points (cap 2e7)");
    if (count * double(n_max) > kWorkCap)
        fail_cap(kMod, "net size times n exceeds 4e9 distance evaluations");

    Walker w{spec, mesh, K};
    const auto chunks = w.chunks();
    const double p = spec.ambient_p;
    std::vector<double> mind(std::size_t(count), kInf);

    struct Best {
        double value = -1.0;
        std::uint64_t index = 0;
        Point x;
    };

    HullProfile prof;
    prof.mesh = mesh;
    prof.net_size = std::uint64_t(count);
    prof.delta = mesh * double(spec.generators.size()) * spec.max_generator_norm();

    Point centre(spec.dim(), 0.0); // the origin is the first net point
    for (std::size_t k = 1; k <= n_max; ++k) {
        std::vector<Best> best(chunks.size());
        parallel_for(chunks.size(), [&](std::size_t ci) {
            const auto& c = chunks[ci];
            Best b;
            std::uint64_t idx = c.offset;
            auto leaf = [&](const Point& x) {
                double d = lp_distance(x, centre, p);
                double& md = mind[idx];
                if (d < md) md = d;
                if (md > b.value) {
                    b.value = md;
                    b.index = idx;
                    b.x = x;
                }
                ++idx;
            };
            w.walk_chunk(c, leaf);
            best[ci] = std::move(b);
        });
        const Best* top = &best[0];
        for (const auto& b : best)
            if (b.value > top->value || (b.value == top->value && b.index < top->index)) top = &b;
        prof.radius.push_back(std::max(top->value, 0.0));
        if (top->value <= 0.0) {
            prof.radius.resize(n_max, 0.0);
            break;
        }
        centre = top->x;
    }
    return prof;
}

HullBounds hull_entropy_bounds(const HullSpec& spec, std::size_t n, double mesh) {
    HullProfile prof = hull_entropy_profile(spec, n, mesh);
    return HullBounds{prof.lower(n), prof.upper(n), prof.delta, prof.radius[n - 1]};
}

HullSpec diag_set(const MonotoneSeq& sigma, double p, std::size_t dim) {
    if (dim < 1 || dim > sigma.size()) fail_validation(kMod, "dim must lie in 1..length(sigma)");
    if (!(p >= 1.0)) fail_validation(kMod, "p must be >= 1");
    HullSpec spec;
    spec.ambient_p = p;
    for (std::size_t k = 0; k < dim; ++k) {
        Point g(dim, 0.0);
        g[k] = sigma[k];
        spec.generators.push_back(std::move(g));
    }
    return spec;
}

MonotoneSeq optimality_sequence(double r, double gamma, std::size_t length) {
    if (!(r > 0.0)) fail_validation(kMod, "r must be positive");
    std::vector<double> v;
    for (std::size_t k = 1; k <= length; ++k) {
        double kk = double(k);
        v.push_back(std::pow(std::log2(kk + 1.0), -1.0 / r) * std::pow(std::log2(std::log2(kk + 3.0)), -gamma));
    }
    return MonotoneSeq(std::move(v));
}

FlaggedValue l02_lower(const MonotoneSeq& sigma, double p, std::uint64_t n, double c) {
    if (sigma.empty()) fail_validation(kMod, "sigma is empty");
    if (n < 1) fail_validation(kMod, "n must be >= 1");
    if (!(p >= 1.0)) fail_validation(kMod, "p must be >= 1");
    FlaggedValue out;
    const double ipc = inv_conj(p);
    std::uint64_t sq = n <= 0xFFFFFFFFull ? n * n : std::numeric_limits<std::uint64_t>::max();
    std::uint64_t pw = n < 64 ? (std::uint64_t(1) << n) : std::numeric_limits<std::uint64_t>::max();
    double s_sq = sigma.nth_extended(sq, out.truncated);
    double s_pw = sigma.nth_extended(pw, out.truncated);
    double nn = double(n);
    double a = std::pow(nn, -ipc) * std::pow(std::log2(nn + 1.0), ipc) * s_sq;
    out.value = c * std::max(a, s_pw);
    return out;
}

double schuett_gg_lower(std::uint64_t n, std::uint64_t m, double p, double c) {
    if (n < 1 || m <= n) fail_validation(kMod, "requires m > n >= 1");
    if (!(p > 1.0 && p <= 2.0)) fail_validation(kMod, "p must lie in (1, 2]");
    return c * std::pow(std::log2(double(m) / double(n)) / double(n), inv_conj(p));
}

// ---------------------------------------------------------------------------
// Upper bound for hulls from data on A and a sequence alpha_1 < ... < alpha_n.

SteinwartParams SteinwartParams::with_alphas(const std::vector<std::uint64_t>& alphas) {
    SteinwartParams s;
    for (auto a : alphas) {
        s.log2_alphas.push_back(std::log2(double(a)));
        s.alpha_decimal.push_back(std::to_string(a));
    }
    return s;
}

void SteinwartParams::validate(std::size_t n) const {
    if (!(p > 1.0 && p <= 2.0)) fail_validation(kMod, "p must lie in (1, 2]");
    if (!(t > 0.0)) fail_validation(kMod, "t must be positive");
    if (!(c_t > 0.0) || !(tau_p > 0.0)) fail_validation(kMod, "c_t and tau_p must be positive");
    if (n < 2) fail_validation(kMod, "n must be >= 2");
    if (log2_alphas.size() != n) fail_validation(kMod, "the alpha list must have length n");
    if (!alpha_decimal.empty() && alpha_decimal.size() != n)
        fail_validation(kMod, "alpha_decimal must have length n");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(log2_alphas[i]) || log2_alphas[i] < 0.0)
            fail_validation(kMod, "alphas must be positive integers");
        if (i > 0 && !(log2_alphas[i] > log2_alphas[i - 1]))
            fail_validation(kMod, "alphas must be strictly increasing");
    }
}

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

// alpha_i as an index into the data, or 0 when it exceeds 2^63.
std::uint64_t alpha_index(const SteinwartParams& s, std::size_t i) {
    if (!s.alpha_decimal.empty()) {
        BigInt a(s.alpha_decimal[i]);
        if (a > BigInt(std::numeric_limits<std::int64_t>::max())) return 0;
        return a.convert_to<std::uint64_t>();
    }
    if (s.log2_alphas[i] >= 63.0) return 0;
    return std::uint64_t(std::floor(std::exp2(s.log2_alphas[i]) + 1e-6));
}

double eps_at(const MonotoneSeq& data, std::uint64_t idx, bool& truncated) {
    if (idx == 0) {
        truncated = true;
        return data.values().back();
    }
    return data.nth_extended(idx, truncated);
}

} // namespace

SteinwartResult steinwart_upper(const MonotoneSeq& data, const SteinwartParams& s, std::uint64_t n) {
    s.validate(n);
    if (data.empty()) fail_validation(kMod, "entropy data is empty");
    const double ipc = inv_conj(s.p);
    SteinwartResult r;

    // S = sum_{k=2}^n 2^{-k} log2(2^L + 3), L = k + 2 + log2 alpha_k - n.
    const double log2_3 = std::log2(3.0);
    double S = 0.0;
    for (std::uint64_t k = 2; k <= n; ++k) {
        double L = double(k) + 2.0 + s.log2_alphas[k - 1] - double(n);
        double term = L > log2_3 ? L + std::log1p(3.0 * std::exp2(-L)) / std::log(2.0)
                                 : log2_3 + std::log1p(std::exp2(L) / 3.0) / std::log(2.0);
        S += std::exp2(-double(k)) * term;
    }
    double log2_real = double(n) + 2.0 + std::log2(S);
    if (log2_real < 52.0) {
        r.m = std::floor(std::ldexp(S, int(n) + 2)) + 2.0;
        r.log2_m = std::log2(r.m);
        r.m_exact = true;
    } else {
        r.log2_m = log2_real;
        r.m = std::exp2(log2_real);
        r.m_exact = false;
    }

    // First term: c_t m^{-1/t-1/p'} sup_{i <= I} i^{1/t} eps_i, I = min(m^{1+t/p'}, alpha_1).
    const auto& v = data.values();
    const double N = double(v.size());
    double log2_I = std::min((1.0 + s.t * ipc) * r.log2_m, s.log2_alphas[0]);
    double I;
    if (log2_I < 62.0) {
        double cand = kInf;
        if ((1.0 + s.t * ipc) * r.log2_m < 62.0) cand = std::floor(std::pow(r.m, 1.0 + s.t * ipc) + 1e-9);
        std::uint64_t a1 = alpha_index(s, 0);
        I = a1 > 0 ? std::min(cand, double(a1)) : cand;
    } else {
        I = std::exp2(log2_I);
    }
    double ln_sup = -kInf;
    std::size_t upto = std::size_t(std::min(I, N));
    for (std::size_t i = 1; i <= upto; ++i)
        if (v[i - 1] > 0.0) ln_sup = std::max(ln_sup, std::log(double(i)) / s.t + std::log(v[i - 1]));
    if (I > N) {
        r.truncated = true;
        if (v.back() > 0.0) ln_sup = std::max(ln_sup, std::log(I) / s.t + std::log(v.back()));
    }
    if (ln_sup > -kInf)
        r.first_term = s.c_t * std::exp((-1.0 / s.t - ipc) * r.log2_m * std::log(2.0) + ln_sup);

    // Second term: 23 tau_p (sum_k (2^{(k-n)/p'} sum_{i>=k} eps_{alpha_i})^p)^{1/p}.
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = eps_at(data, alpha_index(s, i), r.truncated);
    double tail = 0.0, acc = 0.0;
    for (std::uint64_t k = n; k >= 1; --k) {
        tail += e[k - 1];
        acc += std::pow(std::exp2((double(k) - double(n)) * ipc) * tail, s.p);
    }
    r.second_term = 23.0 * s.tau_p * std::pow(acc, 1.0 / s.p);
    r.bound = r.first_term + r.second_term;
    return r;
}

SteinwartResult steinwart_upper_exact(const MonotoneSeq& data, const SteinwartParams& s, std::uint64_t n) {
    s.validate(n);
    if (s.alpha_decimal.empty()) fail_validation(kMod, "the exact evaluator needs integer alphas");
    if (data.empty()) fail_validation(kMod, "entropy data is empty");
    using boost::multiprecision::floor;
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    SteinwartResult r;
    const BigFloat p = s.p, ipc = 1 - 1 / p, t = s.t;
    const BigFloat ln2 = log(BigFloat(2));
    std::vector<BigInt> alpha;
    for (const auto& a : s.alpha_decimal) alpha.emplace_back(a);

    BigFloat S = 0;
    for (std::uint64_t k = 2; k <= n; ++k) {
        BigFloat x = BigFloat(BigInt(1) << (k + 2)) * BigFloat(alpha[k - 1]) / BigFloat(BigInt(1) << n) + 3;
        S += log(x) / ln2 / BigFloat(BigInt(1) << k);
    }
    BigInt m = BigInt(floor(BigFloat(BigInt(1) << (n + 2)) * S)) + 2;
    BigFloat mf(m);
    r.m = mf.convert_to<double>();
    r.log2_m = BigFloat(log(mf) / ln2).convert_to<double>();
    r.m_exact = m < (BigInt(1) << 53);

    const auto& v = data.values();
    BigInt I(floor(pow(mf, 1 + t * ipc) + BigFloat("1e-30")));
    if (alpha[0] < I) I = alpha[0];
    BigInt N(v.size());
    BigFloat sup = 0;
    BigInt upto = I < N ? I : N;
    for (std::size_t i = 1; BigInt(i) <= upto; ++i) {
        BigFloat cand = pow(BigFloat(i), 1 / t) * BigFloat(v[i - 1]);
        if (cand > sup) sup = cand;
    }
    if (I > N) {
        r.truncated = true;
        BigFloat cand = pow(BigFloat(I), 1 / t) * BigFloat(v.back());
        if (cand > sup) sup = cand;
    }
    BigFloat first = BigFloat(s.c_t) * pow(mf, -1 / t - ipc) * sup;

    std::vector<BigFloat> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > N) {
            r.truncated = true;
            e[i] = v.back();
        } else {
            e[i] = v[alpha[i].convert_to<std::size_t>() - 1];
        }
    }
    BigFloat tail = 0, acc = 0;
    for (std::uint64_t k = n; k >= 1; --k) {
        tail += e[k - 1];
        acc += pow(pow(BigFloat(2), BigFloat(k) * ipc) * tail, p);
    }
    BigFloat second = 23 * BigFloat(s.tau_p) * pow(BigFloat(2), -BigFloat(n) * ipc) * pow(acc, 1 / p);
    r.first_term = first.convert_to<double>();
    r.second_term = second.convert_to<double>();
    r.bound = BigFloat(first + second).convert_to<double>();
    return r;
}

AlphaSchedule steinwart_alpha_schedule(std::uint64_t n, double a) {
    if (n < 2) fail_validation(kMod, "n must be >= 2");
    if (!(a > 0.0)) fail_validation(kMod, "schedule rate a must be positive");
    AlphaSchedule out;
    bool exact = true;
    for (std::uint64_t k = 1; k <= n; ++k) {
        double x = double(n) * std::exp2(a * double(k - 1));
        if (x > 300.0) exact = false;
        if (exact) {
            BigInt v(boost::multiprecision::floor(boost::multiprecision::pow(BigFloat(2), BigFloat(x))));
            out.decimal.push_back(v.str());
            out.log2_alphas.push_back(
                BigFloat(boost::multiprecision::log(BigFloat(v)) / boost::multiprecision::log(BigFloat(2)))
                    .convert_to<double>());
        } else {
            out.log2_alphas.push_back(x);
        }
    }
    if (!exact) out.decimal.clear();
    for (std::size_t i = 1; i < out.log2_alphas.size(); ++i)
        if (!(out.log2_alphas[i] > out.log2_alphas[i - 1]))
            fail_validation(kMod, "schedule is not strictly increasing; raise a or n");
    return out;
}

Tt02Params tt02_params(double p, double r, double s) {
    if (!(p > 1.0 && p <= 2.0)) fail_validation(kMod, "p must lie in (1, 2]");
    double pc = p / (p - 1.0);
    if (!(r > 0.0)) fail_validation(kMod, "r must be positive");
    if (!(r < pc)) fail_validation(kMod, "r >= p' is outside this parameter map; use the TT03 weights");
    if (!(s > 0.0) || !std::isfinite(s)) fail_validation(kMod, "s must lie in (0, infinity)");
    return Tt02Params{pc, 1.0 / s + 1.0 / pc - 1.0 / r};
}

// ---------------------------------------------------------------------------

WeightPreset WeightPreset::tt03(double r, double s, double alpha) {
    WeightPreset w;
    w.kind = Kind::TT03;
    w.r = r;
    w.s = s;
    w.alpha = alpha;
    w.validate();
    return w;
}

WeightPreset WeightPreset::tt03_sup(double r, double alpha) {
    WeightPreset w;
    w.kind = Kind::TT03;
    w.r = r;
    w.s_infinite = true;
    w.alpha = alpha;
    w.validate();
    return w;
}

WeightPreset WeightPreset::th03(double r) {
    WeightPreset w;
    w.kind = Kind::TH03;
    w.r = r;
    w.validate();
    return w;
}

WeightPreset WeightPreset::enhil(int enhil_case, double r, double beta) {
    WeightPreset w;
    w.kind = Kind::ENHIL;
    w.enhil_case = enhil_case;
    w.r = r;
    w.beta = beta;
    w.validate();
    return w;
}

void WeightPreset::validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) fail_validation(kMod, "weights need 0 < r < infinity");
    if (kind == Kind::TT03 && !s_infinite && !(s > 0.0 && std::isfinite(s)))
        fail_validation(kMod, "TT03 weights need 0 < s < infinity (or the sup form)");
    if (kind == Kind::ENHIL) {
        if (enhil_case == 1 && !(r < 2.0)) fail_validation(kMod, "ENHIL case (i) needs r < 2");
        if (enhil_case == 2 && r != 2.0) fail_validation(kMod, "ENHIL case (ii) needs r = 2");
        if (enhil_case == 3 && !(r > 2.0)) fail_validation(kMod, "ENHIL case (iii) needs r > 2");
        if (enhil_case < 1 || enhil_case > 3) fail_validation(kMod, "ENHIL case must be 1, 2 or 3");
    }
}

InequalityRatio finite_inequality_check(const MonotoneSeq& lhs, const MonotoneSeq& rhs,
                                        const WeightPreset& w, std::size_t N, double c_A) {
    w.validate();
    if (N < 1 || N > lhs.size() || N > rhs.size()) fail_validation(kMod, "N exceeds a sequence length");
    if (!(c_A > 0.0) || !std::isfinite(c_A)) fail_validation(kMod, "c_A must be positive and finite");
    auto lg = [](double k) { return std::log2(k + 1.0); };
    auto llg = [](double k) { return std::log2(std::log2(k + 3.0)); };
    double L = 0.0, R = 0.0;
    switch (w.kind) {
    case WeightPreset::Kind::TT03:
        for (std::size_t n = 1; n <= N; ++n) {
            double k = double(n);
            if (w.s_infinite) {
                double wt = std::pow(lg(k), -w.alpha) * std::pow(k, 1.0 / w.r);
                L = std::max(L, wt * lhs[n - 1]);
                R = std::max(R, wt * rhs[n - 1]);
            } else {
                double wt = std::pow(lg(k), -w.alpha) * std::pow(k, w.s / w.r - 1.0);
                L += wt * std::pow(lhs[n - 1], w.s);
                R += wt * std::pow(rhs[n - 1], w.s);
            }
        }
        R *= w.s_infinite ? c_A : std::pow(c_A, w.s);
        break;
    case WeightPreset::Kind::TH03:
        for (std::size_t n = 1; n <= N; ++n) {
            double wt = std::pow(double(n), 1.0 / w.r);
            L = std::max(L, wt * lhs[n - 1]);
            R = std::max(R, wt * rhs[n - 1]);
        }
        R *= c_A;
        break;
    case WeightPreset::Kind::ENHIL: {
        const double b = w.beta;
        for (std::size_t n = 1; n <= N; ++n) {
            double k = double(n), wl, wr;
            if (w.enhil_case == 1) {
                wl = std::pow(llg(k), b) * std::pow(lg(k), 1.0 / w.r - 0.5) * std::sqrt(k);
                wr = std::pow(lg(k), b) * std::pow(k, 1.0 / w.r);
            } else if (w.enhil_case == 2) {
                if (b < 1.0) wl = std::pow(lg(k), b - 1.0) * std::sqrt(k);
                else if (b == 1.0) wl = std::sqrt(k) / llg(k);
                else wl = std::pow(llg(k), b - 1.0) * std::sqrt(k);
                wr = std::pow(lg(k), b) * std::sqrt(k);
            } else {
                wl = wr = std::pow(lg(k), b) * std::pow(k, 1.0 / w.r);
            }
            L = std::max(L, wl * lhs[n - 1]);
            R = std::max(R, wr * rhs[n - 1]);
        }
        R += 1.0;
        break;
    }
    }
    return make_ratio(L, R);
}

double c_A_ratio(const HullSpec& spec) {
    spec.validate();
    const auto& g = spec.generators;
    double eps1 = kInf;
    for (const auto& c : g) {
        double far = 0.0;
        for (const auto& x : g) far = std::max(far, lp_distance(x, c, spec.ambient_p));
        eps1 = std::min(eps1, far);
    }
    if (!(eps1 > 0.0)) return kInf;
    return spec.max_generator_norm() / eps1;
}

HullSpec read_generators_csv(const std::string& path, double ambient_p) {
    PointCloud c = read_points_csv(path, ambient_p);
    HullSpec s{c.points(), ambient_p};
    s.validate();
    return s;
}

} // namespace entlab
