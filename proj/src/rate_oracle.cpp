#include "entlab/rate_oracle.hpp"

#include "entlab/error.hpp"
#include "entlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace entlab {

namespace {

constexpr const char* kMod = "operator";
constexpr double kTol = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Rel { Eq, Lt, Gt, Le, Ge };

struct Constraint {
    double a;
    Rel rel;
    double b;
    std::string text;
};

double violation(const Constraint& c) {
    double d = c.a - c.b;
    if (std::isnan(d) && !(std::isinf(c.a) && c.a == c.b)) return std::numeric_limits<double>::infinity();
    if (std::isinf(c.a) && c.a == c.b) d = 0.0;
    switch (c.rel) {
    case Rel::Eq: return std::abs(d) <= kTol ? 0.0 : std::abs(d);
    case Rel::Lt: return d < -kTol ? 0.0 : d + kTol;
    case Rel::Gt: return d > kTol ? 0.0 : -d + kTol;
    case Rel::Le: return d <= kTol ? 0.0 : d;
    case Rel::Ge: return d >= -kTol ? 0.0 : -d;
    }
    return 0.0;
}

struct Case {
    std::string label;
    std::string regime;
    std::vector<Constraint> cons;
    RateFormula formula;
};

struct Vals {
    double p = kNaN, q = kNaN, tau = kNaN, beta = 0.0, gamma = 0.0, alpha = kNaN, delta = kNaN, theta = kNaN,
           rho = kNaN, kappa = 0.0;
    bool exponential = false;
};

RateFormula rf(double p0, double q0, double r0) { return RateFormula{1.0, p0, q0, r0}; }

std::vector<Case> build_cases(RateTable t, const Vals& v) {
    const double pc = v.p / (v.p - 1.0); // conjugate exponent p'
    const double ipc = 1.0 / pc, ip = 1.0 / v.p;
    const double half = 0.5;
    std::vector<Case> c;
    switch (t) {
    case RateTable::TH02:
        c.push_back({"(i)", "k = x^-tau, 0 < tau < 1/p'",
                     {{v.tau, Rel::Gt, 0.0, "tau > 0"}, {v.tau, Rel::Lt, ipc, "tau < 1/p'"}, {v.beta, Rel::Eq, 0.0, "beta = 0"}},
                     rf(1.0 - v.tau, 0.0, 0.0)});
        c.push_back({"(ii) 1/p'<beta<1", "tau = 1/p', 1/p' < beta < 1",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Gt, ipc, "beta > 1/p'"}, {v.beta, Rel::Lt, 1.0, "beta < 1"}},
                     rf(v.beta - ipc, 0.0, 0.0)});
        c.push_back({"(ii) beta>1", "tau = 1/p', 1 < beta",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Gt, 1.0, "beta > 1"}},
                     rf(ip, v.beta - 1.0, 0.0)});
        c.push_back({"(ii) beta=1", "tau = 1/p', beta = 1",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Eq, 1.0, "beta = 1"}},
                     rf(ip, -1.0, 0.0)});
        break;
    case RateTable::TH04:
        c.push_back({"P1", "0 < tau < 1/p'",
                     {{v.tau, Rel::Gt, 0.0, "tau > 0"}, {v.tau, Rel::Lt, ipc, "tau < 1/p'"}},
                     rf(1.0 - v.tau, v.beta, v.gamma)});
        c.push_back({"P2", "tau = 1/p', 1/p' < beta < 1",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Gt, ipc, "beta > 1/p'"}, {v.beta, Rel::Lt, 1.0, "beta < 1"}},
                     rf(v.beta - ipc, v.gamma, 0.0)});
        c.push_back({"P3", "tau = 1/p', 1 < beta",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Gt, 1.0, "beta > 1"}},
                     rf(ip, v.beta - 1.0, v.gamma)});
        c.push_back({"P4", "tau = 1/p', beta = 1, gamma < 1",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Eq, 1.0, "beta = 1"}, {v.gamma, Rel::Lt, 1.0, "gamma < 1"}},
                     rf(ip, v.gamma - 1.0, 0.0)});
        c.push_back({"P5", "tau = 1/p', beta = 1, gamma >= 1 (any delta > 0)",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Eq, 1.0, "beta = 1"}, {v.gamma, Rel::Ge, 1.0, "gamma >= 1"}},
                     rf(ip, -v.delta, 0.0)});
        c.push_back({"P6", "tau = beta = 1/p', 1/p' < gamma",
                     {{v.tau, Rel::Eq, ipc, "tau = 1/p'"}, {v.beta, Rel::Eq, ipc, "beta = 1/p'"}, {v.gamma, Rel::Gt, ipc, "gamma > 1/p'"}},
                     rf(0.0, v.gamma - ipc, 0.0)});
        break;
    case RateTable::ENTKH:
        c.push_back({"G1", "0 < tau < 1/2",
                     {{v.tau, Rel::Gt, 0.0, "tau > 0"}, {v.tau, Rel::Lt, half, "tau < 1/2"}},
                     rf(1.0 - v.tau, v.beta, v.gamma)});
        c.push_back({"G2", "tau = 1/2, 1/2 < beta < 1",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Gt, half, "beta > 1/2"}, {v.beta, Rel::Lt, 1.0, "beta < 1"}},
                     rf(v.beta - half, v.gamma, 0.0)});
        c.push_back({"G3", "tau = 1/2, 1 < beta",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Gt, 1.0, "beta > 1"}},
                     rf(half, v.beta - 1.0, v.gamma)});
        c.push_back({"G4", "tau = 1/2, beta = 1, gamma < 1",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Eq, 1.0, "beta = 1"}, {v.gamma, Rel::Lt, 1.0, "gamma < 1"}},
                     rf(half, v.gamma - 1.0, 0.0)});
        c.push_back({"G5", "tau = 1/2, beta = 1, gamma = 1",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Eq, 1.0, "beta = 1"}, {v.gamma, Rel::Eq, 1.0, "gamma = 1"}},
                     rf(half, 0.0, -1.0)});
        c.push_back({"G6", "tau = 1/2, beta = 1, 1 < gamma",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Eq, 1.0, "beta = 1"}, {v.gamma, Rel::Gt, 1.0, "gamma > 1"}},
                     rf(half, 0.0, v.gamma - 1.0)});
        c.push_back({"G7", "tau = beta = 1/2, 1/2 < gamma",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Eq, half, "beta = 1/2"}, {v.gamma, Rel::Gt, half, "gamma > 1/2"}},
                     rf(0.0, v.gamma - half, 0.0)});
        break;
    case RateTable::ENTKH2:
        c.push_back({"J1", "0 < tau < 1/2",
                     {{v.tau, Rel::Gt, 0.0, "tau > 0"}, {v.tau, Rel::Lt, half, "tau < 1/2"}},
                     rf(1.0 - v.tau, v.beta, v.gamma)});
        c.push_back({"J2", "tau = 1/2, 1/2 < beta",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Gt, half, "beta > 1/2"}},
                     rf(half, v.beta - half, v.gamma)});
        c.push_back({"J3", "tau = beta = 1/2, 1/2 < gamma",
                     {{v.tau, Rel::Eq, half, "tau = 1/2"}, {v.beta, Rel::Eq, half, "beta = 1/2"}, {v.gamma, Rel::Gt, half, "gamma > 1/2"}},
                     rf(half, 0.0, v.gamma - half)});
        break;
    case RateTable::RL03: {
        double ipq = 1.0 / v.p - 1.0 / v.q;
        if (std::isinf(v.p) && std::isinf(v.q)) ipq = 0.0;
        c.push_back({"RL03", "alpha > max(1/p - 1/q, 0), 1 <= p, q <= inf",
                     {{v.alpha, Rel::Gt, std::max(ipq, 0.0), "alpha > max(1/p-1/q, 0)"}, {v.p, Rel::Ge, 1.0, "p >= 1"},
                      {v.q, Rel::Ge, 1.0, "q >= 1"}},
                     rf(v.alpha, 0.0, 0.0)});
        break;
    }
    case RateTable::RL05: {
        double s = v.alpha - ip;
        c.push_back({"RL05", "alpha > 1/p, delta >= 1 (theta <= 0 when delta = 1)",
                     {{v.alpha, Rel::Gt, ip, "alpha > 1/p"}, {v.delta, Rel::Ge, 1.0, "delta >= 1"},
                      {std::abs(v.delta - 1.0) <= kTol ? v.theta : 0.0, Rel::Le, 0.0, "theta <= 0 when delta = 1"}},
                     rf(ip + v.delta * s, -v.theta * s, 0.0)});
        break;
    }
    case RateTable::RL06: {
        double poly = v.exponential ? 1.0 : 0.0;
        c.push_back({"(i) 1/2<beta<1", "polynomial set decay delta >= 1, 1/2 < beta < 1",
                     {{poly, Rel::Eq, 0.0, "polynomial set decay"}, {v.delta, Rel::Ge, 1.0, "delta >= 1"},
                      {v.beta, Rel::Gt, half, "beta > 1/2"}, {v.beta, Rel::Lt, 1.0, "beta < 1"}},
                     rf(v.beta - half, 0.0, 0.0)});
        c.push_back({"(i) beta=1", "polynomial set decay delta >= 1, beta = 1",
                     {{poly, Rel::Eq, 0.0, "polynomial set decay"}, {v.delta, Rel::Ge, 1.0, "delta >= 1"},
                      {v.beta, Rel::Eq, 1.0, "beta = 1"}},
                     rf(half, -1.0, 0.0)});
        c.push_back({"(i) beta>1", "polynomial set decay delta >= 1, 1 < beta",
                     {{poly, Rel::Eq, 0.0, "polynomial set decay"}, {v.delta, Rel::Ge, 1.0, "delta >= 1"},
                      {v.beta, Rel::Gt, 1.0, "beta > 1"}},
                     rf(half, v.beta - 1.0, 0.0)});
        c.push_back({"(ii)", "exponential set decay delta > 0, 1/2 < beta",
                     {{poly, Rel::Eq, 1.0, "exponential set decay"}, {v.delta, Rel::Gt, 0.0, "delta > 0"},
                      {v.beta, Rel::Gt, half, "beta > 1/2"}},
                     rf(half + v.delta * (v.beta - half), 0.0, 0.0)});
        break;
    }
    case RateTable::THSV:
        c.push_back({"THSV", "0 < tau < 1/p', l(y) ~ (log y)^log_exponent",
                     {{v.tau, Rel::Gt, 0.0, "tau > 0"}, {v.tau, Rel::Lt, ipc, "tau < 1/p'"}},
                     rf(1.0 - v.tau, -v.kappa, 0.0)});
        break;
    case RateTable::RL04_I:
        c.push_back({"RL04(i)", "eps_k(A,d) <= k^-rho (log(k+1))^-gamma, rho > 0",
                     {{v.rho, Rel::Gt, 0.0, "rho > 0"}},
                     rf(v.rho + ip, v.gamma, 0.0)});
        break;
    }
    return c;
}

struct Requirement {
    const char* name;
    const std::optional<double>* value;
};

Vals collect(RateTable t, const OracleParams& in) {
    std::vector<Requirement> req;
    auto need = [&](const char* n, const std::optional<double>& v) { req.push_back({n, &v}); };
    bool needs_p_type = false;
    switch (t) {
    case RateTable::TH02:
    case RateTable::TH04:
    case RateTable::THSV:
        need("p", in.p);
        need("tau", in.tau);
        needs_p_type = true;
        break;
    case RateTable::ENTKH:
    case RateTable::ENTKH2: need("tau", in.tau); break;
    case RateTable::RL03:
        need("p", in.p);
        need("q", in.q);
        need("alpha", in.alpha);
        break;
    case RateTable::RL05:
        need("p", in.p);
        need("alpha", in.alpha);
        need("delta", in.delta);
        need("theta", in.theta);
        needs_p_type = true;
        break;
    case RateTable::RL06:
        need("delta", in.delta);
        if (!in.set_decay) fail_validation(kMod, "RL06 needs set_decay (polynomial or exponential)");
        break;
    case RateTable::RL04_I:
        need("p", in.p);
        need("rho", in.rho);
        needs_p_type = true;
        break;
    }
    for (const auto& r : req)
        if (!r.value->has_value()) fail_validation(kMod, to_string(t) + " needs parameter '" + r.name + "'");
    if (needs_p_type && !(*in.p >= 2.0 && std::isfinite(*in.p)))
        fail_validation(kMod, to_string(t) + " needs 2 <= p < infinity");
    Vals v;
    auto take = [](const std::optional<double>& o, double dflt) { return o ? *o : dflt; };
    v.p = take(in.p, kNaN);
    v.q = take(in.q, kNaN);
    v.tau = take(in.tau, kNaN);
    v.beta = take(in.beta, 0.0);
    v.gamma = take(in.gamma, 0.0);
    v.alpha = take(in.alpha, kNaN);
    v.delta = take(in.delta, kNaN);
    v.theta = take(in.theta, kNaN);
    v.rho = take(in.rho, kNaN);
    v.kappa = take(in.log_exponent, 0.0);
    v.exponential = in.set_decay == SetDecay::Exponential;
    return v;
}

} // namespace

std::string to_string(RateTable t) {
    switch (t) {
    case RateTable::TH02: return "TH02";
    case RateTable::TH04: return "TH04";
    case RateTable::ENTKH: return "ENTKH";
    case RateTable::ENTKH2: return "ENTKH2";
    case RateTable::RL03: return "RL03";
    case RateTable::RL05: return "RL05";
    case RateTable::RL06: return "RL06";
    case RateTable::THSV: return "THSV";
    case RateTable::RL04_I: return "RL04_i";
    }
    return "?";
}

const std::vector<RateTable>& all_rate_tables() {
    static const std::vector<RateTable> t{RateTable::TH02, RateTable::TH04, RateTable::ENTKH,
                                          RateTable::ENTKH2, RateTable::RL03, RateTable::RL05,
                                          RateTable::RL06, RateTable::THSV, RateTable::RL04_I};
    return t;
}

RateTable parse_rate_table(const std::string& name) {
    std::string up;
    for (char ch : name) up += char(std::toupper(static_cast<unsigned char>(ch)));
    for (auto t : all_rate_tables()) {
        std::string label = to_string(t);
        std::string lu;
        for (char ch : label) lu += char(std::toupper(static_cast<unsigned char>(ch)));
        if (lu == up) return t;
    }
    fail_validation(kMod, "unknown rate table '" + name + "'");
}

std::vector<std::string> rate_case_labels(RateTable table) {
    std::vector<std::string> out;
    for (const auto& c : build_cases(table, Vals{})) out.push_back(c.label);
    return out;
}

OracleResult rate_oracle(RateTable table, const OracleParams& params) {
    Vals v = collect(table, params);
    auto cases = build_cases(table, v);
    std::vector<const Case*> hits;
    const Case* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cases) {
        double total = 0.0;
        for (const auto& k : c.cons) total += violation(k);
        if (total == 0.0) hits.push_back(&c);
        if (total < best) {
            best = total;
            nearest = &c;
        }
    }
    if (hits.size() > 1) fail_numeric(kMod, to_string(table) + ": cases overlap for these parameters");
    if (hits.empty()) {
        std::string unmet;
        for (const auto& k : nearest->cons)
            if (violation(k) > 0.0) unmet += (unmet.empty() ? "" : ", ") + k.text;
        fail_validation(kMod, to_string(table) + ": parameters fall outside every case; nearest is " +
                                  nearest->label + " (" + nearest->regime + "), which needs " + unmet);
    }
    const Case& c = *hits.front();
    if (table == RateTable::TH04 && c.label == "P5" && !(params.delta && *params.delta > 0.0))
        fail_validation(kMod, "TH04 case P5 holds for any delta > 0; supply delta");
    OracleResult r;
    r.table = table;
    r.case_label = c.label;
    r.regime = c.regime;
    r.formula = c.formula;
    if (table == RateTable::THSV) {
        double pc = v.p / (v.p - 1.0);
        r.aux_beta = 1.0 + (pc - 1.0) / (1.0 - v.tau * pc);
    }
    return r;
}

} // namespace entlab
