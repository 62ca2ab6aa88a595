// entlab command-line runner.
#include "entlab/error.hpp"
#include "entlab/hull.hpp"
#include "entlab/io.hpp"
#include "entlab/kernel.hpp"
#include "entlab/metricspace.hpp"
#include "entlab/operators.hpp"
#include "entlab/rate_oracle.hpp"
#include "entlab/rates.hpp"
#include "entlab/seqspace.hpp"
#include "entlab/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

using namespace entlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_norm(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "INFINITY") return kInf;
    return parse_double(s, "norm");
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_double(item, what));
    return out;
}

std::string fmt(double x) { return format_double(x); }

const char* ratio_status(RatioStatus s) {
    switch (s) {
    case RatioStatus::Finite: return "FINITE";
    case RatioStatus::ZeroOverZero: return "ZERO_OVER_ZERO";
    case RatioStatus::Violated: return "VIOLATED";
    }
    return "";
}

// Function samples on the operator grid: column "value" or the first column.
std::vector<double> read_samples(const std::string& path) {
    CsvTable t = read_csv(path);
    std::size_t col = 0;
    for (std::size_t j = 0; j < t.header.size(); ++j)
        if (t.header[j] == "value") col = j;
    std::vector<double> v;
    for (const auto& r : t.rows) v.push_back(parse_double(r.at(col), path));
    return v;
}

// ------------------------------------------------------------------ output

struct Series {
    std::string label;
    std::vector<double> x, y;
    bool dashed = false;
};

struct Output {
    std::string path;
    std::string plot_path;
    std::string hash;
    std::ofstream file;
    std::ostream* out = &std::cout;
    std::unique_ptr<CsvWriter> csv;

    void begin(const std::vector<std::string>& header) {
        if (!path.empty()) {
            file.open(path);
            if (!file) fail_validation("cli", "cannot open output file " + path);
            out = &file;
        }
        csv = std::make_unique<CsvWriter>(*out, hash, header);
    }
    void row(const std::vector<std::string>& r) { csv->row(r); }

    void plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
              const std::vector<Series>& series) const {
        if (plot_path.empty()) return;
        std::ofstream py(plot_path);
        if (!py) fail_validation("cli", "cannot open plot file " + plot_path);
        py << "# config_hash=" << hash << "\n";
        py << "import matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n\n";
        py << "series = [\n";
        for (const auto& s : series) {
            py << "    (" << std::quoted(s.label) << ", " << (s.dashed ? "'--'" : "'o-'") << ", [";
            for (std::size_t i = 0; i < s.x.size(); ++i) py << (i ? ", " : "") << fmt(s.x[i]);
            py << "], [";
            for (std::size_t i = 0; i < s.y.size(); ++i) py << (i ? ", " : "") << fmt(s.y[i]);
            py << "]),\n";
        }
        py << "]\n\nfig, ax = plt.subplots(figsize=(6, 4.5))\n";
        py << "for label, style, xs, ys in series:\n";
        py << "    pts = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]\n";
        py << "    if pts:\n";
        py << "        ax.loglog([p[0] for p in pts], [p[1] for p in pts], style, label=label, markersize=3)\n";
        py << "ax.set_title(" << std::quoted(title) << ")\n";
        py << "ax.set_xlabel(" << std::quoted(xlabel) << ")\nax.set_ylabel(" << std::quoted(ylabel) << ")\n";
        py << "ax.legend()\nfig.tight_layout()\n";
        std::string png = plot_path;
        if (png.size() > 3 && png.substr(png.size() - 3) == ".py") png = png.substr(0, png.size() - 3);
        py << "fig.savefig(" << std::quoted(png + ".png") << ", dpi=150)\n";
    }
};

// Predicted curve C*rate scaled to pass through the first positive data point.
Series prediction(const RateFormula& f, const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& label) {
    Series s{label, {}, {}, true};
    double scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (ys[i] > 0.0) {
            scale = ys[i] / eval_rate(f, xs[i]);
            break;
        }
    for (double x : xs) {
        s.x.push_back(x);
        s.y.push_back(scale * eval_rate(f, x));
    }
    return s;
}

// ------------------------------------------------------------------ kernels

struct KernelOpts {
    std::string family = "power";
    std::string mode = "VO";
    double tau = 0.25, beta = 0.0, gamma = 0.0, c0 = 1.0;

    void add(CLI::App* app) {
        app->add_option("--family", family, "power | logpower | doublelog")->capture_default_str();
        app->add_option("--mode", mode, "VO | WS")->capture_default_str();
        app->add_option("--tau", tau)->capture_default_str();
        app->add_option("--beta", beta)->capture_default_str();
        app->add_option("--gamma", gamma)->capture_default_str();
        app->add_option("--c0", c0)->capture_default_str();
    }

    KernelSpec spec() const {
        KernelMode m;
        if (mode == "VO" || mode == "vo") m = KernelMode::VO;
        else if (mode == "WS" || mode == "ws") m = KernelMode::WS;
        else fail_validation("kernel", "mode must be VO or WS");
        KernelSpec s;
        if (family == "power") s = KernelSpec::power(tau, m);
        else if (family == "logpower") s = KernelSpec::logpower(tau, beta, c0, m);
        else if (family == "doublelog") s = KernelSpec::doublelog(tau, beta, gamma, c0, m);
        else fail_validation("kernel", "family must be power, logpower or doublelog");
        for (const auto& w : s.warnings()) std::cerr << "warning: " << w << "\n";
        return s;
    }
};

// ------------------------------------------------------------------ hull

struct GeneratorOpts {
    std::string generators, diag_seq, optimality;
    std::size_t dim = 0;
    std::string p = "2";

    void add(CLI::App* app) {
        app->add_option("--generators", generators, "CSV of generator points");
        app->add_option("--diag-seq", diag_seq, "sequence CSV; generators sigma_k u_k");
        app->add_option("--optimality", optimality, "r,gamma: diagonal generators from the optimality sequence");
        app->add_option("--dim", dim, "dimension for --diag-seq / --optimality");
        app->add_option("--p", p, "ambient l_p norm (inf allowed)")->capture_default_str();
    }

    MonotoneSeq sigma() const {
        if (!diag_seq.empty()) return read_sequence_csv(diag_seq);
        if (!optimality.empty()) {
            auto rg = parse_list(optimality, "optimality");
            if (rg.size() != 2) fail_validation("hull", "--optimality expects r,gamma");
            if (dim < 1) fail_validation("hull", "--optimality needs --dim");
            return optimality_sequence(rg[0], rg[1], dim);
        }
        fail_validation("hull", "give --diag-seq or --optimality");
    }

    HullSpec spec() const {
        double pp = parse_norm(p);
        if (!generators.empty()) return read_generators_csv(generators, pp);
        MonotoneSeq s = sigma();
        return diag_set(s, pp, dim ? dim : s.size());
    }
};

// ------------------------------------------------------------------ config

// key=value lines; '#' starts a comment. Keys name long options.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_validation("cli", "cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail_validation("cli", path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.rfind("--", 0) == 0) k = k.substr(2);
        kv.push_back({k, v});
    }
    return kv;
}

// Command-line flags win over file values: file entries are appended only for
// keys the command line does not mention.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string cfg;
    std::vector<std::string> kept;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            cfg = args[++i];
            continue;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            cfg = args[i].substr(9);
            continue;
        }
        if (args[i].rfind("--", 0) == 0) given.insert(args[i].substr(2, args[i].find('=') - 2));
        kept.push_back(args[i]);
    }
    if (cfg.empty()) return kept;
    for (const auto& [k, v] : read_config(cfg)) {
        if (given.count(k)) continue;
        if (v == "true") kept.push_back("--" + k);
        else if (v == "false") continue;
        else {
            kept.push_back("--" + k);
            kept.push_back(v);
        }
    }
    return kept;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> raw(argv + 1, argv + argc);
    std::vector<std::string> args;
    try {
        args = merge_config(raw);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }

    CLI::App app{"entlab: metric entropy laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    std::string config_unused;
    app.add_option("--config", config_unused, "key=value file; command-line flags override it");
    app.add_option("--output,-o", out.path, "CSV output file (default stdout)");
    app.add_option("--plot", out.plot_path, "write a matplotlib script here");

    // ---------------------------------------------------------------- cover
    auto* cover = app.add_subcommand("cover", "covering numbers and entropy numbers of a point set");
    std::string cov_input, cov_norm = "2", cov_method = "all";
    bool cov_table = false;
    double cov_eps = 0.0;
    std::size_t cov_entropy = 0, cov_cap = 25;
    cover->add_option("--input", cov_input, "points CSV (or distance matrix with --table)")->required();
    cover->add_flag("--table", cov_table, "input is a square distance matrix");
    cover->add_option("--norm", cov_norm, "l_p norm of the points (inf allowed)")->capture_default_str();
    cover->add_option("--eps", cov_eps, "covering radius");
    cover->add_option("--method", cov_method, "exact | greedy | packing | all")->capture_default_str();
    cover->add_option("--entropy", cov_entropy, "compute eps_1..eps_N instead of a single cover");
    cover->add_option("--max-exact", cov_cap, "branch-and-bound size cap")->capture_default_str();

    // ---------------------------------------------------------------- hull
    auto* hull = app.add_subcommand("hull", "absolutely convex hulls and hull-entropy bounds");
    hull->require_subcommand(1);
    GeneratorOpts gen;
    double h_mesh = 0.1;
    std::size_t h_n = 8;
    auto* h_bounds = hull->add_subcommand("bounds", "lower/upper entropy bounds of aco(A) for n = 1..N");
    gen.add(h_bounds);
    h_bounds->add_option("--mesh", h_mesh)->capture_default_str();
    h_bounds->add_option("--n", h_n, "largest n")->capture_default_str();
    auto* h_net = hull->add_subcommand("net", "lattice net of aco(A)");
    gen.add(h_net);
    h_net->add_option("--mesh", h_mesh)->capture_default_str();
    auto* h_ca = hull->add_subcommand("ca", "sup ||t|| / eps_1(A)");
    gen.add(h_ca);
    std::string h_u;
    auto* h_support = hull->add_subcommand("support", "support function h(u)");
    gen.add(h_support);
    h_support->add_option("--u", h_u, "direction, comma separated")->required();

    std::string st_data, st_alphas, st_log2;
    double st_p = 2, st_t = 1, st_ct = 1, st_taup = 1, st_a = 0;
    std::uint64_t st_n = 2;
    bool st_exact = false;
    auto* h_st = hull->add_subcommand("steinwart", "m-formula and two-term upper bound");
    h_st->add_option("--data", st_data, "sequence CSV of eps_i(A)")->required();
    h_st->add_option("--n", st_n)->capture_default_str();
    h_st->add_option("--p", st_p, "type parameter in (1,2]")->capture_default_str();
    h_st->add_option("--t", st_t)->capture_default_str();
    h_st->add_option("--c-t", st_ct, "constant c(t) (unnormalised default 1)")->capture_default_str();
    h_st->add_option("--tau-p", st_taup, "type-p constant (unnormalised default 1)")->capture_default_str();
    h_st->add_option("--alphas", st_alphas, "alpha_1,...,alpha_n");
    h_st->add_option("--log2-alphas", st_log2, "log2 alpha_1,...,log2 alpha_n");
    h_st->add_option("--schedule-a", st_a, "use alpha_k = floor(2^{n 2^{a(k-1)}})");
    h_st->add_flag("--exact", st_exact, "big-integer evaluation (needs integer alphas)");

    std::string l_sigma, l_opt, l_p = "2";
    std::uint64_t l_n = 1, l_m = 2, l_len = 1 << 12;
    double l_c = 1.0;
    auto* h_l02 = hull->add_subcommand("l02", "diagonal-set lower bound");
    h_l02->add_option("--sigma", l_sigma, "sequence CSV");
    h_l02->add_option("--optimality", l_opt, "r,gamma");
    h_l02->add_option("--length", l_len, "length of the optimality sequence")->capture_default_str();
    h_l02->add_option("--p", l_p)->capture_default_str();
    h_l02->add_option("--n", l_n)->capture_default_str();
    h_l02->add_option("--c", l_c)->capture_default_str();
    auto* h_sgg = hull->add_subcommand("schuett", "identity l_1^m -> l_p^m lower bound");
    h_sgg->add_option("--n", l_n)->capture_default_str();
    h_sgg->add_option("--m", l_m)->capture_default_str();
    h_sgg->add_option("--p", l_p)->capture_default_str();
    h_sgg->add_option("--c", l_c)->capture_default_str();
    double tt_p = 2, tt_r = 1, tt_s = 1;
    auto* h_tt = hull->add_subcommand("tt02", "target Lorentz parameters");
    h_tt->add_option("--p", tt_p)->capture_default_str();
    h_tt->add_option("--r", tt_r)->capture_default_str();
    h_tt->add_option("--s", tt_s)->capture_default_str();

    std::string ck_lhs, ck_rhs, ck_preset = "tt03", ck_s = "1";
    double ck_r = 2, ck_alpha = 0, ck_beta = 0, ck_ca = 1;
    int ck_case = 1;
    std::size_t ck_N = 0;
    auto* h_check = hull->add_subcommand("check", "weighted finite inequality ratio");
    h_check->add_option("--lhs", ck_lhs)->required();
    h_check->add_option("--rhs", ck_rhs)->required();
    h_check->add_option("--preset", ck_preset, "tt03 | th03 | enhil")->capture_default_str();
    h_check->add_option("--r", ck_r)->capture_default_str();
    h_check->add_option("--s", ck_s, "secondary index (inf for the sup form)")->capture_default_str();
    h_check->add_option("--alpha", ck_alpha)->capture_default_str();
    h_check->add_option("--case", ck_case, "ENHIL case 1, 2 or 3")->capture_default_str();
    h_check->add_option("--beta", ck_beta)->capture_default_str();
    h_check->add_option("--N", ck_N, "number of terms (default: shorter length)");
    h_check->add_option("--c-a", ck_ca)->capture_default_str();

    // ---------------------------------------------------------------- kernel
    auto* kernel = app.add_subcommand("kernel", "singular kernels and the pseudo-metric on [0,1]");
    kernel->require_subcommand(1);
    KernelOpts kopt;
    kopt.add(kernel);
    double k_q = 2.0, k_r = 1.0, k_s = 0.0, k_t = 1.0;
    std::size_t k_grid = 65, k_nmax = 16;
    std::string k_method = "greedy";
    bool k_fit = false;
    kernel->add_option("--q", k_q)->capture_default_str();
    auto* k_int = kernel->add_subcommand("integral", "(int_0^r k^q)^{1/q}");
    k_int->add_option("--r", k_r)->capture_default_str();
    auto* k_metric = kernel->add_subcommand("metric", "d(s,t)");
    auto* k_sand = kernel->add_subcommand("sandwich", "two-sided bracket for d(s,t)");
    for (auto* c : {k_metric, k_sand}) {
        c->add_option("--s", k_s)->capture_default_str();
        c->add_option("--t", k_t)->capture_default_str();
    }
    auto* k_rate = kernel->add_subcommand("rate", "entropy rate of ([0,1], d)");
    auto* k_table = kernel->add_subcommand("table", "distance matrix of d on a uniform grid");
    k_table->add_option("--grid", k_grid)->capture_default_str();
    auto* k_ent = kernel->add_subcommand("entropy", "entropy numbers of the sampled ([0,1], d)");
    k_ent->add_option("--grid", k_grid)->capture_default_str();
    k_ent->add_option("--n-max", k_nmax)->capture_default_str();
    k_ent->add_option("--method", k_method, "exact | greedy")->capture_default_str();
    k_ent->add_flag("--fit", k_fit, "fit a rate to the entropy numbers");

    // ---------------------------------------------------------------- operator
    auto* oper = app.add_subcommand("operator", "discretised convolution and Riemann-Liouville operators");
    oper->require_subcommand(1);
    std::size_t o_grid = 256;
    int o_order = 5;
    double o_alpha = 0.5;
    KernelOpts okopt;
    auto* o_rl = oper->add_subcommand("rl", "Riemann-Liouville operator");
    o_rl->add_option("--alpha", o_alpha)->capture_default_str();
    auto* o_k = oper->add_subcommand("kernel", "convolution operator with a kernel family");
    okopt.add(o_k);
    for (auto* c : {o_rl, o_k}) {
        c->add_option("--grid", o_grid)->capture_default_str();
        c->add_option("--order", o_order, "interpolation order")->capture_default_str();
        c->require_subcommand(1);
    }
    bool o_fit = false;
    std::size_t o_fit_lo = 0, o_fit_hi = 0, o_nmax = 32;
    std::string o_input;
    double o_p = 2, o_delta = 0.25, o_q = 2, o_c = 1;
    std::string o_kind = "rademacher";
    std::uint64_t o_m = 4;
    struct Actions {
        CLI::App *sv, *apply, *shift, *rieli, *net = nullptr;
    };
    auto add_actions = [&](CLI::App* parent, bool nets) {
        Actions a;
        a.sv = parent->add_subcommand("sv", "singular values on L_2");
        a.sv->add_flag("--fit", o_fit, "fit the decay exponent on n in [grid/32, grid/8]");
        a.sv->add_option("--fit-min", o_fit_lo, "override the fit window start");
        a.sv->add_option("--fit-max", o_fit_hi, "override the fit window end");
        a.apply = parent->add_subcommand("apply", "apply to grid samples");
        a.apply->add_option("--input", o_input, "sequence-free CSV with header value")->required();
        a.shift = parent->add_subcommand("shift", "shift-modulus bound for Tf");
        a.shift->add_option("--input", o_input)->required();
        a.shift->add_option("--p", o_p)->capture_default_str();
        a.shift->add_option("--delta", o_delta)->capture_default_str();
        a.rieli = parent->add_subcommand("rieli", "singular-number bound for n = 1..N");
        a.rieli->add_option("--q", o_q)->capture_default_str();
        a.rieli->add_option("--c", o_c)->capture_default_str();
        a.rieli->add_option("--n-max", o_nmax)->capture_default_str();
        if (nets) {
            a.net = parent->add_subcommand("net", "distance-net lower bound");
            a.net->add_option("--kind", o_kind, "rademacher | atoms | means")->capture_default_str();
            a.net->add_option("--m", o_m, "n for rademacher, m otherwise")->capture_default_str();
            a.net->add_option("--p", o_p)->capture_default_str();
        }
        return a;
    };
    Actions rl_act = add_actions(o_rl, false), k_act = add_actions(o_k, true);

    double sg_alpha = 0.5, sg_beta = 0.5;
    std::string sg_poly = "1";
    auto* o_semi = oper->add_subcommand("semigroup", "max |R_a R_b f - R_{a+b} f| for a polynomial f");
    o_semi->add_option("--alpha", sg_alpha)->capture_default_str();
    o_semi->add_option("--beta", sg_beta)->capture_default_str();
    o_semi->add_option("--poly", sg_poly, "coefficients c0,c1,...")->capture_default_str();
    o_semi->add_option("--grid", o_grid)->capture_default_str();
    std::string r4_data, r4_variant = "II";
    double r4_rho = 1, r4_gamma = 0, r4_p = 2;
    std::uint64_t r4_n = 4;
    auto* o_rl04 = oper->add_subcommand("rl04", "right-hand sides of the Riemann-Liouville bounds");
    o_rl04->add_option("--data", r4_data)->required();
    o_rl04->add_option("--variant", r4_variant, "I | II")->capture_default_str();
    o_rl04->add_option("--rho", r4_rho)->capture_default_str();
    o_rl04->add_option("--gamma", r4_gamma)->capture_default_str();
    o_rl04->add_option("--p", r4_p)->capture_default_str();
    o_rl04->add_option("--n", r4_n)->capture_default_str();

    // ---------------------------------------------------------------- hardy
    auto* hardy = app.add_subcommand("hardy", "Lorentz functionals and Hardy-type inequalities");
    hardy->require_subcommand(1);
    std::string hd_input, hd_s = "1";
    double hd_r = 2, hd_alpha = 0, hd_t = 1;
    std::size_t hd_N = 0;
    auto* hd_lor = hardy->add_subcommand("lorentz", "partial Lorentz quasi-norm");
    auto* hd_dy = hardy->add_subcommand("dyadic", "dyadic subsequence");
    auto* hd_prof = hardy->add_subcommand("profile", "functional of an entropy profile");
    auto* hd_lh1 = hardy->add_subcommand("lh1", "sum-form averaging inequality");
    auto* hd_lh2 = hardy->add_subcommand("lh2", "sup-form averaging inequality");
    for (auto* c : {hd_lor, hd_dy, hd_prof, hd_lh1, hd_lh2}) c->add_option("--input", hd_input)->required();
    for (auto* c : {hd_lor, hd_prof, hd_lh1, hd_lh2}) {
        c->add_option("--r", hd_r)->capture_default_str();
        c->add_option("--alpha", hd_alpha)->capture_default_str();
    }
    for (auto* c : {hd_lor, hd_prof, hd_lh1}) c->add_option("--s", hd_s, "inf allowed where meaningful")->capture_default_str();
    for (auto* c : {hd_lh1, hd_lh2}) c->add_option("--t", hd_t)->capture_default_str();
    for (auto* c : {hd_lor, hd_lh1, hd_lh2}) c->add_option("--N", hd_N, "terms (default: full length)");

    // ---------------------------------------------------------------- fit
    auto* fit = app.add_subcommand("fit", "fit or evaluate C n^-p0 (log n)^-q0 (loglog n)^-r0");
    std::string f_input, f_terms = "powerlog";
    std::uint64_t f_lo = 2, f_hi = 0;
    fit->add_option("--input", f_input, "CSV with header value, or n,value");
    fit->add_option("--n-min", f_lo)->capture_default_str();
    fit->add_option("--n-max", f_hi, "default: sequence length");
    fit->add_option("--terms", f_terms, "power | powerlog | full")->capture_default_str();
    RateFormula ev;
    std::string ev_n = "1";
    auto* f_eval = fit->add_subcommand("eval", "evaluate a rate formula");
    f_eval->add_option("--C", ev.C)->capture_default_str();
    f_eval->add_option("--p0", ev.p0)->capture_default_str();
    f_eval->add_option("--q0", ev.q0)->capture_default_str();
    f_eval->add_option("--r0", ev.r0)->capture_default_str();
    f_eval->add_option("--n", ev_n, "comma separated n values")->capture_default_str();

    // ---------------------------------------------------------------- oracle
    auto* oracle = app.add_subcommand("oracle", "regime-table rate prediction");
    std::string or_table;
    std::string or_decay;
    bool or_list = false;
    OracleParams op;
    auto opt_d = [&](const char* name, std::optional<double>& slot) {
        oracle->add_option_function<double>(std::string("--") + name, [&slot](const double& v) { slot = v; });
    };
    oracle->add_option("--table", or_table, "TH02 TH04 ENTKH ENTKH2 RL03 RL05 RL06 THSV RL04_i")->required();
    opt_d("p", op.p);
    opt_d("q", op.q);
    opt_d("tau", op.tau);
    opt_d("beta", op.beta);
    opt_d("gamma", op.gamma);
    opt_d("alpha", op.alpha);
    opt_d("delta", op.delta);
    opt_d("theta", op.theta);
    opt_d("rho", op.rho);
    opt_d("log-exponent", op.log_exponent);
    oracle->add_option("--set-decay", or_decay, "polynomial | exponential (RL06)");
    oracle->add_flag("--list", or_list, "list the case labels of the table");

    // ---------------------------------------------------------------- verify
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    int vf_id = 0;
    VerifyOptions vf;
    verify->add_option("--criterion", vf_id, "run one criterion (1..11)");
    verify->add_option("--seed", vf.seed)->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string canonical;
    for (const auto& a : args) canonical += a + "\n";
    out.hash = config_hash(canonical);

    try {
        if (cover->parsed()) {
            PointCloud cloud = cov_table ? read_table_csv(cov_input) : read_points_csv(cov_input, parse_norm(cov_norm));
            ExactOptions eo{cov_cap};
            if (cov_entropy > 0) {
                EntropyMethod m = cov_method == "greedy" ? EntropyMethod::Greedy : EntropyMethod::Exact;
                if (cov_method != "greedy" && cov_method != "exact" && cov_method != "all")
                    fail_validation("cli", "--entropy supports --method exact or greedy");
                auto e = entropy_numbers(cloud, cov_entropy, m, eo);
                out.begin({"n", "epsilon", "method"});
                Series s{"eps_n", {}, {}};
                for (std::size_t n = 1; n <= e.size(); ++n) {
                    out.row({std::to_string(n), fmt(e.nth(n)), m == EntropyMethod::Greedy ? "GREEDY" : "EXACT"});
                    s.x.push_back(double(n));
                    s.y.push_back(e.nth(n));
                }
                out.plot("entropy numbers", "n", "eps_n", {s});
            } else {
                if (!(cov_eps > 0.0)) fail_validation("cli", "--eps must be positive");
                out.begin({"epsilon", "count", "kind"});
                auto emit = [&](const CoveringResult& r) {
                    out.row({fmt(r.epsilon), std::to_string(r.count), to_string(r.kind)});
                };
                if (cov_method == "packing" || cov_method == "all") emit(packing_lower(cloud, cov_eps));
                if (cov_method == "exact" || cov_method == "all") emit(exact_cover(cloud, cov_eps, eo));
                if (cov_method == "greedy" || cov_method == "all") emit(greedy_cover(cloud, cov_eps));
                if (cov_method != "packing" && cov_method != "exact" && cov_method != "greedy" && cov_method != "all")
                    fail_validation("cli", "--method must be exact, greedy, packing or all");
            }
        } else if (hull->parsed()) {
            if (h_bounds->parsed()) {
                auto prof = hull_entropy_profile(gen.spec(), h_n, h_mesh);
                out.begin({"n", "lower", "upper", "delta", "mesh"});
                Series lo{"lower", {}, {}}, up{"upper", {}, {}};
                for (std::size_t k = 1; k <= h_n; ++k) {
                    out.row({std::to_string(k), fmt(prof.lower(k)), fmt(prof.upper(k)), fmt(prof.delta), fmt(h_mesh)});
                    lo.x.push_back(double(k));
                    lo.y.push_back(prof.lower(k));
                    up.x.push_back(double(k));
                    up.y.push_back(prof.upper(k));
                }
                out.plot("hull entropy bounds", "n", "eps_n(aco A)", {lo, up});
            } else if (h_net->parsed()) {
                auto net = hull_net(gen.spec(), h_mesh);
                std::vector<std::string> header;
                for (std::size_t j = 0; j < net.cloud.dim(); ++j) header.push_back("x" + std::to_string(j + 1));
                out.begin(header);
                *out.out << "# delta=" << fmt(net.delta) << " points=" << net.cloud.size() << "\n";
                for (const auto& p : net.cloud.points()) {
                    std::vector<std::string> r;
                    for (double v : p) r.push_back(fmt(v));
                    out.row(r);
                }
            } else if (h_ca->parsed()) {
                out.begin({"c_A"});
                out.row({fmt(c_A_ratio(gen.spec()))});
            } else if (h_support->parsed()) {
                out.begin({"h"});
                out.row({fmt(support_function(gen.spec(), parse_list(h_u, "--u")))});
            } else if (h_st->parsed()) {
                MonotoneSeq data = read_sequence_csv(st_data);
                SteinwartParams P;
                if (!st_alphas.empty()) {
                    std::vector<std::uint64_t> a;
                    std::stringstream ss(st_alphas);
                    std::string item;
                    while (std::getline(ss, item, ',')) a.push_back(parse_count(item, "--alphas"));
                    P = SteinwartParams::with_alphas(a);
                } else if (!st_log2.empty()) {
                    P.log2_alphas = parse_list(st_log2, "--log2-alphas");
                } else if (st_a > 0.0) {
                    auto sch = steinwart_alpha_schedule(st_n, st_a);
                    P.log2_alphas = sch.log2_alphas;
                    P.alpha_decimal = sch.decimal;
                } else {
                    fail_validation("hull", "give --alphas, --log2-alphas or --schedule-a");
                }
                P.p = st_p;
                P.t = st_t;
                P.c_t = st_ct;
                P.tau_p = st_taup;
                auto r = st_exact ? steinwart_upper_exact(data, P, st_n) : steinwart_upper(data, P, st_n);
                out.begin({"m", "log2_m", "m_exact", "bound", "first_term", "second_term", "truncated", "constants"});
                bool unnorm = st_ct == 1.0 && st_taup == 1.0;
                out.row({fmt(r.m), fmt(r.log2_m), r.m_exact ? "1" : "0", fmt(r.bound), fmt(r.first_term),
                         fmt(r.second_term), r.truncated ? "1" : "0", unnorm ? "UNNORMALIZED" : "user"});
            } else if (h_l02->parsed()) {
                MonotoneSeq s;
                if (!l_sigma.empty()) s = read_sequence_csv(l_sigma);
                else if (!l_opt.empty()) {
                    auto rg = parse_list(l_opt, "--optimality");
                    if (rg.size() != 2) fail_validation("hull", "--optimality expects r,gamma");
                    s = optimality_sequence(rg[0], rg[1], l_len);
                } else fail_validation("hull", "give --sigma or --optimality");
                auto v = l02_lower(s, parse_norm(l_p), l_n, l_c);
                out.begin({"value", "truncated", "constants"});
                out.row({fmt(v.value), v.truncated ? "1" : "0", l_c == 1.0 ? "UNNORMALIZED" : "user"});
            } else if (h_sgg->parsed()) {
                out.begin({"value", "constants"});
                out.row({fmt(schuett_gg_lower(l_n, l_m, parse_norm(l_p), l_c)), l_c == 1.0 ? "UNNORMALIZED" : "user"});
            } else if (h_tt->parsed()) {
                auto t = tt02_params(tt_p, tt_r, tt_s);
                out.begin({"p_prime", "alpha"});
                out.row({fmt(t.p_prime), fmt(t.alpha)});
            } else if (h_check->parsed()) {
                MonotoneSeq L = read_sequence_csv(ck_lhs), R = read_sequence_csv(ck_rhs);
                WeightPreset w;
                if (ck_preset == "tt03") {
                    double s = parse_norm(ck_s);
                    w = std::isinf(s) ? WeightPreset::tt03_sup(ck_r, ck_alpha) : WeightPreset::tt03(ck_r, s, ck_alpha);
                } else if (ck_preset == "th03") {
                    w = WeightPreset::th03(ck_r);
                } else if (ck_preset == "enhil") {
                    w = WeightPreset::enhil(ck_case, ck_r, ck_beta);
                } else {
                    fail_validation("hull", "--preset must be tt03, th03 or enhil");
                }
                std::size_t N = ck_N ? ck_N : std::min(L.size(), R.size());
                auto r = finite_inequality_check(L, R, w, N, ck_ca);
                out.begin({"lhs", "rhs", "ratio", "status"});
                out.row({fmt(r.lhs), fmt(r.rhs), fmt(r.ratio), ratio_status(r.status)});
            }
        } else if (kernel->parsed()) {
            KernelSpec spec = kopt.spec();
            if (k_int->parsed()) {
                out.begin({"r", "value", "method"});
                out.row({fmt(k_r), fmt(kernel_q_integral(spec, k_q, k_r)),
                         has_closed_form(spec, k_q) ? "closed_form" : "quadrature"});
            } else if (k_metric->parsed()) {
                out.begin({"s", "t", "d"});
                out.row({fmt(k_s), fmt(k_t), fmt(pseudo_metric(spec, k_q, k_s, k_t))});
            } else if (k_sand->parsed()) {
                auto r = sandwich_check(spec, k_q, k_s, k_t);
                out.begin({"base", "d", "passed"});
                out.row({fmt(r.base), fmt(r.d), r.passed ? "1" : "0"});
            } else if (k_rate->parsed()) {
                auto f = interval_rate_under_d(spec, k_q);
                auto pe = f.printed_exponents();
                out.begin({"C", "p0", "q0", "r0", "printed_n", "printed_log", "printed_loglog"});
                out.row({fmt(f.C), fmt(f.p0), fmt(f.q0), fmt(f.r0), fmt(pe[0]), fmt(pe[1]), fmt(pe[2])});
            } else if (k_table->parsed()) {
                auto cloud = sampled_interval_metric(spec, k_q, k_grid);
                std::vector<std::string> header;
                for (std::size_t j = 0; j < cloud.size(); ++j) header.push_back("d" + std::to_string(j));
                out.begin(header);
                for (std::size_t i = 0; i < cloud.size(); ++i) {
                    std::vector<std::string> r;
                    for (std::size_t j = 0; j < cloud.size(); ++j) r.push_back(fmt(cloud.dist(i, j)));
                    out.row(r);
                }
            } else if (k_ent->parsed()) {
                auto cloud = sampled_interval_metric(spec, k_q, k_grid);
                EntropyMethod m = k_method == "greedy" ? EntropyMethod::Greedy : EntropyMethod::Exact;
                auto e = entropy_numbers(cloud, k_nmax, m);
                out.begin({"n", "epsilon", "source"});
                Series s{"eps_n sampled", {}, {}};
                for (std::size_t n = 1; n <= e.size(); ++n) {
                    out.row({std::to_string(n), fmt(e.nth(n)), m == EntropyMethod::Greedy ? "GREEDY" : "EXACT"});
                    s.x.push_back(double(n));
                    s.y.push_back(e.nth(n));
                }
                if (k_fit) {
                    std::vector<double> xs, ys;
                    for (std::size_t n = 2; n <= e.size(); ++n)
                        if (e.nth(n) > 0.0) {
                            xs.push_back(double(n));
                            ys.push_back(e.nth(n));
                        }
                    auto fr = fit_rate_samples(xs, ys, FitOptions{FitTerms::Power, 1.96});
                    out.row({"fit", fmt(fr.formula.p0), "fit_exponent"});
                }
                auto pred = interval_rate_under_d(spec, k_q);
                out.plot("entropy of ([0,1], d)", "n", "eps_n", {s, prediction(pred, s.x, s.y, "predicted rate")});
            }
        } else if (oper->parsed()) {
            if (o_semi->parsed()) {
                out.begin({"max_error"});
                out.row({fmt(semigroup_check(sg_alpha, sg_beta, parse_list(sg_poly, "--poly"), o_grid))});
            } else if (o_rl04->parsed()) {
                Rl04Variant v;
                v.kind = r4_variant == "I" ? Rl04Variant::Kind::I : Rl04Variant::Kind::II;
                if (r4_variant != "I" && r4_variant != "II") fail_validation("operator", "--variant must be I or II");
                v.rho = r4_rho;
                v.gamma = r4_gamma;
                v.p = r4_p;
                auto b = rl04_bound(read_sequence_csv(r4_data), v, r4_n);
                out.begin({"value", "truncated"});
                out.row({fmt(b.value), b.truncated ? "1" : "0"});
            } else {
                const bool is_rl = o_rl->parsed();
                KernelSpec spec;
                if (!is_rl) spec = okopt.spec();
                auto make = [&] {
                    return is_rl ? DiscretizedOperator::riemann_liouville(o_alpha, o_grid, o_order)
                                 : DiscretizedOperator::from_kernel(spec, o_grid, o_order);
                };
                const Actions& act = is_rl ? rl_act : k_act;
                if (act.sv->parsed()) {
                    auto s = singular_values(make());
                    out.begin({"n", "value", "source"});
                    Series ser{"singular values", {}, {}};
                    for (std::size_t n = 1; n <= s.size(); ++n) {
                        out.row({std::to_string(n), fmt(s.nth(n)), "singular_value"});
                        ser.x.push_back(double(n));
                        ser.y.push_back(s.nth(n));
                    }
                    if (o_fit) {
                        std::size_t lo = o_fit_lo ? o_fit_lo : std::max<std::size_t>(1, s.size() / 32);
                        std::size_t hi = o_fit_hi ? o_fit_hi : std::max<std::size_t>(lo + 2, s.size() / 8);
                        if (hi > s.size()) fail_validation("operator", "fit window exceeds the grid");
                        std::vector<double> xs, ys;
                        for (std::size_t n = lo; n <= hi; ++n) {
                            xs.push_back(double(n));
                            ys.push_back(s.nth(n));
                        }
                        auto fr = fit_rate_samples(xs, ys, FitOptions{FitTerms::Power, 1.96});
                        out.row({std::to_string(hi), fmt(fr.formula.p0), "fit_exponent"});
                        std::cerr << "fitted decay exponent " << fmt(fr.formula.p0) << " on n in [" << lo << ", "
                                  << hi << "]\n";
                    }
                    std::vector<Series> plots{ser};
                    if (is_rl) {
                        OracleParams rp;
                        rp.p = 2;
                        rp.q = 2;
                        rp.alpha = o_alpha;
                        auto pred = rate_oracle(RateTable::RL03, rp).formula;
                        plots.push_back(prediction(pred, ser.x, ser.y, "n^-alpha"));
                    }
                    out.plot("singular values", "n", "s_n", plots);
                } else if (act.apply->parsed()) {
                    auto op = make();
                    auto f = read_samples(o_input);
                    auto g = apply_operator(op, f);
                    auto x = op.nodes();
                    out.begin({"x", "f", "Tf"});
                    for (std::size_t i = 0; i < g.size(); ++i) out.row({fmt(x[i]), fmt(f[i]), fmt(g[i])});
                } else if (act.shift->parsed()) {
                    auto r = shift_modulus_check(make(), o_p, o_delta, read_samples(o_input));
                    out.begin({"lhs", "rhs", "passed"});
                    out.row({fmt(r.lhs), fmt(r.rhs), r.passed ? "1" : "0"});
                } else if (act.rieli->parsed()) {
                    out.begin({"n", "bound", "constants"});
                    Series s{"bound", {}, {}};
                    for (std::uint64_t n = 1; n <= o_nmax; ++n) {
                        double b = is_rl ? rieli_bound_rl(o_alpha, o_q, n, o_c) : rieli_bound(spec, o_q, n, o_c);
                        out.row({std::to_string(n), fmt(b), o_c == 1.0 ? "UNNORMALIZED" : "user"});
                        s.x.push_back(double(n));
                        s.y.push_back(b);
                    }
                    out.plot("singular-number bound", "n", "bound", {s});
                } else if (act.net && act.net->parsed()) {
                    NetLowerBound nb;
                    if (o_kind == "rademacher") nb = net_lower_rademacher(spec, o_m);
                    else if (o_kind == "atoms") nb = net_lower_kernel_atoms(spec, o_p, o_m);
                    else if (o_kind == "means") nb = net_lower_means(spec, o_p, o_m);
                    else fail_validation("operator", "--kind must be rademacher, atoms or means");
                    out.begin({"kind", "m_or_n", "separation", "log2_cardinality", "bound"});
                    out.row({to_string(nb.kind), fmt(nb.m_or_n), fmt(nb.separation), fmt(nb.log2_cardinality),
                             fmt(nb.bound)});
                }
            }
        } else if (hardy->parsed()) {
            MonotoneSeq seq;
            if (!hd_prof->parsed()) seq = read_sequence_csv(hd_input);
            std::size_t N = hd_N ? hd_N : seq.size();
            auto ratio_row = [&](const InequalityRatio& r) {
                out.begin({"lhs", "rhs", "ratio", "status"});
                out.row({fmt(r.lhs), fmt(r.rhs), fmt(r.ratio), ratio_status(r.status)});
            };
            auto lorentz = [&] {
                double s = parse_norm(hd_s);
                return std::isinf(s) ? LorentzParams::sup(hd_r, hd_alpha) : LorentzParams::finite(hd_r, s, hd_alpha);
            };
            if (hd_lor->parsed()) {
                out.begin({"N", "value"});
                out.row({std::to_string(N), fmt(lorentz_functional(seq, lorentz(), N))});
            } else if (hd_dy->parsed()) {
                auto d = dyadic_subsequence(seq);
                out.begin({"j", "value"});
                for (std::size_t j = 0; j < d.size(); ++j) out.row({std::to_string(j), fmt(d[j])});
            } else if (hd_prof->parsed()) {
                auto v = profile_functional(read_profile_csv(hd_input), lorentz());
                out.begin({"value", "truncated_at"});
                out.row({fmt(v.value), fmt(v.truncated_at)});
            } else if (hd_lh1->parsed()) {
                ratio_row(lh1_check(seq, hd_r, parse_double(hd_s, "--s"), hd_alpha, hd_t, N));
            } else if (hd_lh2->parsed()) {
                ratio_row(lh2_check(seq, hd_r, hd_alpha, hd_t, N));
            }
        } else if (fit->parsed()) {
            if (f_eval->parsed()) {
                out.begin({"n", "value"});
                for (double n : parse_list(ev_n, "--n")) out.row({fmt(n), fmt(eval_rate(ev, n))});
            } else {
                if (f_input.empty()) fail_validation("fit", "--input is required");
                FitOptions fo;
                if (f_terms == "power") fo.terms = FitTerms::Power;
                else if (f_terms == "powerlog") fo.terms = FitTerms::PowerLog;
                else if (f_terms == "full") fo.terms = FitTerms::PowerLogLogLog;
                else fail_validation("fit", "--terms must be power, powerlog or full");
                CsvTable t = read_csv(f_input);
                std::vector<double> xs, ys;
                RateFit fr;
                if (t.header.size() >= 2) {
                    for (const auto& r : t.rows) {
                        double n = parse_double(r.at(0), "n"), v = parse_double(r.at(1), "value");
                        if (n < double(f_lo) || (f_hi && n > double(f_hi))) continue;
                        xs.push_back(n);
                        ys.push_back(v);
                    }
                    fr = fit_rate_samples(xs, ys, fo);
                } else {
                    MonotoneSeq seq = read_sequence_csv(f_input);
                    std::uint64_t hi = f_hi ? f_hi : seq.size();
                    fr = fit_rate(seq, f_lo, hi, fo);
                    for (std::uint64_t n = f_lo; n <= hi; ++n) {
                        xs.push_back(double(n));
                        ys.push_back(seq.nth(n));
                    }
                }
                const auto& f = fr.formula;
                out.begin({"C", "p0", "q0", "r0", "residual", "condition", "samples", "ci_p0", "ci_q0", "ci_r0"});
                out.row({fmt(f.C), fmt(f.p0), fmt(f.q0), fmt(f.r0), fmt(fr.residual), fmt(fr.condition),
                         std::to_string(fr.samples), fmt(fr.half_width[0]), fmt(fr.half_width[1]),
                         fmt(fr.half_width[2])});
                Series data{"data", xs, ys}, model{"fit", {}, {}, true};
                for (double x : xs) {
                    model.x.push_back(x);
                    model.y.push_back(eval_rate(f, x));
                }
                out.plot("rate fit", "n", "value", {data, model});
            }
        } else if (oracle->parsed()) {
            RateTable table = parse_rate_table(or_table);
            if (or_list) {
                out.begin({"table", "case"});
                for (const auto& c : rate_case_labels(table)) out.row({to_string(table), c});
            } else {
                if (!or_decay.empty()) {
                    if (or_decay == "polynomial") op.set_decay = SetDecay::Polynomial;
                    else if (or_decay == "exponential") op.set_decay = SetDecay::Exponential;
                    else fail_validation("oracle", "--set-decay must be polynomial or exponential");
                }
                auto r = rate_oracle(table, op);
                const auto& f = r.formula;
                out.begin({"C", "p0", "q0", "r0", "table", "case", "aux_beta"});
                out.row({fmt(f.C), fmt(f.p0), fmt(f.q0), fmt(f.r0), to_string(r.table), r.case_label,
                         r.aux_beta ? fmt(*r.aux_beta) : ""});
            }
        } else if (verify->parsed()) {
            std::vector<CriterionResult> results;
            if (vf_id) results.push_back(run_criterion(vf_id, vf));
            else results = run_all_criteria(vf);
            out.begin({"criterion", "passed", "seconds", "title", "detail"});
            bool all = true;
            for (const auto& r : results) {
                out.row({std::to_string(r.id), r.passed ? "PASS" : "FAIL", fmt(r.seconds), r.title, r.detail});
                all = all && r.passed;
            }
            if (!all) return exit_code(ErrorKind::Numeric);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
