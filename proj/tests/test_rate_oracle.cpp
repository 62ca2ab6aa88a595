#include "entlab/error.hpp"
#include "entlab/rate_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace entlab;

namespace {

OracleParams th(double p, double tau, double beta, double gamma) {
    OracleParams o;
    o.p = p;
    o.tau = tau;
    o.beta = beta;
    o.gamma = gamma;
    return o;
}

void expect_formula(const OracleResult& r, double p0, double q0, double r0) {
    EXPECT_DOUBLE_EQ(r.formula.p0, p0);
    EXPECT_DOUBLE_EQ(r.formula.q0, q0);
    EXPECT_DOUBLE_EQ(r.formula.r0, r0);
    EXPECT_EQ(r.formula.C, 1.0);
}

} // namespace

TEST(Oracle, Th04Examples) {
    auto p1 = rate_oracle(RateTable::TH04, th(2, 0.25, 0, 0));
    EXPECT_EQ(p1.case_label, "P1");
    expect_formula(p1, 0.75, 0, 0);
    EXPECT_DOUBLE_EQ(p1.formula.printed_exponents()[0], -0.75);
    auto p2 = rate_oracle(RateTable::TH04, th(2, 0.5, 0.75, 0));
    EXPECT_EQ(p2.case_label, "P2");
    expect_formula(p2, 0.25, 0, 0);
}

TEST(Oracle, EntkhExample) {
    OracleParams o;
    o.tau = 0.5;
    o.beta = 0.5;
    o.gamma = 1;
    auto r = rate_oracle(RateTable::ENTKH, o);
    EXPECT_EQ(r.case_label, "G7");
    expect_formula(r, 0, 0.5, 0);
}

TEST(Oracle, Th04AllCases) {
    // p = 3: p' = 3/2, 1/p' = 2/3, 1/p = 1/3
    const double ipc = 2.0 / 3.0, ip = 1.0 / 3.0;
    expect_formula(rate_oracle(RateTable::TH04, th(3, 0.3, 0.2, 0.1)), 0.7, 0.2, 0.1);
    expect_formula(rate_oracle(RateTable::TH04, th(3, ipc, 0.8, 0.4)), 0.8 - ipc, 0.4, 0);
    expect_formula(rate_oracle(RateTable::TH04, th(3, ipc, 1.5, 0.4)), ip, 0.5, 0.4);
    expect_formula(rate_oracle(RateTable::TH04, th(3, ipc, 1.0, 0.4)), ip, 0.4 - 1, 0);
    auto p5 = th(3, ipc, 1.0, 2.0);
    p5.delta = 0.1;
    auto r5 = rate_oracle(RateTable::TH04, p5);
    EXPECT_EQ(r5.case_label, "P5");
    expect_formula(r5, ip, -0.1, 0);
    auto r6 = rate_oracle(RateTable::TH04, th(3, ipc, ipc, 1.0));
    EXPECT_EQ(r6.case_label, "P6");
    expect_formula(r6, 0, 1.0 - ipc, 0);
}

TEST(Oracle, ThsvAuxiliaryExponent) {
    OracleParams o;
    o.p = 2;
    o.tau = 0.25;
    auto r = rate_oracle(RateTable::THSV, o);
    ASSERT_TRUE(r.aux_beta.has_value());
    // 1 + (p'-1)/(1 - tau p') with p' = 2
    EXPECT_DOUBLE_EQ(*r.aux_beta, 1 + 1 / (1 - 0.5));
    EXPECT_FALSE(rate_oracle(RateTable::TH04, th(2, 0.25, 0, 0)).aux_beta.has_value());
}

TEST(Oracle, Rl05AndRl06) {
    OracleParams o;
    o.p = 2;
    o.alpha = 1;
    o.delta = 2;
    o.theta = 0;
    // n^{-1/p - delta (alpha - 1/p)}
    expect_formula(rate_oracle(RateTable::RL05, o), 0.5 + 2 * 0.5, 0, 0);
    OracleParams e;
    e.beta = 0.75;
    e.delta = 0.5;
    e.set_decay = SetDecay::Exponential;
    expect_formula(rate_oracle(RateTable::RL06, e), 0.5 + 0.5 * 0.25, 0, 0);
}

TEST(Oracle, ErrorsNameTheNearestCase) {
    try {
        rate_oracle(RateTable::TH04, th(2, 0.5, 0.25, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Validation);
        EXPECT_NE(std::string(e.what()).find("nearest"), std::string::npos) << e.what();
    }
    OracleParams missing;
    missing.p = 2;
    EXPECT_THROW(rate_oracle(RateTable::TH04, missing), Error);
    EXPECT_THROW(rate_oracle(RateTable::TH04, th(1.5, 0.1, 0, 0)), Error); // p < 2
}

TEST(OracleProperty, NeverAmbiguous) {
    // Random draws from a lattice that hits every boundary: each record maps to
    // one case or is rejected as outside the table, never to two cases.
    std::mt19937_64 rng(17);
    const std::vector<double> grid{0.0, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, 1.0, 1.5, 2.0};
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    std::uniform_int_distribution<int> pp(2, 4);
    int matched = 0;
    for (int i = 0; i < 4000; ++i) {
        for (RateTable t : {RateTable::TH02, RateTable::TH04, RateTable::ENTKH, RateTable::ENTKH2}) {
            OracleParams o = th(pp(rng), grid[pick(rng)], grid[pick(rng)], grid[pick(rng)]);
            o.delta = 0.1;
            try {
                auto r = rate_oracle(t, o);
                auto labels = rate_case_labels(t);
                EXPECT_NE(std::find(labels.begin(), labels.end(), r.case_label), labels.end());
                ++matched;
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::Validation) << e.what();
            }
        }
    }
    EXPECT_GT(matched, 1000);
}

TEST(Oracle, ParseTable) {
    EXPECT_EQ(parse_rate_table("th04"), RateTable::TH04);
    EXPECT_EQ(parse_rate_table("RL04_i"), RateTable::RL04_I);
    EXPECT_THROW(parse_rate_table("nope"), Error);
    EXPECT_EQ(rate_case_labels(RateTable::TH04).size(), 6u);
    EXPECT_EQ(rate_case_labels(RateTable::ENTKH).size(), 7u);
    EXPECT_EQ(rate_case_labels(RateTable::ENTKH2).size(), 3u);
}
