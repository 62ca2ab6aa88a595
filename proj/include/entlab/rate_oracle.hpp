#pragma once

#include "entlab/rates.hpp"

#include <optional>
#include <string>
#include <vector>

namespace entlab {

// Regime tables for entropy / Kolmogorov number rates of weakly singular and
// Riemann-Liouville operators. Formulas use the decay convention of
// RateFormula; printed_exponents() gives the signs as the rate is written.
enum class RateTable { TH02, TH04, ENTKH, ENTKH2, RL03, RL05, RL06, THSV, RL04_I };

std::string to_string(RateTable t);
RateTable parse_rate_table(const std::string& name);
const std::vector<RateTable>& all_rate_tables();

enum class SetDecay { Polynomial, Exponential };

// Missing beta / gamma / log_exponent read as 0; everything else a table needs
// must be present.
struct OracleParams {
    std::optional<double> p, q, tau, beta, gamma, alpha, delta, theta, rho, log_exponent;
    std::optional<SetDecay> set_decay;
};

struct OracleResult {
    RateTable table = RateTable::TH02;
    std::string case_label;
    std::string regime;
    RateFormula formula;
    // THSV only: the sup range is k <= n^{aux_beta}.
    std::optional<double> aux_beta;
};

OracleResult rate_oracle(RateTable table, const OracleParams& params);

// Case labels in table order, e.g. "P1".."P6" for TH04.
std::vector<std::string> rate_case_labels(RateTable table);

} // namespace entlab
