#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace exsim::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
/// (absolute tolerance ~1e-12 over the tested domain).
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value for Student's t with df degrees of freedom.
double student_t_p_two_sided(double t, double df);

/// Upper-quantile t critical value: P(|T| <= t_crit) = level (e.g. 0.95).
double t_critical(double level_two_sided, double df);

/// Mean of the worst ceil((1 - level) * n) samples; "worst" is most negative.
double cvar(const std::vector<double>& samples, double level = 0.95);

struct PairedTResult {
    double t = 0.0;
    double p_two_sided = 1.0;
    double mean_diff = 0.0;
    double ci95_half_width = 0.0;
    std::int64_t df = 0;
};

/// Paired t-test of a against b (diff = a - b), df = n - 1.
PairedTResult paired_t(const std::vector<double>& a, const std::vector<double>& b);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;
};

/// Mean with t-based 95% confidence half-width (df = n - 1).
MeanCi ci95(const std::vector<double>& samples);

double mean(const std::vector<double>& samples);
double sample_std(const std::vector<double>& samples); // n - 1 denominator

// ---------------------------------------------------------------------------
// Per-day results and the aggregate report
// ---------------------------------------------------------------------------

struct DailyResult {
    std::uint64_t seed = 0;
    std::string strategy;
    double is_bps = 0.0;
    double completed_pct = 0.0;
    double max_participation_pct = 0.0;
    std::int64_t violations = 0;
    std::int64_t shares_filled = 0;
    bool has_fills = true;
};

struct StrategyRow {
    std::string strategy;
    std::int64_t days = 0;
    double mean_is_bps = 0.0;
    double ci95_half_width = 0.0;
    double std_dev_bps = 0.0;
    double mean_completed_pct = 0.0;
    double mean_max_participation_pct = 0.0;
    double mean_violations_per_day = 0.0;
    double cvar95_bps = 0.0;
};

struct PairwiseTest {
    std::string strategy_a;
    std::string strategy_b;
    PairedTResult result;
};

struct AggregateReport {
    std::vector<StrategyRow> rows;
    std::vector<PairwiseTest> pairwise; // every unordered strategy pair
};

/// Builds the per-strategy summary table plus seed-paired t-tests. Requires
/// at least two days per strategy and identical seed sets across strategies.
AggregateReport table1_report(const std::vector<DailyResult>& results);

std::string format_report_text(const AggregateReport& report);
std::string format_report_csv(const AggregateReport& report);

std::string daily_results_csv(const std::vector<DailyResult>& results);
std::vector<DailyResult> parse_daily_results_csv(const std::string& text);

} // namespace exsim::stats
