#include "exsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace exsim::stats {

namespace {

/// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: a, b must be > 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: x must be in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_p_two_sided(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("student_t_p_two_sided: df must be > 0");
    const double x = df / (df + t * t);
    return incomplete_beta(0.5 * df, 0.5, x);
}

double t_critical(double level_two_sided, double df) {
    if (!(level_two_sided > 0.0) || !(level_two_sided < 1.0))
        throw std::invalid_argument("t_critical: level must be in (0, 1)");
    const double target_p = 1.0 - level_two_sided; // two-sided tail mass
    double lo = 0.0, hi = 1.0;
    while (student_t_p_two_sided(hi, df) > target_p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_p_two_sided(mid, df) > target_p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double mean(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("EmptySamples");
    double s = 0.0;
    for (double v : samples) s += v;
    return s / static_cast<double>(samples.size());
}

double sample_std(const std::vector<double>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("TooFewSamples: need n >= 2");
    const double m = mean(samples);
    double acc = 0.0;
    for (double v : samples) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(samples.size() - 1));
}

double cvar(const std::vector<double>& samples, double level) {
    if (samples.empty()) throw std::invalid_argument("EmptySamples");
    if (!(level > 0.0) || !(level < 1.0)) throw std::invalid_argument("cvar: level must be in (0,1)");
    const std::size_t n = samples.size();
    const std::size_t k = static_cast<std::size_t>(
        std::ceil((1.0 - level) * static_cast<double>(n) - 1e-12));
    const std::size_t tail = std::max<std::size_t>(1, k);
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end()); // ascending: worst (most negative) first
    double s = 0.0;
    for (std::size_t i = 0; i < tail; ++i) s += sorted[i];
    return s / static_cast<double>(tail);
}

PairedTResult paired_t(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("LengthMismatch: paired samples differ");
    if (a.size() < 2) throw std::invalid_argument("TooFewSamples: need n >= 2");
    const std::size_t n = a.size();
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    const double d_mean = mean(diff);
    const double d_std = sample_std(diff);
    if (d_std == 0.0) throw std::invalid_argument("ZeroVariance: all paired differences identical");
    PairedTResult r;
    r.df = static_cast<std::int64_t>(n) - 1;
    r.mean_diff = d_mean;
    const double se = d_std / std::sqrt(static_cast<double>(n));
    r.t = d_mean / se;
    r.p_two_sided = student_t_p_two_sided(r.t, static_cast<double>(r.df));
    r.ci95_half_width = t_critical(0.95, static_cast<double>(r.df)) * se;
    return r;
}

MeanCi ci95(const std::vector<double>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("TooFewSamples: need n >= 2");
    MeanCi out;
    out.mean = mean(samples);
    const double s = sample_std(samples);
    const double df = static_cast<double>(samples.size() - 1);
    out.half_width = t_critical(0.95, df) * s / std::sqrt(static_cast<double>(samples.size()));
    return out;
}

AggregateReport table1_report(const std::vector<DailyResult>& results) {
    std::map<std::string, std::vector<DailyResult>> by_strategy;
    for (const DailyResult& r : results) by_strategy[r.strategy].push_back(r);
    if (by_strategy.empty()) throw std::invalid_argument("EmptySamples: no results");

    // Seed-paired design across strategies.
    std::set<std::uint64_t> reference_seeds;
    bool first = true;
    for (auto& [name, rows] : by_strategy) {
        std::sort(rows.begin(), rows.end(),
                  [](const DailyResult& x, const DailyResult& y) { return x.seed < y.seed; });
        std::set<std::uint64_t> seeds;
        for (const DailyResult& r : rows) seeds.insert(r.seed);
        if (seeds.size() != rows.size())
            throw std::invalid_argument("UnpairedSeeds: duplicate seed for strategy " + name);
        if (first) {
            reference_seeds = seeds;
            first = false;
        } else if (seeds != reference_seeds) {
            throw std::invalid_argument("UnpairedSeeds: strategies evaluated on different seeds");
        }
    }

    AggregateReport report;
    for (const auto& [name, rows] : by_strategy) {
        if (rows.size() < 2) throw std::invalid_argument("TooFewSamples: need >= 2 days per strategy");
        std::vector<double> is;
        StrategyRow row;
        row.strategy = name;
        row.days = static_cast<std::int64_t>(rows.size());
        double completed = 0.0, maxpart = 0.0, viol = 0.0;
        for (const DailyResult& r : rows) {
            is.push_back(r.is_bps);
            completed += r.completed_pct;
            maxpart += r.max_participation_pct;
            viol += static_cast<double>(r.violations);
        }
        const MeanCi ci = ci95(is);
        row.mean_is_bps = ci.mean;
        row.ci95_half_width = ci.half_width;
        row.std_dev_bps = sample_std(is);
        row.mean_completed_pct = completed / static_cast<double>(rows.size());
        row.mean_max_participation_pct = maxpart / static_cast<double>(rows.size());
        row.mean_violations_per_day = viol / static_cast<double>(rows.size());
        row.cvar95_bps = cvar(is, 0.95);
        report.rows.push_back(row);
    }

    std::vector<std::string> names;
    for (const auto& [name, rows] : by_strategy) names.push_back(name);
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            std::vector<double> va, vb;
            for (const DailyResult& r : by_strategy[names[i]]) va.push_back(r.is_bps);
            for (const DailyResult& r : by_strategy[names[j]]) vb.push_back(r.is_bps);
            PairwiseTest pt;
            pt.strategy_a = names[i];
            pt.strategy_b = names[j];
            try {
                pt.result = paired_t(va, vb);
            } catch (const std::invalid_argument&) {
                pt.result = PairedTResult{}; // identical series: t = 0, p = 1
                pt.result.df = static_cast<std::int64_t>(va.size()) - 1;
            }
            report.pairwise.push_back(pt);
        }
    }
    return report;
}

namespace {

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

} // namespace

std::string format_report_text(const AggregateReport& report) {
    std::ostringstream os;
    os << "strategy              IS (bps)             std    %completed  maxvol%   viol/day   CVaR95\n";
    for (const StrategyRow& r : report.rows) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-20s %8.2f +/- %5.2f  %6.2f  %10.2f  %7.2f  %8.2f  %7.2f\n",
                      r.strategy.c_str(), r.mean_is_bps, r.ci95_half_width, r.std_dev_bps,
                      r.mean_completed_pct, r.mean_max_participation_pct, r.mean_violations_per_day,
                      r.cvar95_bps);
        os << line;
    }
    if (!report.pairwise.empty()) {
        os << "\npaired t-tests on IS (two-sided)\n";
        for (const PairwiseTest& pt : report.pairwise) {
            char line[256];
            std::snprintf(line, sizeof(line), "%-20s vs %-20s t=%8.4f  p=%.6f  meandiff=%8.4f\n",
                          pt.strategy_a.c_str(), pt.strategy_b.c_str(), pt.result.t,
                          pt.result.p_two_sided, pt.result.mean_diff);
            os << line;
        }
    }
    return os.str();
}

std::string format_report_csv(const AggregateReport& report) {
    std::ostringstream os;
    os << "strategy,days,mean_is_bps,ci95_half_width,std_dev_bps,mean_completed_pct,"
          "mean_max_participation_pct,mean_violations_per_day,cvar95_bps\n";
    for (const StrategyRow& r : report.rows) {
        os << r.strategy << ',' << r.days << ',' << fmt(r.mean_is_bps) << ','
           << fmt(r.ci95_half_width) << ',' << fmt(r.std_dev_bps) << ','
           << fmt(r.mean_completed_pct) << ',' << fmt(r.mean_max_participation_pct) << ','
           << fmt(r.mean_violations_per_day) << ',' << fmt(r.cvar95_bps) << "\n";
    }
    return os.str();
}

std::string daily_results_csv(const std::vector<DailyResult>& results) {
    std::ostringstream os;
    os << "seed,strategy,is_bps,completed_pct,max_participation_pct,violations,shares_filled\n";
    for (const DailyResult& r : results) {
        os << r.seed << ',' << r.strategy << ',' << fmt(r.is_bps) << ',' << fmt(r.completed_pct)
           << ',' << fmt(r.max_participation_pct) << ',' << r.violations << ',' << r.shares_filled
           << "\n";
    }
    return os.str();
}

std::vector<DailyResult> parse_daily_results_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<DailyResult> out;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string tok;
        DailyResult r;
        auto next = [&]() {
            if (!std::getline(ls, tok, ',')) throw std::runtime_error("bad daily csv line: " + line);
            return tok;
        };
        r.seed = std::stoull(next());
        r.strategy = next();
        r.is_bps = std::stod(next());
        r.completed_pct = std::stod(next());
        r.max_participation_pct = std::stod(next());
        r.violations = std::stoll(next());
        r.shares_filled = std::stoll(next());
        out.push_back(r);
    }
    return out;
}

} // namespace exsim::stats
