#pragma once

#include <span>
#include <string>

namespace rdvswarm {

/// Across-run aggregate of one quantity.
struct RunSummary {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

RunSummary summarize_runs(std::span<const double> values);

double sample_mean(std::span<const double> values);

/// Sample standard deviation with the n-1 denominator.
double sample_sd(std::span<const double> values);

enum class Tail { one_tailed, two_tailed };

std::string tail_name(Tail tail);

/// Paired two-sample t-test on per-trial differences a_i - b_i.
struct TTestResult {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double sd_a = 0.0;   // sample standard deviations of each side
    double sd_b = 0.0;
    int df = 0;
    double t_stat = 0.0;
    double p_value = 0.0;
    double alpha_level = 0.05;
    bool significant = false;
    Tail tail = Tail::one_tailed;
};

/// t = mean(d) / (sd(d) / sqrt(n)) with d = a - b and df = n - 1. One-tailed
/// p is the tail probability beyond |t| in the observed direction (the usual
/// spreadsheet convention); two-tailed doubles it. Zero-variance differences
/// raise DegenerateError.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          double alpha_level = 0.05, Tail tail = Tail::one_tailed);

/// 100 * (baseline - proposed) / proposed: how much worse the baseline is,
/// relative to the proposed value.
double improvement_pct(double baseline, double proposed);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// Student-t CDF P(T <= t) with df degrees of freedom.
double student_t_cdf(double t, int df);

}  // namespace rdvswarm
