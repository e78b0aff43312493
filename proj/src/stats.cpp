#include "rdvswarm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rdvswarm/errors.hpp"

namespace rdvswarm {

namespace {

/// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double incbeta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 3e-15;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) {
            return h;
        }
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

RunSummary summarize_runs(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("summarize_runs needs at least one value");
    }
    RunSummary s{values[0], values[0], 0.0};
    for (double v : values) {
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        s.mean += v;
    }
    s.mean /= static_cast<double>(values.size());
    return s;
}

double sample_mean(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("mean of an empty sample");
    }
    double acc = 0.0;
    for (double v : values) {
        acc += v;
    }
    return acc / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("sample standard deviation needs at least two values");
    }
    const double mean = sample_mean(values);
    double acc = 0.0;
    for (double v : values) {
        acc += (v - mean) * (v - mean);
    }
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

std::string tail_name(Tail tail) {
    return tail == Tail::one_tailed ? "one_tailed" : "two_tailed";
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b,
                          double alpha_level, Tail tail) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("paired samples must have equal length");
    }
    if (a.size() < 2) {
        throw std::invalid_argument("paired t-test needs at least two pairs");
    }
    if (!(alpha_level > 0.0) || !(alpha_level < 1.0)) {
        throw std::invalid_argument("significance level must lie in (0, 1)");
    }
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i] - b[i];
    }
    const double sd_d = sample_sd(d);
    if (sd_d == 0.0) {
        throw DegenerateError("paired differences have zero variance; t is undefined");
    }

    TTestResult r;
    r.mean_a = sample_mean(a);
    r.mean_b = sample_mean(b);
    r.sd_a = sample_sd(a);
    r.sd_b = sample_sd(b);
    r.df = static_cast<int>(n) - 1;
    r.t_stat = sample_mean(d) / (sd_d / std::sqrt(static_cast<double>(n)));
    const double tail_beyond = 1.0 - student_t_cdf(std::fabs(r.t_stat), r.df);
    r.p_value = tail == Tail::one_tailed ? tail_beyond : 2.0 * tail_beyond;
    r.alpha_level = alpha_level;
    r.significant = r.p_value < alpha_level;
    r.tail = tail;
    return r;
}

double improvement_pct(double baseline, double proposed) {
    if (proposed == 0.0) {
        throw DegenerateError("improvement undefined: proposed value is zero");
    }
    return 100.0 * (baseline - proposed) / proposed;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("incomplete beta parameters must be positive");
    }
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    // The continued fraction converges fastest below the mean; use the
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other side.
    if (x > (a + 1.0) / (a + b + 2.0)) {
        return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
    }
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    return std::exp(ln_front) * incbeta_cf(a, b, x) / a;
}

double student_t_cdf(double t, int df) {
    if (df < 1) {
        throw std::invalid_argument("degrees of freedom must be at least 1");
    }
    const double v = static_cast<double>(df);
    const double x = v / (v + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(v / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

}  // namespace rdvswarm
