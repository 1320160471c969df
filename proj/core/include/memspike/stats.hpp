#pragma once

#include <optional>
#include <span>
#include <vector>

namespace memspike::stats {

double mean(std::span<const double> values);
// Unbiased sample variance (n-1 denominator).
double sample_variance(std::span<const double> values);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
// (modified Lentz), accurate to ~1e-12 over the t-distribution domain.
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed tail probability of Student's t with df degrees of freedom.
double student_t_two_tailed_p(double t, double df);

struct Welch {
    double t = 0.0;
    double p = 1.0;
    double df = 0.0;
};

// Welch's t statistic with Welch-Satterthwaite degrees of freedom and a
// two-tailed p value. Degenerate inputs (fewer than two values per sample, or
// both variances zero) yield nullopt.
std::optional<Welch> welch_t_test(std::span<const double> a, std::span<const double> b);

struct FiveNumber {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

// Quartiles by linear interpolation between order statistics.
FiveNumber five_number_summary(std::vector<double> values);

}  // namespace memspike::stats
