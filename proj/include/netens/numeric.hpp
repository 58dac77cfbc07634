#pragma once

#include <cstdint>
#include <optional>

namespace netens {

/// log(1 + e^x), stable on both tails.
double log1p_exp(double x);

/// log(1 - e^x) for x < 0, stable near 0 and on the far tail.
double log1m_exp(double x);

/// 1 / (1 + e^{-x}) without overflow.
double logistic(double x);

/// Compensated summation; used wherever pair sums must be reproducible
/// independent of evaluation grouping.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// Exact C(n, k); nullopt as soon as the value exceeds cap.
std::optional<std::uint64_t> binomial_capped(std::uint64_t n, std::uint64_t k,
                                             std::uint64_t cap);

double log_binomial(std::uint64_t n, std::uint64_t k);
double binomial_pmf(std::uint64_t n, std::uint64_t k, double p);

/// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);

/// Chi-square survival function with df degrees of freedom.
double chi_square_sf(double x, double df);

}  // namespace netens
