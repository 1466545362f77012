#include "plandscape/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plandscape/errors.hpp"

namespace plandscape {
namespace {

void check_bounds(double beta, double mu, double y_min, double y_max) {
    if (!(beta > 0.0)) {
        throw ValidationError("beta: must be positive (got " + std::to_string(beta) + ")");
    }
    if (!(y_min < y_max)) {
        throw ValidationError("y_min/y_max: require y_min < y_max (got [" +
                              std::to_string(y_min) + ", " + std::to_string(y_max) + "])");
    }
    if (!(mu > y_min)) {
        throw ValidationError("mu: must exceed the lower bound y_min (mu=" +
                              std::to_string(mu) + ", y_min=" + std::to_string(y_min) + ")");
    }
    if (!(mu < y_max)) {
        throw ValidationError("mu: must lie below the upper bound y_max (mu=" +
                              std::to_string(mu) + ", y_max=" + std::to_string(y_max) + ")");
    }
}

// One standard normal via the Marsaglia polar method; the spare variate is
// discarded so each call consumes a whole number of uniform pairs.
double sample_normal(RngStream& rng) {
    for (;;) {
        const double u = 2.0 * rng.next_double() - 1.0;
        const double v = 2.0 * rng.next_double() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

// Marsaglia-Tsang gamma sampler; shapes below 1 are boosted through
// Gamma(shape + 1) * U^(1/shape).
double sample_gamma(double shape, RngStream& rng) {
    if (shape < 1.0) {
        const double u = rng.next_double_open();
        return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_double_open();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta01(double alpha, double beta, RngStream& rng) {
    const double a = sample_gamma(alpha, rng);
    const double b = sample_gamma(beta, rng);
    const double s = a + b;
    if (s == 0.0) return 0.5;  // unreachable with finite shapes
    return a / s;
}

double log_beta_fn(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// log pmf of BetaBin(alpha, beta, n) at x; binomial coefficient through
// log-gamma (direct factorials overflow well before n = 200).
double log_pmf(int n, int x, double alpha, double beta) {
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
    return log_choose + log_beta_fn(x + alpha, n - x + beta) - log_beta_fn(alpha, beta);
}

}  // namespace

void ScaledBetaSpec::validate() const { check_bounds(beta, mu, y_min, y_max); }

void ScaledBetaBinomialSpec::validate() const {
    check_bounds(beta, mu, static_cast<double>(y_min), static_cast<double>(y_max));
}

double alpha_tilde(double beta, double mu, double y_min, double y_max) {
    check_bounds(beta, mu, y_min, y_max);
    return beta * (mu - y_min) / (y_max - mu);
}

double sample_scaled_beta(const ScaledBetaSpec& spec, RngStream& rng) {
    spec.validate();
    const double alpha = alpha_tilde(spec.beta, spec.mu, spec.y_min, spec.y_max);
    const double x = sample_beta01(alpha, spec.beta, rng);
    return (spec.y_max - spec.y_min) * x + spec.y_min;
}

int sample_scaled_beta_binomial(const ScaledBetaBinomialSpec& spec, RngStream& rng) {
    return BetaBinomialTable(spec).sample(rng);
}

double beta_binomial_pmf(const ScaledBetaBinomialSpec& spec, int y) {
    spec.validate();
    if (y < spec.y_min || y > spec.y_max) {
        throw ValidationError("y: value " + std::to_string(y) + " outside support {" +
                              std::to_string(spec.y_min) + ", ..., " +
                              std::to_string(spec.y_max) + "}");
    }
    const double alpha = alpha_tilde(spec.beta, spec.mu, spec.y_min, spec.y_max);
    return std::exp(log_pmf(spec.trials(), y - spec.y_min, alpha, spec.beta));
}

BetaBinomialTable::BetaBinomialTable(const ScaledBetaBinomialSpec& spec) : spec_(spec) {
    spec_.validate();
    const int n = spec_.trials();
    const double alpha = alpha_tilde(spec_.beta, spec_.mu, spec_.y_min, spec_.y_max);
    pmf_.resize(n + 1);
    cdf_.resize(n + 1);
    double total = 0.0;
    for (int x = 0; x <= n; ++x) {
        pmf_[x] = std::exp(log_pmf(n, x, alpha, spec_.beta));
        total += pmf_[x];
        cdf_[x] = total;
    }
    for (auto& c : cdf_) c /= total;
    cdf_.back() = 1.0;
}

int BetaBinomialTable::sample(RngStream& rng) const {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto x = std::min<std::ptrdiff_t>(it - cdf_.begin(), spec_.trials());
    return spec_.y_min + static_cast<int>(x);
}

double BetaBinomialTable::pmf(int y) const {
    if (y < spec_.y_min || y > spec_.y_max) {
        throw ValidationError("y: value " + std::to_string(y) + " outside support {" +
                              std::to_string(spec_.y_min) + ", ..., " +
                              std::to_string(spec_.y_max) + "}");
    }
    return pmf_[y - spec_.y_min];
}

}  // namespace plandscape
