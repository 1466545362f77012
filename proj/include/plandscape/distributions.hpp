#pragma once

#include <vector>

#include "plandscape/rng.hpp"

namespace plandscape {

// Beta variate rescaled onto [y_min, y_max] with prescribed mean mu and
// scale parameter beta. The first shape parameter is derived via
// alpha_tilde, which requires y_min < mu < y_max strictly; a mean on a
// boundary is rejected rather than clamped.
struct ScaledBetaSpec {
    double beta;
    double mu;
    double y_min;
    double y_max;

    void validate() const;
};

// Discrete counterpart supported on the integers {y_min, ..., y_max}.
struct ScaledBetaBinomialSpec {
    double beta;
    double mu;
    int y_min;
    int y_max;

    int trials() const { return y_max - y_min; }
    void validate() const;
};

// alpha = beta * (mu - y_min) / (y_max - mu).
// Throws ValidationError naming the violated bound.
double alpha_tilde(double beta, double mu, double y_min, double y_max);

// One draw Y = (y_max - y_min) * X + y_min with X ~ Beta(alpha, beta).
// X is generated as Ga/(Ga+Gb) from two Marsaglia-Tsang gamma variates
// (polar-method normals); the draw order is fixed, so a given stream
// replays identically.
double sample_scaled_beta(const ScaledBetaSpec& spec, RngStream& rng);

// One draw Y = X + y_min with X ~ BetaBin(alpha, beta, y_max - y_min).
// Convenience wrapper that tabulates the pmf per call; use a
// BetaBinomialTable for repeated draws from one spec.
int sample_scaled_beta_binomial(const ScaledBetaBinomialSpec& spec, RngStream& rng);

// Exact pmf at y, evaluated through log-gamma. Throws ValidationError if y
// lies outside the support.
double beta_binomial_pmf(const ScaledBetaBinomialSpec& spec, int y);

// Tabulated pmf/cdf for repeated draws from one spec. Sampling is an
// inverse-CDF lookup consuming exactly one uniform per draw.
class BetaBinomialTable {
  public:
    explicit BetaBinomialTable(const ScaledBetaBinomialSpec& spec);

    int sample(RngStream& rng) const;
    double pmf(int y) const;
    const ScaledBetaBinomialSpec& spec() const { return spec_; }

  private:
    ScaledBetaBinomialSpec spec_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

}  // namespace plandscape
