#pragma once

#include <span>

namespace modemflow::metrics {

struct SampleStats {
    int n = 0;
    double mean = 0;
    double stddev = 0;        // sample standard deviation (n-1 denominator)
    double half_width95 = 0;  // t_{0.975,n-1} * stddev / sqrt(n)
};

// two-sided 97.5% Student-t quantile; tabulated for 1..120 degrees of
// freedom, 1.96 beyond
double t_quantile_975(int dof);

// Throws InsufficientSamplesError when fewer than 2 samples are given.
SampleStats confidence_interval(std::span<const double> samples);

// M/M/1/K blocking probability with K the total queue capacity including
// the packet in service: (1-rho) rho^K / (1 - rho^{K+1}), 1/(K+1) at rho=1.
double mm1k_blocking(double rho, int capacity);

// Pollaczek-Khinchine mean sojourn for deterministic service:
// (1/mu)(1 + rho/(2(1-rho))). Throws UnstableQueueError when lambda >= mu.
double md1_mean_sojourn(double lambda, double mu);

// 1/(mu - lambda); throws UnstableQueueError when lambda >= mu.
double mm1_mean_sojourn(double lambda, double mu);

}  // namespace modemflow::metrics
