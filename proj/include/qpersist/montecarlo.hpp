#pragma once

// Direct simulation of the comparison chain.  No duality folding here: the
// simulator runs the process at the parameters it is given, so it checks the
// analytic reductions independently.  Trajectories are processed in fixed
// chunks, one RNG stream per chunk, and the integer histograms are merged in
// chunk order; results depend only on (params, n_max, trials, seed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "rng.hpp"

namespace qpersist {

inline constexpr std::uint64_t mc_chunk_size = std::uint64_t(1) << 16;

// counts[t-1] = #{T = t} for t = 1..n_max; counts[n_max] = #{T > n_max},
// where T is the first index whose comparison fails.
struct TimeHistogram {
    unsigned n_max = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = mc_chunk_size;
    std::vector<std::uint64_t> counts;
};

namespace detail {

inline TimeHistogram simulate_time_histogram(double theta, double xi, unsigned n_max,
                                             std::uint64_t trials, std::uint64_t seed) {
    TimeHistogram h;
    h.n_max = n_max;
    h.trials = trials;
    h.seed = seed;
    h.counts.assign(n_max + 1, 0);
    const std::uint64_t chunks = (trials + mc_chunk_size - 1) / mc_chunk_size;
    for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
        RngStream rng(seed, chunk);
        const std::uint64_t lo = chunk * mc_chunk_size;
        const std::uint64_t hi = std::min(trials, lo + mc_chunk_size);
        std::vector<std::uint64_t> local(n_max + 1, 0);
        for (std::uint64_t t = lo; t < hi; ++t) {
            double prev = rng.sample_laplace(xi);
            unsigned n = 1;
            for (; n <= n_max; ++n) {
                double x = rng.sample_laplace(xi);
                if (x <= theta * prev) break;
                prev = x;
            }
            ++local[n <= n_max ? n - 1 : n_max];
        }
        for (std::size_t i = 0; i < local.size(); ++i) h.counts[i] += local[i];
    }
    return h;
}

inline void check_mc_args(unsigned n_max, std::uint64_t trials) {
    if (n_max == 0) throw std::invalid_argument("mc: n_max must be >= 1");
    if (trials < 1000) throw std::invalid_argument("mc: trials must be >= 1000");
}

}  // namespace detail

struct SurvivalEstimate {
    unsigned n_max = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = mc_chunk_size;
    std::vector<double> p_hat;   // p_hat[n-1] estimates p_n
    std::vector<double> se;      // binomial standard errors
};

inline TimeHistogram persistence_time_histogram(const ModelParams<double>& params, unsigned n_max,
                                                std::uint64_t trials, std::uint64_t seed) {
    detail::check_mc_args(n_max, trials);
    return detail::simulate_time_histogram(params.theta, params.xi, n_max, trials, seed);
}

inline SurvivalEstimate mc_persistence(const ModelParams<double>& params, unsigned n_max,
                                       std::uint64_t trials, std::uint64_t seed) {
    detail::check_mc_args(n_max, trials);
    TimeHistogram h = detail::simulate_time_histogram(params.theta, params.xi, n_max, trials, seed);
    SurvivalEstimate est;
    est.n_max = n_max;
    est.trials = trials;
    est.seed = seed;
    est.p_hat.resize(n_max);
    est.se.resize(n_max);
    std::uint64_t surviving = h.counts[n_max];   // T > n_max
    for (unsigned n = n_max; n >= 1; --n) {
        double p = static_cast<double>(surviving) / static_cast<double>(trials);
        est.p_hat[n - 1] = p;
        est.se[n - 1] = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
        surviving += h.counts[n - 1];
    }
    return est;
}

}  // namespace qpersist
