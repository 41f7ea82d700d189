#pragma once

#include <cstdint>

#include "vclab/compression.hpp"
#include "vclab/concept_class.hpp"
#include "vclab/metric.hpp"

namespace vclab {

// Double-sampling bound 2(2m+1)^d (1 - eps/4)^m on the probability that some
// concept eps-far from the target stays consistent with m samples.
// eps in (0,1]; evaluated in extended precision and never rounded down.
double ds_bound(std::uint64_t m, unsigned d, const Rat& eps);

// Compression-to-PAC bound |Q| * sum_{j<=k} C(m,j) (1-eps)^(m-j).
double lw_bound(std::uint64_t m, unsigned k, const BigInt& qsize, const Rat& eps);

// Conservative count of side-information values expressible within a kept
// budget of k points and depth budget t_max: every (T, partial injection
// {0..T} -> kept positions) pair is counted.
BigInt side_info_value_count(unsigned k, unsigned t_max);

struct PacExperiment {
    ConceptClass cls;
    std::size_t target = 0;  // canonical row index
    Distribution mu;
    std::uint64_t m = 1;
    Rat eps;        // (0, 1]
    std::uint32_t trials = 1;
    std::uint64_t seed = 0;

    explicit PacExperiment(ConceptClass c)
        : cls(std::move(c)), mu(Distribution::uniform(cls.domain_size())) {}
};

struct BoundReport {
    std::string learner;       // "consistent" | "compression"
    std::uint64_t m = 0;
    std::uint32_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t failures = 0;
    double rate = 0;           // failures / trials
    double std_error = 0;      // sqrt(rate(1-rate)/trials)
    double bound = 0;
    bool pass = false;         // rate <= bound + 3*std_error
    unsigned vc = 0;           // consistent learner
    unsigned k_max = 0;        // compression learner: largest kept size seen
    unsigned t_max = 0;
    BigInt q_size = 1;
};

// Per trial, draws m points independently from mu (a multiset) and checks
// whether some concept consistent with the target on the drawn points is
// strictly more than eps away in mu-distance (decided exactly); compares the
// empirical frequency against ds_bound.
BoundReport simulate_consistency_failure(const PacExperiment& exp);

// Per trial, compresses the drawn sample's support with the recursive scheme,
// reconstructs, and counts exact dist(h, target) > eps; compares against
// lw_bound at the observed kept/depth budget.
BoundReport simulate_compression_learner(const PacExperiment& exp,
                                         const SchemeParams& params = {});

}  // namespace vclab
