#include "vclab/pac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vclab/rng.hpp"

namespace vclab {

namespace {

void check_eps(const Rat& eps) {
    if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0,1]");
}

// Upward nudge so a bound used on the pass/fail side never rounds down.
double round_up(long double v) {
    return static_cast<double>(v * (1.0L + 1e-15L) + 1e-300L);
}

}  // namespace

double ds_bound(std::uint64_t m, unsigned d, const Rat& eps) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    check_eps(eps);
    const long double e = eps.convert_to<long double>();
    long double v = 2.0L *
                    std::pow(2.0L * static_cast<long double>(m) + 1.0L,
                             static_cast<long double>(d)) *
                    std::pow(1.0L - e / 4.0L, static_cast<long double>(m));
    return round_up(v);
}

double lw_bound(std::uint64_t m, unsigned k, const BigInt& qsize, const Rat& eps) {
    if (k > m) throw std::invalid_argument("lw_bound needs k <= m");
    if (qsize < 1) throw std::invalid_argument("lw_bound needs |Q| >= 1");
    check_eps(eps);
    const long double e = eps.convert_to<long double>();
    // sum_{j=0}^{k} C(m,j) (1-eps)^(m-j)
    long double sum = 0;
    long double binom = 1;  // C(m, j)
    for (unsigned j = 0; j <= k; ++j) {
        sum += binom * std::pow(1.0L - e, static_cast<long double>(m - j));
        binom = binom * static_cast<long double>(m - j) / static_cast<long double>(j + 1);
    }
    return round_up(qsize.convert_to<long double>() * sum);
}

BigInt side_info_value_count(unsigned k, unsigned t_max) {
    BigInt total = 0;
    for (unsigned t = 0; t <= t_max; ++t) {
        // partial injections from {0..t} (t+1 slots) into k kept positions
        BigInt choose = 1, falling = 1;
        for (unsigned j = 0; j <= std::min(t + 1, k); ++j) {
            total += choose * falling;
            choose = choose * (t + 1 - j) / (j + 1);
            falling *= (k - j);
        }
    }
    return total;
}

namespace {

struct Sampler {
    std::vector<std::uint64_t> cumulative;
    std::uint64_t total;

    explicit Sampler(const Distribution& mu) : total(mu.total) {
        cumulative.reserve(mu.weights.size());
        std::uint64_t acc = 0;
        for (auto w : mu.weights) {
            acc += w;
            cumulative.push_back(acc);
        }
    }

    std::size_t draw(SplitMix64& rng) const {
        const std::uint64_t u = rng.below(total);
        return static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) -
            cumulative.begin());
    }
};

void check_experiment(const PacExperiment& exp) {
    if (exp.target >= exp.cls.size())
        throw std::invalid_argument("target concept index out of range");
    if (exp.mu.weights.size() != exp.cls.domain_size())
        throw std::invalid_argument("distribution length differs from the domain");
    if (exp.m < 1 || exp.trials < 1)
        throw std::invalid_argument("need m >= 1 and trials >= 1");
    check_eps(exp.eps);
}

void finish(BoundReport& r) {
    r.rate = static_cast<double>(r.failures) / static_cast<double>(r.trials);
    r.std_error = std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(r.trials));
    r.pass = r.rate <= r.bound + 3.0 * r.std_error;
}

}  // namespace

BoundReport simulate_consistency_failure(const PacExperiment& exp) {
    check_experiment(exp);
    const Sampler sampler(exp.mu);
    const BitVec& target = exp.cls.row(exp.target);
    const std::size_t n = exp.cls.domain_size();

    // Rows strictly farther than eps, with their disagreement sets.
    std::vector<BitVec> far_diffs;
    for (const auto& r : exp.cls.rows()) {
        if (r == target) continue;
        if (dist(r, target, exp.mu) > exp.eps) {
            BitVec d(n);
            target.for_each_diff(r, [&](std::size_t p) { d.set(p, true); });
            far_diffs.push_back(std::move(d));
        }
    }

    BoundReport rep;
    rep.learner = "consistent";
    rep.m = exp.m;
    rep.trials = exp.trials;
    rep.seed = exp.seed;
    rep.vc = static_cast<unsigned>(exp.cls.vc_dimension());
    rep.bound = ds_bound(exp.m, rep.vc, exp.eps);

    for (std::uint32_t t = 0; t < exp.trials; ++t) {
        SplitMix64 rng = trial_rng(exp.seed, t);
        BitVec support(n);
        for (std::uint64_t i = 0; i < exp.m; ++i) support.set(sampler.draw(rng), true);
        bool bad = false;
        for (const auto& d : far_diffs)
            if (!d.intersects(support)) {  // agrees with the target on the sample
                bad = true;
                break;
            }
        if (bad) ++rep.failures;
    }
    finish(rep);
    return rep;
}

BoundReport simulate_compression_learner(const PacExperiment& exp,
                                         const SchemeParams& params) {
    check_experiment(exp);
    const Sampler sampler(exp.mu);
    const BitVec& target = exp.cls.row(exp.target);
    const std::size_t n = exp.cls.domain_size();
    Scheme eng(exp.cls, params);

    BoundReport rep;
    rep.learner = "compression";
    rep.m = exp.m;
    rep.trials = exp.trials;
    rep.seed = exp.seed;
    rep.vc = static_cast<unsigned>(exp.cls.vc_dimension());

    for (std::uint32_t t = 0; t < exp.trials; ++t) {
        SplitMix64 rng = trial_rng(exp.seed, t);
        BitVec support(n);
        for (std::uint64_t i = 0; i < exp.m; ++i) support.set(sampler.draw(rng), true);
        std::vector<std::size_t> pts;
        support.for_each_set([&](std::size_t p) { pts.push_back(p); });
        auto sample = LabeledSample::from_concept(target, pts);
        auto cs = eng.compress(sample);
        BitVec h = eng.reconstruct(cs);
        rep.k_max = std::max<unsigned>(rep.k_max, static_cast<unsigned>(cs.kept.size()));
        rep.t_max = std::max(rep.t_max, cs.info.depth);
        if (dist(h, target, exp.mu) > exp.eps) ++rep.failures;
    }
    rep.q_size = side_info_value_count(rep.k_max, rep.t_max);
    rep.bound = lw_bound(exp.m, rep.k_max, rep.q_size, exp.eps);
    finish(rep);
    return rep;
}

}  // namespace vclab
