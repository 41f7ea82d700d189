#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vclab/generators.hpp"
#include "vclab/pac.hpp"

using namespace vclab;

TEST_CASE("ds_bound closed-form values") {
    CHECK(ds_bound(1, 0, Rat(1, 1)) == doctest::Approx(1.5));  // 2 * (3/4)
    CHECK(ds_bound(2, 1, Rat(1, 2)) ==
          doctest::Approx(2.0 * 5.0 * (7.0 / 8) * (7.0 / 8)));
    CHECK_THROWS_AS(ds_bound(0, 1, Rat(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(ds_bound(5, 1, Rat(3, 2)), std::invalid_argument);
}

TEST_CASE("ds_bound agrees with the exact-rational oracle to 12 digits") {
    for (std::uint64_t m : {1, 10, 103, 500}) {
        for (unsigned d : {0u, 1u, 2u, 3u}) {
            const Rat eps(1, 4);
            const double lib = ds_bound(m, d, eps);
            const double exact = oracle::ds_bound_exact(m, d, eps).convert_to<double>();
            CHECK(std::abs(lib - exact) <= std::abs(exact) * 1e-12 + 1e-300);
            CHECK(lib >= exact * (1 - 1e-14));  // never rounded below the true value
        }
    }
}

TEST_CASE("smallest m with ds_bound below 0.1 (d=2, eps=1/2)") {
    // Frozen from the exact-rational scan: 103.
    std::uint64_t m = 1;
    while (ds_bound(m, 2, Rat(1, 2)) >= 0.1) ++m;
    CHECK(m == 103);
    CHECK(oracle::ds_bound_exact(103, 2, Rat(1, 2)).convert_to<double>() < 0.1);
    CHECK(oracle::ds_bound_exact(102, 2, Rat(1, 2)).convert_to<double>() >= 0.1);
}

TEST_CASE("ds_bound decreases in m beyond the crossover") {
    double prev = ds_bound(1, 2, Rat(1, 2));
    bool decreasing = false;
    for (std::uint64_t m = 2; m <= 10'000; ++m) {
        const double cur = ds_bound(m, 2, Rat(1, 2));
        if (decreasing) CHECK(cur <= prev);
        if (cur < prev) decreasing = true;
        prev = cur;
    }
    CHECK(decreasing);
}

TEST_CASE("lw_bound closed forms and oracle agreement") {
    const Rat eps(1, 5);
    CHECK(lw_bound(20, 0, 1, eps) ==
          doctest::Approx(std::pow(0.8, 20)).epsilon(1e-12));

    // k = m covers the whole binomial sum.
    const double full = lw_bound(10, 10, 1, eps);
    const double exact_full = oracle::lw_bound_exact(10, 10, 1, eps).convert_to<double>();
    CHECK(full == doctest::Approx(exact_full).epsilon(1e-12));

    const double v = lw_bound(100, 2, 1, eps);
    const double exact = oracle::lw_bound_exact(100, 2, 1, eps).convert_to<double>();
    CHECK(std::abs(v - exact) <= std::abs(exact) * 1e-12);

    const double vq = lw_bound(40, 3, 4, Rat(3, 10));
    const double exq = oracle::lw_bound_exact(40, 3, 4, Rat(3, 10)).convert_to<double>();
    CHECK(std::abs(vq - exq) <= std::abs(exq) * 1e-12);

    CHECK_THROWS_AS(lw_bound(5, 6, 1, eps), std::invalid_argument);
    CHECK_THROWS_AS(lw_bound(5, 2, 0, eps), std::invalid_argument);
}

TEST_CASE("side-information value count") {
    CHECK(side_info_value_count(0, 0) == 1);
    CHECK(side_info_value_count(3, 0) == 4);   // empty or one mark into 3 positions
    CHECK(side_info_value_count(1, 1) == 5);   // (1+1) at T=0, (1+2) at T=1
    CHECK(side_info_value_count(2, 1) == 10);  // (1+2) at T=0, (1+4+2) at T=1
}

TEST_CASE("consistency-failure simulation on degenerate cases") {
    PacExperiment one(ConceptClass::from_strings({"0101"}));
    one.m = 5;
    one.trials = 50;
    one.eps = Rat(1, 4);
    auto r = simulate_consistency_failure(one);
    CHECK(r.failures == 0);  // no competing concept

    PacExperiment vac(gen::intervals(6));
    vac.target = 3;
    vac.m = 2;
    vac.trials = 50;
    vac.eps = Rat(1, 1);  // dist > 1 never happens
    auto rv = simulate_consistency_failure(vac);
    CHECK(rv.failures == 0);
}

TEST_CASE("consistency failures respect the double-sampling bound") {
    PacExperiment exp(gen::intervals(12));
    BitVec mid(12);
    for (std::size_t p = 3; p <= 8; ++p) mid.set(p, true);
    exp.target = exp.cls.index_of(mid);
    exp.eps = Rat(1, 4);
    exp.trials = 400;
    exp.seed = 11;
    exp.m = 1;
    while (ds_bound(exp.m, 2, exp.eps) >= 0.1) ++exp.m;
    auto r = simulate_consistency_failure(exp);
    CHECK(r.pass);
    CHECK(r.bound < 0.1);
}

TEST_CASE("compression learner: saturated samples reconstruct exactly") {
    auto cls = gen::singletons_with_empty(8);
    PacExperiment exp(cls);
    exp.target = 2;
    exp.eps = Rat(1, 10);
    exp.trials = 1;
    exp.m = 300;  // effectively covers the whole domain
    exp.seed = 3;
    auto r = simulate_compression_learner(exp);
    CHECK(r.failures == 0);
}

TEST_CASE("compression learner respects the LW bound, monotone on the grid") {
    PacExperiment exp(gen::singletons_with_empty(12));
    exp.target = 1;
    exp.eps = Rat(3, 10);
    exp.trials = 300;
    exp.seed = 5;
    double prev = 1.0;
    for (std::uint64_t m : {10, 20, 40, 80}) {
        exp.m = m;
        auto r = simulate_compression_learner(exp);
        CHECK(r.pass);
        CHECK(r.rate <= prev + 1e-12);
        prev = r.rate;
        CHECK(r.q_size >= 1);
    }
}

TEST_CASE("simulations are reproducible for a fixed seed") {
    PacExperiment exp(gen::intervals(10));
    exp.target = 7;
    exp.eps = Rat(1, 4);
    exp.trials = 100;
    exp.seed = 123;
    exp.m = 30;
    auto a = simulate_consistency_failure(exp);
    auto b = simulate_consistency_failure(exp);
    CHECK(a.failures == b.failures);
    exp.seed = 124;
    // a different seed draws different samples (not asserted equal/unequal on
    // failures; just exercise the path)
    auto c = simulate_consistency_failure(exp);
    CHECK(c.trials == 100);
}

TEST_CASE("weighted distributions drive both the sampler and the metric") {
    PacExperiment exp(gen::intervals(8));
    exp.mu = Distribution::from_weights({8, 1, 1, 1, 1, 1, 1, 8});
    exp.target = 5;
    exp.eps = Rat(1, 4);
    exp.trials = 200;
    exp.seed = 77;
    exp.m = 60;
    auto r = simulate_consistency_failure(exp);
    CHECK(r.pass);
}
