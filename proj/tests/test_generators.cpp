#include <doctest.h>

#include "oracles.hpp"
#include "vclab/generators.hpp"
#include "vclab/teaching.hpp"

using namespace vclab;

TEST_CASE("singletons_with_empty") {
    auto c = gen::singletons_with_empty(3);
    CHECK(c.size() == 4);
    CHECK(c.row(0).to_string() == "000");
    CHECK(c.row(1).to_string() == "001");
    CHECK(c.row(2).to_string() == "010");
    CHECK(c.row(3).to_string() == "100");
    for (std::size_t n = 2; n <= 7; ++n)
        CHECK(gen::singletons_with_empty(n).vc_dimension() == 1);
    CHECK(rt_dimension(gen::singletons_with_empty(5)).dimension == 1);
    CHECK_THROWS_AS(gen::singletons_with_empty(0), std::invalid_argument);
}

TEST_CASE("intervals: count, patterns, and the two-endpoint compression") {
    auto c = gen::intervals(4);
    CHECK(c.size() == 11);
    CHECK(gen::intervals(6).size() == 22);
    // 101 is the one impossible triple pattern; the other seven all occur
    CHECK_FALSE(is_36_class(gen::intervals(5)));
    std::size_t triple[3] = {0, 2, 4};
    auto proj = gen::intervals(5).restrict_to(triple);
    CHECK(proj.size() == 7);
    CHECK(proj.index_of(BitVec::from_string("101")) == npos);

    // The classic two-location scheme: keep the leftmost and rightmost 1
    // (or a single 0 when there are none), then fill the gap back in.
    const auto& cls = gen::intervals(5);
    for (std::size_t ci = 0; ci < cls.size(); ++ci) {
        for (std::uint64_t mask = 1; mask < (1u << 5); ++mask) {
            std::vector<std::size_t> pts;
            for (std::size_t p = 0; p < 5; ++p)
                if ((mask >> p) & 1) pts.push_back(p);
            auto s = LabeledSample::from_concept(cls.row(ci), pts);
            std::vector<std::pair<std::size_t, std::uint8_t>> keep;
            std::size_t lo = npos, hi = npos;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (s.labels[i]) {
                    if (lo == npos) lo = s.points[i];
                    hi = s.points[i];
                }
            if (lo == npos)
                keep.emplace_back(s.points[0], 0);
            else {
                keep.emplace_back(lo, 1);
                if (hi != lo) keep.emplace_back(hi, 1);
            }
            CHECK(keep.size() <= 2);
            // reconstruct: ones exactly on [lo, hi]
            BitVec h(5);
            if (lo != npos)
                for (std::size_t p = lo; p <= hi; ++p) h.set(p, true);
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s.labels[i])
                    CHECK(h.get(s.points[i]));
                // a 0 outside [lo,hi] stays 0 under h by construction
            }
        }
    }
}

TEST_CASE("full cube and hamming balls") {
    CHECK(gen::full_cube(3).size() == 8);
    CHECK(gen::full_cube(3).vc_dimension() == 3);
    auto ball = gen::hamming_ball(5, 2);
    CHECK(ball.size() == 16);
    CHECK(ball.vc_dimension() == 2);
    CHECK(BigInt(ball.size()) == sauer_bound(5, 2));  // maximum class
    CHECK(BigInt(gen::hamming_ball(4, 1).size()) == sauer_bound(4, 1));
    CHECK_THROWS_AS(gen::hamming_ball(4, 5), std::invalid_argument);
}

TEST_CASE("random generators are deterministic in the seed") {
    auto a = gen::random_class(8, 30, 17);
    auto b = gen::random_class(8, 30, 17);
    CHECK(a == b);
    CHECK_FALSE(a == gen::random_class(8, 30, 18));

    auto v1 = gen::random_vc_bounded(8, 2, 14, 5);
    CHECK(v1 == gen::random_vc_bounded(8, 2, 14, 5));
    auto t1 = gen::random_36(7, 12, 5);
    CHECK(t1 == gen::random_36(7, 12, 5));
}

TEST_CASE("random family constraints hold") {
    for (std::uint64_t seed : {1, 9, 42}) {
        CHECK(gen::random_vc_bounded(8, 1, 6, seed).vc_dimension() <= 1);
        CHECK(gen::random_vc_bounded(8, 2, 16, seed).vc_dimension() <= 2);
        CHECK(is_36_class(gen::random_36(8, 12, seed)));
    }
    CHECK(gen::random_class(6, 64, 3).size() == 64);  // the whole cube, eventually
    CHECK_THROWS_AS(gen::random_class(3, 9, 1), std::invalid_argument);
}

TEST_CASE("rejection budget exhausts on impossible requests") {
    // VC 0 forces a single concept; asking for three can never finish.
    CHECK_THROWS_AS(gen::random_vc_bounded(2, 0, 3, 7), std::runtime_error);
}
