#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vclab/generators.hpp"
#include "vclab/teaching.hpp"

using namespace vclab;

TEST_CASE("is_teaching_set basics") {
    auto lone = ConceptClass::from_strings({"0101"});
    CHECK(is_teaching_set(lone, 0, std::span<const std::size_t>{}));

    auto s4 = gen::singletons_with_empty(4);
    const std::size_t single2 = s4.index_of(BitVec::from_string("0010"));
    std::size_t p2[1] = {2};
    CHECK(is_teaching_set(s4, single2, p2));

    const std::size_t empty = s4.index_of(BitVec::from_string("0000"));
    std::size_t three[3] = {0, 1, 2};
    CHECK_FALSE(is_teaching_set(s4, empty, three));
    std::size_t four[4] = {0, 1, 2, 3};
    CHECK(is_teaching_set(s4, empty, four));

    CHECK_THROWS_AS(is_teaching_set(s4, 99, p2), std::invalid_argument);
}

TEST_CASE("min_teaching_set on the named cases") {
    auto lone = ConceptClass::from_strings({"0101"});
    CHECK(min_teaching_set(lone, 0)->empty());

    auto s5 = gen::singletons_with_empty(5);
    const std::size_t empty = s5.index_of(BitVec::from_string("00000"));
    auto set = min_teaching_set(s5, empty);
    CHECK(set->size() == 5);  // only the whole domain separates the empty set

    // Intervals: the empty concept needs every point (each one-point run must
    // be ruled out), while the full run is pinned by its two endpoints.
    auto iv4 = gen::intervals(4);
    auto iv_empty = min_teaching_set(iv4, iv4.index_of(BitVec::from_string("0000")));
    CHECK(iv_empty->size() == 4);
    auto iv_full = min_teaching_set(iv4, iv4.index_of(BitVec::from_string("1111")));
    CHECK(*iv_full == std::vector<std::size_t>{0, 3});

    CHECK_FALSE(min_teaching_set(s5, empty, 4).has_value());  // cap exceeded
    CHECK(min_teaching_set(s5, empty, 5).has_value());
}

TEST_CASE("min_teaching_set agrees with naive enumeration") {
    std::vector<ConceptClass> classes = {
        gen::singletons_with_empty(5), gen::intervals(5), gen::hamming_ball(4, 2),
        gen::random_class(7, 20, 31),  gen::random_36(6, 10, 5),
        gen::random_class(10, 24, 77),
    };
    for (const auto& cls : classes)
        for (std::size_t i = 0; i < cls.size(); ++i) {
            auto fast = min_teaching_set(cls, i);
            REQUIRE(fast.has_value());
            CHECK(*fast == oracle::min_teaching_naive(cls, i));
        }
}

TEST_CASE("halving teaching on the named cases") {
    auto lone = ConceptClass::from_strings({"0101"});
    auto r0 = halving_teaching_concept(lone);
    CHECK(r0.points.empty());
    CHECK(r0.concept_index == 0);

    auto two = ConceptClass::from_strings({"0", "1"});
    auto r1 = halving_teaching_concept(two);
    CHECK(r1.points == std::vector<std::size_t>{0});
    CHECK(r1.bits.to_string() == "0");  // minority tie breaks to label 0

    auto cube = gen::full_cube(3);
    auto r3 = halving_teaching_concept(cube);
    CHECK(r3.points.size() == 3);  // each step splits 4/4
    CHECK(r3.bits.to_string() == "000");
    CHECK(is_teaching_set(cube, r3.concept_index, r3.points));
}

TEST_CASE("halving stays within the log bound and is always valid") {
    std::vector<ConceptClass> classes = {
        gen::singletons_with_empty(8), gen::intervals(7), gen::hamming_ball(5, 2),
        gen::random_class(8, 40, 13),  gen::random_36(7, 12, 3),
    };
    for (const auto& cls : classes) {
        auto r = halving_teaching_concept(cls);
        CHECK(is_teaching_set(cls, r.concept_index, r.points));
        CHECK(r.points.size() <=
              static_cast<std::size_t>(std::ceil(std::log2(double(cls.size())))));
    }
}

TEST_CASE("pair reduction falls back to halving on small classes") {
    auto iv = gen::intervals(5);
    auto plain = halving_teaching_concept(iv);
    auto pr = pair_reduction_teaching_concept(iv);  // default threshold is astronomical
    CHECK(pr.steps.empty());
    CHECK(pr.report.concept_index == plain.concept_index);
    CHECK(pr.report.points == plain.points);
}

TEST_CASE("pair reduction with a forced threshold shrinks strictly") {
    std::vector<ConceptClass> classes = {
        gen::intervals(7), gen::random_class(8, 40, 17), gen::hamming_ball(5, 2),
    };
    for (const auto& cls : classes) {
        auto pr = pair_reduction_teaching_concept(cls, 3);
        CHECK(is_teaching_set(cls, pr.report.concept_index, pr.report.points));
        std::size_t prev = cls.size();
        for (const auto& st : pr.steps) {
            CHECK(st.class_before == prev);
            CHECK(st.subset_size > 0);
            CHECK(st.subset_size < st.class_before);
            prev = st.subset_size;
        }
        if (!pr.steps.empty()) CHECK(prev <= 3 * 2);  // loop exits near the threshold
    }
}

TEST_CASE("pair reduction default threshold saturates") {
    CHECK(pair_reduction_default_threshold(0) == 1);
    // (4e^2)^8 = 582360139072.004
    CHECK(pair_reduction_default_threshold(1) >= 582360139071);
    CHECK(pair_reduction_default_threshold(1) <= 582360139073);
    CHECK(pair_reduction_default_threshold(2) == std::uint64_t{0x7fffffffffffffff});
}

TEST_CASE("rt_dimension on the named families") {
    auto rt_s = rt_dimension(gen::singletons_with_empty(6));
    CHECK(rt_s.dimension == 1);
    CHECK(rt_s.layers.size() == 2);
    CHECK(rt_s.layers[0].members.size() == 6);
    CHECK(rt_s.layers[1].set_size == 0);

    auto cube2 = rt_dimension(gen::full_cube(2));
    CHECK(cube2.dimension == 2);
    CHECK(cube2.layers.size() == 1);  // all four concepts leave together

    CHECK(rt_dimension(gen::hamming_ball(4, 1)).dimension == 1);
    CHECK(rt_dimension(gen::hamming_ball(4, 2)).dimension == 2);
    CHECK(rt_dimension(gen::hamming_ball(5, 2)).dimension == 2);
}

TEST_CASE("rt_dimension is 1 on VC-1 classes and log-bounded in general") {
    for (std::uint64_t seed : {1, 2, 3}) {
        auto cls = gen::random_vc_bounded(8, 1, 6, seed);
        CHECK(cls.vc_dimension() <= 1);
        CHECK(rt_dimension(cls).dimension <= 1);
    }
    std::vector<ConceptClass> classes = {
        gen::intervals(6), gen::random_class(7, 30, 19), gen::full_cube(3),
    };
    for (const auto& cls : classes) {
        auto rt = rt_dimension(cls);
        CHECK(rt.dimension <=
              static_cast<std::size_t>(std::ceil(std::log2(double(cls.size())))));
        // every listed teaching set is valid inside its remaining class
        std::vector<std::size_t> removed;
        auto remaining = cls;
        for (const auto& layer : rt.layers) {
            for (const auto& [idx, set] : layer.members) {
                CHECK(set.size() == layer.set_size);
                CHECK(is_teaching_set(remaining, remaining.index_of(cls.row(idx)), set));
            }
            std::vector<BitVec> keep;
            for (std::size_t i = 0; i < cls.size(); ++i) {
                bool gone = false;
                for (const auto& lay : rt.layers) {
                    for (const auto& [idx, set] : lay.members)
                        if (idx == i) gone = true;
                    if (&lay == &layer) break;
                }
                if (!gone) keep.push_back(cls.row(i));
            }
            if (keep.empty()) break;
            remaining = ConceptClass::from_rows(cls.domain_size(), keep);
        }
    }
}

TEST_CASE("(3,6) recognition") {
    CHECK_FALSE(is_36_class(gen::full_cube(3)));
    CHECK(is_36_class(gen::singletons_with_empty(5)));
    // intervals realize every triple pattern except 101: seven, one too many
    CHECK_FALSE(is_36_class(gen::intervals(5)));
    CHECK(is_36_class(gen::random_vc_bounded(7, 1, 6, 9)));
    CHECK(is_36_class(ConceptClass::from_strings({"01", "10"})));  // vacuous, n < 3
}

TEST_CASE("three_six teaching sets") {
    auto s5 = gen::singletons_with_empty(5);
    auto r = three_six_teaching(s5);
    CHECK(r.points.size() == 1);
    CHECK(is_teaching_set(s5, r.concept_index, r.points));

    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto cls = gen::random_36(8, 12, seed);
        auto t = three_six_teaching(cls);
        CHECK(t.points.size() <= 3);
        CHECK(is_teaching_set(cls, t.concept_index, t.points));
    }

    CHECK_THROWS_AS(three_six_teaching(gen::full_cube(3)), std::invalid_argument);
}

TEST_CASE("every teaching report validates in its class") {
    std::vector<ConceptClass> classes = {
        gen::intervals(6), gen::random_36(7, 10, 4), gen::random_class(6, 20, 23),
    };
    for (const auto& cls : classes) {
        auto h = halving_teaching_concept(cls);
        CHECK(is_teaching_set(cls, h.concept_index, h.points));
        auto p = pair_reduction_teaching_concept(cls, 4).report;
        CHECK(is_teaching_set(cls, p.concept_index, p.points));
    }
}
