#include <doctest.h>

#include "oracles.hpp"
#include "vclab/concept_class.hpp"
#include "vclab/generators.hpp"

using namespace vclab;

TEST_CASE("load_class parses the text format") {
    auto res = load_class("01\n10\n");
    CHECK(res.cls.domain_size() == 2);
    CHECK(res.cls.size() == 2);
    CHECK_FALSE(res.duplicates_removed);

    auto dup = load_class("01\n01\n10\n");
    CHECK(dup.cls.size() == 2);
    CHECK(dup.duplicates_removed);
    CHECK(dup.raw_rows == 3);

    CHECK_THROWS_AS(load_class("01\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_class("01\n2x\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_class(""), std::invalid_argument);
    CHECK_THROWS_AS(load_class("# only a comment\n"), std::invalid_argument);

    auto commented = load_class("# header\n01\n\n10\n");
    CHECK(commented.cls.size() == 2);
}

TEST_CASE("load_class parses the JSON form") {
    auto res = load_class(R"({"n": 3, "concepts": ["010", "101", "010"]})");
    CHECK(res.cls.domain_size() == 3);
    CHECK(res.cls.size() == 2);
    CHECK(res.duplicates_removed);
    CHECK_THROWS_AS(load_class(R"({"n": 3, "concepts": ["01"]})"), std::invalid_argument);
    CHECK_THROWS_AS(load_class(R"({"concepts": []})"), std::invalid_argument);
    CHECK_THROWS_AS(load_class("{\"n\": 2}"), std::invalid_argument);
}

TEST_CASE("rows are deduplicated and lexicographically sorted") {
    auto cls = ConceptClass::from_strings({"11", "00", "10", "01"});
    CHECK(cls.row(0).to_string() == "00");
    CHECK(cls.row(1).to_string() == "01");
    CHECK(cls.row(2).to_string() == "10");
    CHECK(cls.row(3).to_string() == "11");
    CHECK(cls.index_of(BitVec::from_string("10")) == 2);
    CHECK(cls.index_of(BitVec::from_string("111")) == npos);
}

TEST_CASE("restrict_to projects and merges rows") {
    auto cube = gen::full_cube(2);
    std::size_t first[1] = {0};
    auto r = cube.restrict_to(first);
    CHECK(r.domain_size() == 1);
    CHECK(r.size() == 2);

    auto cls = ConceptClass::from_strings({"001", "011", "101"});
    std::size_t yz[2] = {1, 2};
    auto merged = cls.restrict_to(yz);
    CHECK(merged.size() == 2);
    CHECK(merged.row(0).to_string() == "01");
    CHECK(merged.row(1).to_string() == "11");

    auto s3 = gen::singletons_with_empty(3);
    std::size_t all[3] = {0, 1, 2};
    CHECK(s3.restrict_to(all) == s3);

    CHECK_THROWS_AS(cls.restrict_to(std::span<const std::size_t>{}), std::invalid_argument);
    std::size_t bad[1] = {9};
    CHECK_THROWS_AS(cls.restrict_to(bad), std::invalid_argument);
}

TEST_CASE("shatters matches the definition") {
    auto cube = gen::full_cube(2);
    std::size_t both[2] = {0, 1};
    CHECK(cube.shatters(both));

    auto s3 = gen::singletons_with_empty(3);
    std::size_t pair[2] = {0, 2};
    CHECK_FALSE(s3.shatters(pair));  // the 11 pattern never appears

    CHECK(s3.shatters(std::span<const std::size_t>{}));
    CHECK(cube.shatters(std::span<const std::size_t>{}));
}

TEST_CASE("vc_dimension on the structured families") {
    CHECK(gen::singletons_with_empty(5).vc_dimension() == 1);
    CHECK(gen::full_cube(3).vc_dimension() == 3);
    CHECK(gen::full_cube(4).vc_dimension() == 4);
    CHECK(gen::intervals(6).vc_dimension() == 2);
    CHECK(ConceptClass::from_strings({"0101"}).vc_dimension() == 0);
}

TEST_CASE("vc_dimension agrees with naive enumeration") {
    std::vector<ConceptClass> classes = {
        gen::singletons_with_empty(4), gen::intervals(5), gen::hamming_ball(5, 2),
        gen::random_class(6, 20, 7),   gen::random_class(7, 12, 8),
    };
    for (const auto& c : classes) CHECK(c.vc_dimension() == oracle::vc_naive(c));
}

TEST_CASE("dual transposes with deduplication") {
    auto a = ConceptClass::from_strings({"01", "10"});
    auto da = a.dual();
    CHECK(da.cls.size() == 2);
    CHECK(da.cls.row(0).to_string() == "01");
    CHECK(da.cls.row(1).to_string() == "10");

    auto b = ConceptClass::from_strings({"00", "01"});
    auto db = b.dual();
    CHECK(db.cls.size() == 2);  // columns (0,0) and (0,1) are distinct

    auto c = ConceptClass::from_strings({"001", "110"});  // two equal columns
    CHECK(c.dual().cls.size() < c.domain_size());

    // col_of_point / rep_point agree with the matrix.
    auto dc = c.dual();
    for (std::size_t x = 0; x < c.domain_size(); ++x) {
        const auto& col = dc.cls.row(dc.col_of_point[x]);
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(col.get(i) == c.row(i).get(x));
    }
}

TEST_CASE("dual of dual recovers the class when columns are distinct") {
    for (const auto& cls : {gen::intervals(5), gen::full_cube(3)}) {
        auto d = cls.dual();
        if (d.cls.size() != cls.domain_size()) continue;  // duplicate columns
        auto dd = d.cls.dual();
        CHECK(dd.cls == cls);
    }
}

TEST_CASE("sauer_bound values and error paths") {
    CHECK(sauer_bound(5, 1) == 6);
    CHECK(sauer_bound(6, 2) == 22);
    CHECK(sauer_bound(4, 4) == 16);
    CHECK_THROWS_AS(sauer_bound(3, 4), std::invalid_argument);
}

TEST_CASE("Sauer-Shelah holds on generated classes, with the power form") {
    std::vector<ConceptClass> classes = {
        gen::singletons_with_empty(6), gen::intervals(7),      gen::hamming_ball(5, 2),
        gen::full_cube(4),             gen::random_class(8, 30, 3),
        gen::random_vc_bounded(8, 2, 12, 4),
    };
    for (const auto& c : classes) {
        const unsigned d = static_cast<unsigned>(c.vc_dimension());
        CHECK(BigInt(c.size()) <= sauer_bound(c.domain_size(), d));
        if (d >= 2) {
            BigInt nd = 1;
            for (unsigned i = 0; i < d; ++i) nd *= c.domain_size();
            CHECK(BigInt(c.size()) <= nd);
        }
    }
}

TEST_CASE("dual VC-dimension bound on small-dimension classes") {
    std::vector<ConceptClass> classes = {
        gen::singletons_with_empty(6), gen::intervals(6), gen::hamming_ball(5, 2),
        gen::full_cube(3),             gen::random_class(7, 24, 11),
    };
    for (const auto& c : classes) {
        const int d = c.vc_dimension();
        if (d > 3) continue;
        CHECK(c.dual().cls.vc_dimension() <= (1 << (d + 1)));
    }
}

TEST_CASE("restriction never raises the VC-dimension, shattering is monotone") {
    auto cls = gen::random_class(7, 28, 9);
    const int d = cls.vc_dimension();
    for (std::uint64_t mask = 1; mask < (1u << 7); mask += 9) {
        std::vector<std::size_t> pts;
        for (std::size_t p = 0; p < 7; ++p)
            if ((mask >> p) & 1) pts.push_back(p);
        CHECK(cls.restrict_to(pts).vc_dimension() <= d);
        if (cls.shatters(pts)) {
            for (std::size_t drop = 0; drop < pts.size(); ++drop) {
                auto sub = pts;
                sub.erase(sub.begin() + drop);
                CHECK(cls.shatters(sub));
            }
        }
    }
}

TEST_CASE("labeled samples stay sorted and validated") {
    auto s = LabeledSample::make({{3, 1}, {1, 0}});
    CHECK(s.points == std::vector<std::size_t>{1, 3});
    CHECK(s.labels == std::vector<std::uint8_t>{0, 1});
    CHECK(*s.label_of(3) == 1);
    CHECK_FALSE(s.label_of(2).has_value());
    CHECK_THROWS_AS(LabeledSample::make({{1, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(LabeledSample::make({{1, 2}}), std::invalid_argument);
}
