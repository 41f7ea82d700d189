#include "vclab/generators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <set>
#include <stdexcept>

#include "vclab/rng.hpp"

namespace vclab {
namespace gen {

namespace {

constexpr std::uint64_t kRejectionBudget = 1'000'000;

BitVec draw_concept(SplitMix64& rng, std::size_t n) {
    BitVec c(n);
    for (std::size_t base = 0; base < n; base += 64) {
        std::uint64_t w = rng.next();
        std::size_t hi = std::min<std::size_t>(64, n - base);
        for (std::size_t b = 0; b < hi; ++b)
            if ((w >> b) & 1) c.set(base + b, true);
    }
    return c;
}

// Does adding `cand` to `rows` shatter some (d+1)-subset?
bool would_exceed_vc(const std::vector<BitVec>& rows, const BitVec& cand,
                     std::size_t n, int d) {
    std::vector<BitVec> all = rows;
    all.push_back(cand);
    auto cls = ConceptClass::from_rows(n, std::move(all));
    return cls.vc_dimension() > d;
}

}  // namespace

ConceptClass singletons_with_empty(std::size_t n) {
    if (n < 1) throw std::invalid_argument("singletons_with_empty needs n >= 1");
    std::vector<BitVec> rows;
    rows.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVec c(n);
        c.set(i, true);
        rows.push_back(std::move(c));
    }
    return ConceptClass::from_rows(n, std::move(rows));
}

ConceptClass intervals(std::size_t n) {
    if (n < 1) throw std::invalid_argument("intervals needs n >= 1");
    std::vector<BitVec> rows;
    rows.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            BitVec c(n);
            for (std::size_t k = i; k <= j; ++k) c.set(k, true);
            rows.push_back(std::move(c));
        }
    return ConceptClass::from_rows(n, std::move(rows));
}

ConceptClass full_cube(std::size_t n) {
    if (n < 1 || n > 20) throw std::invalid_argument("full_cube needs 1 <= n <= 20");
    std::vector<BitVec> rows;
    rows.reserve(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitVec c(n);
        for (std::size_t b = 0; b < n; ++b)
            if ((v >> b) & 1) c.set(b, true);
        rows.push_back(std::move(c));
    }
    return ConceptClass::from_rows(n, std::move(rows));
}

ConceptClass hamming_ball(std::size_t n, std::size_t d) {
    if (n < 1 || n > 20 || d > n)
        throw std::invalid_argument("hamming_ball needs 1 <= n <= 20 and 0 <= d <= n");
    std::vector<BitVec> rows;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        if (static_cast<std::size_t>(std::popcount(v)) > d) continue;
        BitVec c(n);
        for (std::size_t b = 0; b < n; ++b)
            if ((v >> b) & 1) c.set(b, true);
        rows.push_back(std::move(c));
    }
    return ConceptClass::from_rows(n, std::move(rows));
}

ConceptClass random_class(std::size_t n, std::size_t size, std::uint64_t seed) {
    if (n < 1 || size < 1) throw std::invalid_argument("random_class needs n >= 1, size >= 1");
    if (n < 64 && size > (std::size_t{1} << n))
        throw std::invalid_argument("random_class: size exceeds 2^n");
    SplitMix64 rng(seed);
    std::set<std::string> seen;
    std::vector<BitVec> rows;
    for (std::uint64_t tries = 0; rows.size() < size; ++tries) {
        if (tries >= kRejectionBudget)
            throw std::runtime_error("random_class: rejection budget exhausted");
        BitVec c = draw_concept(rng, n);
        if (seen.insert(c.to_string()).second) rows.push_back(std::move(c));
    }
    return ConceptClass::from_rows(n, std::move(rows));
}

ConceptClass random_vc_bounded(std::size_t n, int d, std::size_t size, std::uint64_t seed) {
    if (n < 1 || size < 1 || d < 0)
        throw std::invalid_argument("random_vc_bounded needs n >= 1, size >= 1, d >= 0");
    SplitMix64 rng(seed);
    std::set<std::string> seen;
    std::vector<BitVec> rows;
    for (std::uint64_t tries = 0; rows.size() < size; ++tries) {
        if (tries >= kRejectionBudget)
            throw std::runtime_error("random_vc_bounded: rejection budget exhausted");
        BitVec c = draw_concept(rng, n);
        if (!seen.count(c.to_string()) && !would_exceed_vc(rows, c, n, d)) {
            seen.insert(c.to_string());
            rows.push_back(std::move(c));
        }
    }
    return ConceptClass::from_rows(n, std::move(rows));
}

ConceptClass random_36(std::size_t n, std::size_t size, std::uint64_t seed) {
    if (n < 1 || size < 1) throw std::invalid_argument("random_36 needs n >= 1, size >= 1");
    SplitMix64 rng(seed);
    std::set<std::string> seen;
    std::vector<BitVec> rows;
    // Patterns realized per point triple, maintained incrementally.
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) triples.push_back({a, b, c});
    std::vector<std::uint8_t> masks(triples.size(), 0);
    for (std::uint64_t tries = 0; rows.size() < size; ++tries) {
        if (tries >= kRejectionBudget)
            throw std::runtime_error("random_36: rejection budget exhausted");
        BitVec c = draw_concept(rng, n);
        if (seen.count(c.to_string())) continue;
        bool ok = true;
        std::vector<std::uint8_t> upd(masks);
        for (std::size_t t = 0; t < triples.size() && ok; ++t) {
            unsigned pat = (c.get(triples[t][0]) ? 1u : 0u) |
                           (c.get(triples[t][1]) ? 2u : 0u) |
                           (c.get(triples[t][2]) ? 4u : 0u);
            upd[t] |= static_cast<std::uint8_t>(1u << pat);
            if (std::popcount(upd[t]) > 6) ok = false;
        }
        if (!ok) continue;
        masks.swap(upd);
        seen.insert(c.to_string());
        rows.push_back(std::move(c));
    }
    return ConceptClass::from_rows(n, std::move(rows));
}

}  // namespace gen
}  // namespace vclab
