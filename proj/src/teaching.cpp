#include "vclab/teaching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace vclab {

namespace mp = boost::multiprecision;

bool is_teaching_set(const ConceptClass& cls, std::size_t idx,
                     std::span<const std::size_t> points) {
    if (idx >= cls.size()) throw std::invalid_argument("concept index out of range");
    const BitVec& c = cls.row(idx);
    for (std::size_t j = 0; j < cls.size(); ++j) {
        if (j == idx) continue;
        bool agrees = true;
        for (auto p : points)
            if (cls.row(j).get(p) != c.get(p)) {
                agrees = false;
                break;
            }
        if (agrees) return false;
    }
    return true;
}

namespace {

// Lexicographically-first minimum hitting set by iterative deepening.
struct HittingSearch {
    std::vector<BitVec> deltas;
    std::vector<std::size_t> delta_max;
    std::size_t n = 0;
    std::vector<std::size_t> chosen;
    std::vector<int> hits;  // per delta, how many chosen points hit it
    std::size_t uncovered = 0;

    bool dfs(std::size_t k, std::size_t start) {
        if (uncovered == 0) return true;
        if (chosen.size() == k) return false;
        for (std::size_t d = 0; d < deltas.size(); ++d)
            if (hits[d] == 0 && delta_max[d] < start) return false;
        for (std::size_t p = start; p < n; ++p) {
            bool useful = false;
            for (std::size_t d = 0; d < deltas.size(); ++d)
                if (hits[d] == 0 && deltas[d].get(p)) {
                    useful = true;
                    break;
                }
            if (!useful) continue;  // at minimum size every pick must cover something
            for (std::size_t d = 0; d < deltas.size(); ++d)
                if (deltas[d].get(p) && hits[d]++ == 0) --uncovered;
            chosen.push_back(p);
            if (dfs(k, p + 1)) return true;
            chosen.pop_back();
            for (std::size_t d = 0; d < deltas.size(); ++d)
                if (deltas[d].get(p) && --hits[d] == 0) ++uncovered;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<std::size_t>> min_teaching_set(const ConceptClass& cls,
                                                         std::size_t idx,
                                                         std::size_t cap) {
    if (idx >= cls.size()) throw std::invalid_argument("concept index out of range");
    const std::size_t n = cls.domain_size();
    HittingSearch hs;
    hs.n = n;
    const BitVec& c = cls.row(idx);
    for (std::size_t j = 0; j < cls.size(); ++j) {
        if (j == idx) continue;
        BitVec delta(n);
        std::size_t mx = 0;
        c.for_each_diff(cls.row(j), [&](std::size_t p) {
            delta.set(p, true);
            mx = p;
        });
        hs.deltas.push_back(std::move(delta));
        hs.delta_max.push_back(mx);
    }
    hs.hits.assign(hs.deltas.size(), 0);
    hs.uncovered = hs.deltas.size();
    const std::size_t limit = std::min(cap, n);
    for (std::size_t k = 0; k <= limit; ++k) {
        if (hs.dfs(k, 0)) return hs.chosen;
    }
    return std::nullopt;
}

namespace {

struct HalvingPick {
    std::size_t point;
    std::uint8_t label;
};

// Runs the halving loop over the rows indexed by live; returns the surviving
// row index and the pinned points (ascending by construction).
std::pair<std::size_t, std::vector<HalvingPick>> halving_live(
    const ConceptClass& cls, std::vector<std::size_t> live) {
    std::vector<HalvingPick> picks;
    while (live.size() > 1) {
        std::size_t x = npos, count1 = 0;
        for (std::size_t p = 0; p < cls.domain_size() && x == npos; ++p) {
            std::size_t c1 = 0;
            for (auto i : live) c1 += cls.row(i).get(p);
            if (c1 > 0 && c1 < live.size()) {
                x = p;
                count1 = c1;
            }
        }
        if (x == npos)
            throw std::logic_error("distinct rows must differ somewhere");
        const std::size_t count0 = live.size() - count1;
        const std::uint8_t label = (count1 < count0) ? 1 : 0;  // minority, ties -> 0
        std::vector<std::size_t> next;
        for (auto i : live)
            if (cls.row(i).get(x) == (label == 1)) next.push_back(i);
        picks.push_back({x, label});
        live = std::move(next);
    }
    return {live.front(), std::move(picks)};
}

TeachingReport make_report(const ConceptClass& cls, std::size_t idx,
                           std::vector<std::size_t> points, std::string method) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    TeachingReport r;
    r.concept_index = idx;
    r.bits = cls.row(idx);
    r.points = std::move(points);
    for (auto p : r.points) r.labels.push_back(r.bits.get(p) ? 1 : 0);
    r.method = std::move(method);
    return r;
}

}  // namespace

TeachingReport halving_teaching_concept(const ConceptClass& cls) {
    std::vector<std::size_t> all(cls.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto [idx, picks] = halving_live(cls, std::move(all));
    std::vector<std::size_t> pts;
    for (const auto& pk : picks) pts.push_back(pk.point);
    return make_report(cls, idx, std::move(pts), "halving");
}

std::uint64_t pair_reduction_default_threshold(int vc) {
    if (vc < 0) throw std::invalid_argument("negative VC-dimension");
    if (vc == 0) return 1;
    if (vc >= 6) return std::numeric_limits<std::int64_t>::max();
    long double expo = static_cast<long double>(vc) * std::pow(2.0L, vc + 2);
    long double v = std::pow(4 * 2.718281828459045235L * 2.718281828459045235L, expo);
    if (v >= static_cast<long double>(std::numeric_limits<std::int64_t>::max()))
        return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::uint64_t>(v);
}

PairReductionResult pair_reduction_teaching_concept(
    const ConceptClass& cls, std::uint64_t fallback_threshold) {
    const int d = cls.vc_dimension();
    const std::uint64_t size_rule_threshold = pair_reduction_default_threshold(d);
    const std::uint64_t threshold =
        fallback_threshold == 0 ? size_rule_threshold : fallback_threshold;
    const std::size_t n = cls.domain_size();

    std::vector<std::size_t> live(cls.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
    std::vector<int> pinned(n, -1);
    PairReductionResult res;

    while (live.size() > threshold) {
        std::size_t best_size = npos, bx0 = npos, bx1 = npos;
        for (std::size_t x0 = 0; x0 < n; ++x0) {
            for (std::size_t x1 = 0; x1 < n; ++x1) {
                if (x0 == x1) continue;
                std::size_t sz = 0;
                for (auto i : live)
                    if (!cls.row(i).get(x0) && cls.row(i).get(x1)) ++sz;
                if (sz == 0 || sz == live.size()) continue;
                if (sz < best_size) {
                    best_size = sz;
                    bx0 = x0;
                    bx1 = x1;
                }
            }
        }
        if (best_size == npos) break;  // no admissible pair; fall back to halving
        if (live.size() > size_rule_threshold) {
            // |S| <= |C|^(1 - 1/(d*2^(d+2))), exactly: |S|^D <= |C|^(D-1).
            const unsigned D = static_cast<unsigned>(d) << (d + 2);
            if (mp::pow(BigInt(best_size), D) > mp::pow(BigInt(live.size()), D - 1))
                throw std::logic_error("pair-reduction step inequality violated");
        }
        if (pinned[bx0] == 1 || pinned[bx1] == 0)
            throw std::logic_error("pair reduction produced conflicting labels");
        pinned[bx0] = 0;
        pinned[bx1] = 1;
        res.steps.push_back({bx0, bx1, live.size(), best_size});
        std::vector<std::size_t> next;
        for (auto i : live)
            if (!cls.row(i).get(bx0) && cls.row(i).get(bx1)) next.push_back(i);
        live = std::move(next);
    }

    auto [idx, picks] = halving_live(cls, std::move(live));
    res.halving_tail = picks.size();
    std::vector<std::size_t> pts;
    for (std::size_t p = 0; p < n; ++p)
        if (pinned[p] != -1) pts.push_back(p);
    for (const auto& pk : picks) pts.push_back(pk.point);
    res.report = make_report(cls, idx, std::move(pts), "pair_reduction");
    return res;
}

RTDecomposition rt_dimension(const ConceptClass& cls) {
    RTDecomposition out;
    std::vector<std::size_t> remaining(cls.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

    while (!remaining.empty()) {
        std::vector<BitVec> rows;
        rows.reserve(remaining.size());
        for (auto i : remaining) rows.push_back(cls.row(i));
        auto sub = ConceptClass::from_rows(cls.domain_size(), std::move(rows));
        // sub's rows stay in the same order as `remaining` (already sorted).

        std::size_t best = npos;
        std::vector<std::optional<std::vector<std::size_t>>> sets(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            sets[i] = min_teaching_set(sub, i, best);
            if (sets[i] && sets[i]->size() < best) best = sets[i]->size();
        }
        RTLayer layer;
        layer.set_size = best;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < sub.size(); ++i) {
            if (sets[i] && sets[i]->size() == best)
                layer.members.emplace_back(remaining[i], *sets[i]);
            else
                keep.push_back(remaining[i]);
        }
        out.dimension = std::max(out.dimension, best);
        out.layers.push_back(std::move(layer));
        remaining = std::move(keep);
    }
    return out;
}

bool is_36_class(const ConceptClass& cls) {
    if (cls.domain_size() < 3) return true;
    bool violated = for_each_subset(cls.domain_size(), 3,
                                    [&](std::span<const std::size_t> t) {
        unsigned mask = 0;
        for (const auto& r : cls.rows()) {
            unsigned pat = (r.get(t[0]) ? 1u : 0u) | (r.get(t[1]) ? 2u : 0u) |
                           (r.get(t[2]) ? 4u : 0u);
            mask |= 1u << pat;
        }
        return std::popcount(mask) > 6;
    });
    return !violated;
}

namespace {

// A VC-dimension-1 class always contains a concept taught by one point;
// find the canonical-first such pair by direct search.
std::pair<std::size_t, std::vector<std::size_t>> teach_single_point(
    const ConceptClass& cls) {
    if (cls.size() == 1) return {0, {}};
    for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t p = 0; p < cls.domain_size(); ++p) {
            std::size_t pts[1] = {p};
            if (is_teaching_set(cls, i, pts)) return {i, {p}};
        }
    throw std::logic_error("no single-point teaching set in a VC-1 class");
}

}  // namespace

TeachingReport three_six_teaching(const ConceptClass& cls) {
    if (!is_36_class(cls)) throw std::invalid_argument("class is not a (3,6) class");
    const int vc = cls.vc_dimension();
    if (vc <= 1) {
        auto [idx, pts] = teach_single_point(cls);
        return make_report(cls, idx, std::move(pts), "three_six");
    }
    // vc == 2: take the smallest quadrant over all shattered pairs.
    const std::size_t n = cls.domain_size();
    std::size_t best_size = npos, bx = npos, bx1 = npos;
    unsigned bb = 0, bb1 = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t x1 = x + 1; x1 < n; ++x1) {
            std::size_t pts[2] = {x, x1};
            if (!cls.shatters(pts)) continue;
            for (unsigned b = 0; b <= 1; ++b)
                for (unsigned b1 = 0; b1 <= 1; ++b1) {
                    std::size_t sz = 0;
                    for (const auto& r : cls.rows())
                        if (r.get(x) == (b == 1) && r.get(x1) == (b1 == 1)) ++sz;
                    if (sz < best_size) {
                        best_size = sz;
                        bx = x;
                        bx1 = x1;
                        bb = b;
                        bb1 = b1;
                    }
                }
        }
    if (bx == npos) throw std::logic_error("VC-2 class with no shattered pair");

    std::vector<BitVec> qrows;
    for (const auto& r : cls.rows())
        if (r.get(bx) == (bb == 1) && r.get(bx1) == (bb1 == 1)) qrows.push_back(r);
    auto quadrant = ConceptClass::from_rows(n, std::move(qrows));
    std::vector<std::size_t> pts{bx, bx1};
    std::size_t qidx;
    if (quadrant.size() == 1) {
        qidx = 0;
    } else {
        if (quadrant.vc_dimension() > 1)
            throw std::logic_error("minimal quadrant of a (3,6) class must have VC <= 1");
        auto [i, extra] = teach_single_point(quadrant);
        qidx = i;
        pts.insert(pts.end(), extra.begin(), extra.end());
    }
    const std::size_t orig = cls.index_of(quadrant.row(qidx));
    auto report = make_report(cls, orig, std::move(pts), "three_six");
    if (!is_teaching_set(cls, report.concept_index, report.points))
        throw std::logic_error("three_six produced an invalid teaching set");
    return report;
}

}  // namespace vclab
