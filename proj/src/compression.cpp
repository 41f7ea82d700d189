#include "vclab/compression.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <stdexcept>

#include "vclab/rng.hpp"

namespace vclab {

namespace mp = boost::multiprecision;

bool SideInfo::defined_at(unsigned t) const {
    for (const auto& [lvl, pt] : marks)
        if (lvl == t) return true;
    return false;
}

std::optional<std::size_t> SideInfo::at(unsigned t) const {
    for (const auto& [lvl, pt] : marks)
        if (lvl == t) return pt;
    return std::nullopt;
}

std::uint64_t default_base_threshold(int vc) {
    if (vc < 0) throw std::invalid_argument("negative VC-dimension");
    const int d = vc + 2;
    if (d >= 5) return std::numeric_limits<std::int64_t>::max();
    long double expo = static_cast<long double>(d) * std::pow(2.0L, d) + 1;
    long double v = std::pow(4 * 2.718281828459045235L * 2.718281828459045235L, expo);
    if (v >= static_cast<long double>(std::numeric_limits<std::int64_t>::max()))
        return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::uint64_t>(v);
}

// ---------------------------------------------------------------------------
// base scheme

namespace {

bool consistent_exists(const ConceptClass& cls, const LabeledSample& s) {
    for (const auto& r : cls.rows()) {
        bool ok = true;
        for (std::size_t i = 0; i < s.size() && ok; ++i)
            ok = r.get(s.points[i]) == (s.labels[i] == 1);
        if (ok) return true;
    }
    return false;
}

}  // namespace

LabeledSample base_compress(const ConceptClass& cls, const LabeledSample& sample,
                            std::vector<std::size_t>* pivots) {
    for (auto p : sample.points)
        if (p >= cls.domain_size())
            throw std::invalid_argument("sample point outside domain");
    if (!consistent_exists(cls, sample))
        throw std::invalid_argument("sample not realizable in the class");

    std::vector<std::size_t> live(cls.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
    std::vector<std::pair<std::size_t, std::uint8_t>> kept;

    while (true) {
        std::size_t pick = npos;
        std::uint8_t lbl = 0;
        for (std::size_t i = 0; i < sample.size(); ++i) {
            const std::size_t p = sample.points[i];
            std::size_t c1 = 0;
            for (auto j : live) c1 += cls.row(j).get(p);
            const std::uint8_t maj = (2 * c1 >= live.size()) ? 1 : 0;  // ties -> 1
            if (maj != sample.labels[i]) {
                pick = p;
                lbl = sample.labels[i];
                break;
            }
        }
        if (pick == npos) break;
        kept.emplace_back(pick, lbl);
        if (pivots) pivots->push_back(pick);
        std::vector<std::size_t> next;
        for (auto j : live)
            if (cls.row(j).get(pick) == (lbl == 1)) next.push_back(j);
        live = std::move(next);
        if (live.empty())
            throw std::invalid_argument("sample not realizable in the class");
    }
    return LabeledSample::make(std::move(kept));
}

BitVec base_reconstruct(const ConceptClass& cls, const LabeledSample& kept,
                        std::vector<std::size_t>* pivots) {
    for (auto p : kept.points)
        if (p >= cls.domain_size())
            throw std::invalid_argument("kept point outside domain");

    std::vector<std::size_t> live(cls.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;

    while (true) {
        BitVec h(cls.domain_size());
        for (std::size_t p = 0; p < cls.domain_size(); ++p) {
            std::size_t c1 = 0;
            for (auto j : live) c1 += cls.row(j).get(p);
            if (2 * c1 >= live.size()) h.set(p, true);
        }
        std::size_t pick = npos;
        std::uint8_t lbl = 0;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (h.get(kept.points[i]) != (kept.labels[i] == 1)) {
                pick = kept.points[i];
                lbl = kept.labels[i];
                break;
            }
        if (pick == npos) return h;
        if (pivots) pivots->push_back(pick);
        std::vector<std::size_t> next;
        for (auto j : live)
            if (cls.row(j).get(pick) == (lbl == 1)) next.push_back(j);
        live = std::move(next);
        if (live.empty())
            throw std::invalid_argument("kept sample inconsistent with the replay");
    }
}

// ---------------------------------------------------------------------------
// rank scheme

std::vector<std::size_t> rank_pivot_columns(const ConceptClass& cls,
                                            std::span<const std::size_t> cols) {
    const std::size_t m = cls.size();
    std::vector<std::vector<Rat>> mat(m, std::vector<Rat>(cols.size()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            mat[i][j] = cls.row(i).get(cols[j]) ? 1 : 0;

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols.size() && r < m; ++j) {
        std::size_t pivot = npos;
        for (std::size_t i = r; i < m; ++i)
            if (mat[i][j] != 0) {
                pivot = i;
                break;
            }
        if (pivot == npos) continue;
        std::swap(mat[pivot], mat[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (mat[i][j] == 0) continue;
            Rat f = mat[i][j] / mat[r][j];
            for (std::size_t jj = j; jj < cols.size(); ++jj)
                mat[i][jj] -= f * mat[r][jj];
        }
        pivots.push_back(cols[j]);
        ++r;
    }
    return pivots;
}

std::size_t matrix_rank(const ConceptClass& cls) {
    std::vector<std::size_t> all(cls.domain_size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return rank_pivot_columns(cls, all).size();
}

LabeledSample rank_compress(const ConceptClass& cls, const LabeledSample& sample) {
    for (auto p : sample.points)
        if (p >= cls.domain_size())
            throw std::invalid_argument("sample point outside domain");
    if (!consistent_exists(cls, sample))
        throw std::invalid_argument("sample not realizable in the class");
    auto pivots = rank_pivot_columns(cls, sample.points);
    std::vector<std::pair<std::size_t, std::uint8_t>> kept;
    for (auto p : pivots) kept.emplace_back(p, *sample.label_of(p));
    return LabeledSample::make(std::move(kept));
}

BitVec rank_reconstruct(const ConceptClass& cls, const LabeledSample& kept) {
    for (const auto& r : cls.rows()) {
        bool ok = true;
        for (std::size_t i = 0; i < kept.size() && ok; ++i)
            ok = r.get(kept.points[i]) == (kept.labels[i] == 1);
        if (ok) return r;
    }
    throw std::invalid_argument("no concept consistent with the kept sample");
}

// ---------------------------------------------------------------------------
// recursive scheme

struct Scheme::Level {
    int vc = 0;
    std::uint64_t threshold = 0;
    bool base = true;
    bool degenerate = false;  // |A*| == n: packing cannot shrink the domain
    std::optional<EpsilonSpec> eps;
    std::optional<DualApprox> approx;
    std::optional<ConceptClass> faithful_child;  // C|_{A*}, canonical
    std::vector<std::size_t> a_index;            // domain point -> slot in approx->points
};

Scheme::Scheme(ConceptClass cls, SchemeParams params)
    : cls_(std::move(cls)), params_(params) {}

Scheme::~Scheme() = default;
Scheme::Scheme(Scheme&&) noexcept = default;
Scheme& Scheme::operator=(Scheme&&) noexcept = default;

const Scheme::Level& Scheme::level(const ConceptClass& c) {
    const std::string key = c.content_key();
    auto it = memo_.find(key);
    if (it != memo_.end()) return *it->second;

    auto lv = std::make_unique<Level>();
    lv->vc = c.vc_dimension();
    lv->threshold = params_.base_threshold != 0 ? params_.base_threshold
                                                : default_base_threshold(lv->vc);
    lv->base = c.size() <= lv->threshold;
    if (!lv->base) {
        const unsigned d = static_cast<unsigned>(lv->vc) + 2;
        lv->eps = recursion_epsilon(c.size(), d);
        lv->approx = dual_approx_set(c, *lv->eps);
        lv->degenerate = lv->approx->points.size() == c.domain_size();
        if (!lv->degenerate) {
            lv->faithful_child = c.restrict_to(lv->approx->points);
            lv->a_index.assign(c.domain_size(), npos);
            for (std::size_t i = 0; i < lv->approx->points.size(); ++i)
                lv->a_index[lv->approx->points[i]] = i;
        }
    }
    return *memo_.emplace(key, std::move(lv)).first->second;
}

namespace {

struct RecResult {
    std::vector<std::pair<std::size_t, std::uint8_t>> kept;
    unsigned depth = 0;
    std::vector<std::pair<unsigned, std::size_t>> marks;
};

struct NonImage {};

std::vector<std::size_t> complement_points(std::size_t n, std::size_t a, std::size_t b) {
    std::vector<std::size_t> pts;
    pts.reserve(n - 2);
    for (std::size_t p = 0; p < n; ++p)
        if (p != a && p != b) pts.push_back(p);
    return pts;
}

}  // namespace

CompressedSample Scheme::compress(const LabeledSample& sample, CompressionTrace* trace) {
    if (sample.empty()) throw std::invalid_argument("sample must be nonempty");
    for (auto p : sample.points)
        if (p >= cls_.domain_size())
            throw std::invalid_argument("sample point outside domain");
    if (!consistent_exists(cls_, sample))
        throw std::invalid_argument("sample not realizable in the class");

    // Recursive worker; samples and classes at each level use that level's
    // own point indexing, and results are translated on the way out.
    auto rec = [&](auto&& self, const ConceptClass& c,
                   const LabeledSample& y) -> RecResult {
        const Level& lv = level(c);

        LevelTrace lt;
        lt.class_size = c.size();
        lt.domain_size = c.domain_size();
        lt.vc = lv.vc;

        if (lv.base || lv.degenerate) {
            lt.kind = LevelKind::base;
            lt.guard_fallback = !lv.base;
            if (trace) trace->levels.push_back(lt);
            auto kept = base_compress(c, y);
            RecResult rr;
            for (std::size_t i = 0; i < kept.size(); ++i)
                rr.kept.emplace_back(kept.points[i], kept.labels[i]);
            return rr;
        }

        lt.eps = lv.eps->str();
        lt.astar_size = lv.approx->points.size();

        std::vector<std::size_t> consistent;
        for (std::size_t i = 0; i < c.size(); ++i) {
            bool ok = true;
            for (std::size_t k = 0; k < y.size() && ok; ++k)
                ok = c.row(i).get(y.points[k]) == (y.labels[k] == 1);
            if (ok) consistent.push_back(i);
        }
        if (consistent.empty())
            throw std::invalid_argument("sample not realizable in the class");

        // Unfaithful witness: smallest sample point, then first consistent row.
        std::size_t wx = npos;
        for (auto x : y.points) {
            const std::size_t rx = lv.approx->round(x);
            if (rx == x) continue;
            for (auto i : consistent)
                if (c.row(i).get(x) != c.row(i).get(rx)) {
                    wx = x;
                    break;
                }
            if (wx != npos) break;
        }

        if (trace) {
            // Re-derive the witness set with the loops inverted; the branch
            // marker must match it (the two items of the level invariant).
            bool any = false;
            for (auto i : consistent) {
                for (auto x : y.points)
                    if (c.row(i).get(x) != c.row(i).get(lv.approx->round(x))) {
                        any = true;
                        break;
                    }
                if (any) break;
            }
            lt.mark_matches_witness = (wx != npos) == any;
            lt.blank_matches_faithful = (wx == npos) == !any;
        }

        RecResult rr;
        if (wx != npos) {
            // Case 1: pin (x, r(x)) and recurse on the disagreeing subclass.
            const std::size_t rx = lv.approx->round(wx);
            const std::uint8_t b = *y.label_of(wx);
            lt.kind = LevelKind::unfaithful;
            lt.x = wx;
            lt.rx = rx;

            std::vector<BitVec> filtered;
            for (const auto& r : c.rows())
                if (r.get(wx) == (b == 1) && r.get(rx) == (b == 0))
                    filtered.push_back(r);
            lt.filtered_size = filtered.size();
            lt.case1_shrink_ok =
                lv.eps->compare_ratio(BigInt(filtered.size()), BigInt(c.size())) <= 0;

            std::vector<std::pair<std::size_t, std::uint8_t>> child_items;
            for (std::size_t k = 0; k < y.size(); ++k)
                if (y.points[k] != wx && y.points[k] != rx)
                    child_items.emplace_back(y.points[k], y.labels[k]);

            if (child_items.empty()) {
                // Nothing left to compress below; the pinned pair carries it.
                lt.next_class_size = 0;
                if (trace) trace->levels.push_back(lt);
            } else {
                const auto child_pts = complement_points(c.domain_size(), wx, rx);
                std::vector<std::size_t> pos(c.domain_size(), npos);
                for (std::size_t i = 0; i < child_pts.size(); ++i) pos[child_pts[i]] = i;

                std::vector<BitVec> proj;
                proj.reserve(filtered.size());
                for (const auto& r : filtered) {
                    BitVec q(child_pts.size());
                    for (std::size_t i = 0; i < child_pts.size(); ++i)
                        if (r.get(child_pts[i])) q.set(i, true);
                    proj.push_back(std::move(q));
                }
                auto child_cls = ConceptClass::from_rows(child_pts.size(), std::move(proj));
                lt.next_class_size = child_cls.size();
                if (trace) trace->levels.push_back(lt);

                for (auto& [p, l] : child_items) p = pos[p];
                auto child_y = LabeledSample::make(std::move(child_items));
                RecResult sub = self(self, child_cls, child_y);
                for (auto& [p, l] : sub.kept) p = child_pts[p];
                for (auto& [t, v] : sub.marks) v = child_pts[v];
                rr = std::move(sub);
            }
            rr.depth += 1;
            rr.kept.emplace_back(wx, b);
            rr.marks.emplace_back(rr.depth, wx);
            return rr;
        }

        // Case 2: faithful; compress within the dual packing's points.
        lt.kind = LevelKind::faithful;
        lt.case2_shrink_ok = lv.approx->points.size() < c.domain_size();

        // s(x') = smallest sample point rounding to x'.
        std::vector<std::size_t> s_point(lv.approx->points.size(), npos);
        std::vector<std::pair<std::size_t, std::uint8_t>> child_items;
        for (std::size_t k = 0; k < y.size(); ++k) {
            const std::size_t slot = lv.a_index[lv.approx->round(y.points[k])];
            if (s_point[slot] == npos) {
                s_point[slot] = y.points[k];
                child_items.emplace_back(slot, y.labels[k]);
            }
        }
        if (trace) trace->levels.push_back(lt);

        auto child_y = LabeledSample::make(std::move(child_items));
        RecResult sub = self(self, *lv.faithful_child, child_y);
        for (auto& [p, l] : sub.kept) p = s_point[p];
        for (auto& [t, v] : sub.marks) v = s_point[v];
        rr = std::move(sub);
        rr.depth += 1;
        return rr;
    };

    RecResult rr = rec(rec, cls_, sample);
    CompressedSample cs;
    cs.kept = LabeledSample::make(std::move(rr.kept));
    cs.info.depth = rr.depth;
    std::sort(rr.marks.begin(), rr.marks.end());
    cs.info.marks = std::move(rr.marks);
    return cs;
}

void validate_side_info(const CompressedSample& cs) {
    const auto& s = cs.kept;
    if (s.points.size() != s.labels.size())
        throw std::invalid_argument("kept sample points/labels length mismatch");
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i > 0 && s.points[i] <= s.points[i - 1])
            throw std::invalid_argument("kept points must be strictly ascending");
        if (s.labels[i] > 1) throw std::invalid_argument("labels must be 0 or 1");
    }
    const auto& info = cs.info;
    if (info.depth == 0 && !info.marks.empty())
        throw std::invalid_argument("side information marks require depth > 0");
    std::vector<std::size_t> vals;
    for (std::size_t i = 0; i < info.marks.size(); ++i) {
        const auto& [t, v] = info.marks[i];
        if (t < 1 || t > info.depth)
            throw std::invalid_argument("side information level out of range");
        if (i > 0 && info.marks[i - 1].first >= t)
            throw std::invalid_argument("side information levels must be ascending");
        if (!s.label_of(v))
            throw std::invalid_argument("side information references a point not kept");
        vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw std::invalid_argument("side information must be injective");
}

BitVec Scheme::reconstruct(const CompressedSample& cs) {
    validate_side_info(cs);
    for (auto p : cs.kept.points)
        if (p >= cls_.domain_size())
            throw std::invalid_argument("kept point outside domain");

    auto rec = [&](auto&& self, const ConceptClass& c, const LabeledSample& kept,
                   const SideInfo& info) -> BitVec {
        if (info.depth == 0) {
            try {
                return base_reconstruct(c, kept);
            } catch (const std::invalid_argument&) {
                throw NonImage{};
            }
        }
        const Level& lv = level(c);
        if (lv.base || lv.degenerate) throw NonImage{};

        if (auto mark = info.at(info.depth)) {
            // Case 1.
            const std::size_t x = *mark;
            auto lx = kept.label_of(x);
            if (!lx) throw NonImage{};
            const std::uint8_t b = *lx;
            const std::size_t rx = lv.approx->round(x);
            if (rx == x) throw NonImage{};

            std::vector<BitVec> filtered;
            for (const auto& r : c.rows())
                if (r.get(x) == (b == 1) && r.get(rx) == (b == 0))
                    filtered.push_back(r);
            if (filtered.empty()) throw NonImage{};

            BitVec h(c.domain_size());
            if (c.domain_size() > 2) {
                const auto child_pts = complement_points(c.domain_size(), x, rx);
                std::vector<std::size_t> pos(c.domain_size(), npos);
                for (std::size_t i = 0; i < child_pts.size(); ++i) pos[child_pts[i]] = i;

                std::vector<BitVec> proj;
                for (const auto& r : filtered) {
                    BitVec q(child_pts.size());
                    for (std::size_t i = 0; i < child_pts.size(); ++i)
                        if (r.get(child_pts[i])) q.set(i, true);
                    proj.push_back(std::move(q));
                }
                auto child_cls = ConceptClass::from_rows(child_pts.size(), std::move(proj));

                std::vector<std::pair<std::size_t, std::uint8_t>> items;
                for (std::size_t i = 0; i < kept.size(); ++i)
                    if (kept.points[i] != x && kept.points[i] != rx)
                        items.emplace_back(pos[kept.points[i]], kept.labels[i]);
                SideInfo child_info;
                child_info.depth = info.depth - 1;
                for (const auto& [t, v] : info.marks) {
                    if (t >= info.depth) continue;
                    if (v == x || v == rx || pos[v] == npos) throw NonImage{};
                    child_info.marks.emplace_back(t, pos[v]);
                }
                BitVec sub = self(self, child_cls, LabeledSample::make(std::move(items)),
                                  child_info);
                for (std::size_t i = 0; i < child_pts.size(); ++i)
                    if (sub.get(i)) h.set(child_pts[i], true);
            } else {
                // Two-point domain: the pinned pair is the whole hypothesis,
                // which only a depth-1 compression can produce.
                for (std::size_t i = 0; i < kept.size(); ++i)
                    if (kept.points[i] != x && kept.points[i] != rx) throw NonImage{};
                if (info.depth != 1) throw NonImage{};
            }
            h.set(x, b == 1);
            h.set(rx, b == 0);
            return h;
        }

        // Case 2.
        std::vector<std::size_t> s_point(lv.approx->points.size(), npos);
        std::vector<std::pair<std::size_t, std::uint8_t>> items;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            const std::size_t slot = lv.a_index[lv.approx->round(kept.points[i])];
            if (s_point[slot] == npos) {
                s_point[slot] = kept.points[i];
                items.emplace_back(slot, kept.labels[i]);
            }
        }
        SideInfo child_info;
        child_info.depth = info.depth - 1;
        std::vector<std::size_t> seen;
        for (const auto& [t, v] : info.marks) {
            if (t >= info.depth) continue;
            const std::size_t slot = lv.a_index[lv.approx->round(v)];
            child_info.marks.emplace_back(t, slot);
            seen.push_back(slot);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw NonImage{};

        BitVec sub = self(self, *lv.faithful_child, LabeledSample::make(std::move(items)),
                          child_info);
        BitVec h(c.domain_size());
        for (std::size_t p = 0; p < c.domain_size(); ++p)
            if (sub.get(lv.a_index[lv.approx->round(p)])) h.set(p, true);
        return h;
    };

    try {
        return rec(rec, cls_, cs.kept, cs.info);
    } catch (const NonImage&) {
        return cls_.row(0);  // fixed fallback for inputs outside the image
    }
}

std::size_t Scheme::side_info_bits(const SideInfo& info) {
    // Length of the (f, T) part of the interchange encoding:
    // {"T":<T>,"f":[[t,point],...]}.
    std::string s = "{\"T\":" + std::to_string(info.depth) + ",\"f\":[";
    for (std::size_t i = 0; i < info.marks.size(); ++i) {
        if (i) s.push_back(',');
        s += "[" + std::to_string(info.marks[i].first) + "," +
             std::to_string(info.marks[i].second) + "]";
    }
    s += "]}";
    return 8 * s.size();
}

SizeReport size_report(const CompressedSample& cs, const CompressionTrace& trace) {
    SizeReport r;
    r.kept = cs.kept.size();
    r.depth = cs.info.depth;
    r.levels = trace.levels.size();
    for (const auto& lt : trace.levels) {
        switch (lt.kind) {
            case LevelKind::base: r.cases.push_back("base"); break;
            case LevelKind::unfaithful: r.cases.push_back("case1"); break;
            case LevelKind::faithful: r.cases.push_back("case2"); break;
        }
    }
    r.side_info_bits = Scheme::side_info_bits(cs.info);
    return r;
}

// ---------------------------------------------------------------------------
// verification

namespace {

std::string collision_key(const CompressedSample& cs) {
    std::string k = "T" + std::to_string(cs.info.depth) + "|Z";
    for (std::size_t i = 0; i < cs.kept.size(); ++i)
        k += std::to_string(cs.kept.points[i]) + ":" +
             std::to_string(int(cs.kept.labels[i])) + ",";
    k += "|f";
    for (const auto& [t, v] : cs.info.marks)
        k += std::to_string(t) + ":" + std::to_string(v) + ",";
    return k;
}

}  // namespace

VerifyReport verify_scheme(const ConceptClass& cls, const SchemeParams& params,
                           const VerifyOptions& opts) {
    VerifyReport rep;
    Scheme eng(cls, params);
    const std::size_t n = cls.domain_size();
    const std::size_t m = cls.size();

    const bool small_domain = n < 60;
    const std::uint64_t subsets =
        small_domain ? ((std::uint64_t{1} << n) - 1) : std::numeric_limits<std::uint64_t>::max();
    rep.exhaustive = small_domain && subsets <= opts.budget / m;

    struct Entry {
        std::size_t ci;
        std::vector<std::size_t> pts;
    };
    std::map<std::string, std::vector<Entry>> groups;

    const std::uint64_t top_threshold = params.base_threshold != 0
                                            ? params.base_threshold
                                            : default_base_threshold(cls.vc_dimension());
    const std::size_t base_kept_cap = static_cast<std::size_t>(
        std::floor(std::log2(static_cast<double>(std::min<std::uint64_t>(m, top_threshold)))));

    auto note_failure = [&](std::size_t ci, const std::vector<std::size_t>& pts,
                            const std::string& what) {
        ++rep.failures;
        if (rep.failure_samples.size() < 20) {
            std::string where = "concept " + std::to_string(ci) + " Y={";
            for (auto p : pts) where += std::to_string(p) + ",";
            rep.failure_samples.push_back(where + "}: " + what);
        }
    };

    auto check_pair = [&](std::size_t ci, const std::vector<std::size_t>& pts) {
        auto sample = LabeledSample::from_concept(cls.row(ci), pts);

        CompressionTrace tr;
        CompressedSample cs;
        try {
            cs = eng.compress(sample, opts.collect_traces ? &tr : nullptr);
        } catch (const std::exception& e) {
            note_failure(ci, pts, std::string("compress threw: ") + e.what());
            return;
        }

        for (std::size_t i = 0; i < cs.kept.size(); ++i) {
            auto want = sample.label_of(cs.kept.points[i]);
            if (!want) {
                note_failure(ci, pts, "kept a point outside the sample");
                return;
            }
            if (*want != cs.kept.labels[i]) {
                note_failure(ci, pts, "kept label differs from the sample");
                return;
            }
        }
        try {
            validate_side_info(cs);
        } catch (const std::exception& e) {
            note_failure(ci, pts, std::string("side info invalid: ") + e.what());
            return;
        }
        if (cs.kept.size() > cs.info.depth + base_kept_cap + 1) {
            note_failure(ci, pts, "kept size exceeds depth + base allowance");
            return;
        }

        BitVec h(n);
        try {
            h = eng.reconstruct(cs);
        } catch (const std::exception& e) {
            note_failure(ci, pts, std::string("reconstruct threw: ") + e.what());
            return;
        }
        for (auto p : pts)
            if (h.get(p) != cls.row(ci).get(p)) {
                note_failure(ci, pts, "hypothesis disagrees with the sample");
                return;
            }

        if (opts.collect_traces) {
            for (const auto& lt : tr.levels) {
                switch (lt.kind) {
                    case LevelKind::base: ++rep.base_levels; break;
                    case LevelKind::unfaithful: ++rep.case1_levels; break;
                    case LevelKind::faithful: ++rep.case2_levels; break;
                }
                if (!lt.mark_matches_witness || !lt.blank_matches_faithful) ++rep.level_invariant_violations;
                if (!lt.case1_shrink_ok || !lt.case2_shrink_ok) ++rep.shrink_violations;
            }
            auto sr = size_report(cs, tr);
            std::size_t recursive_levels = 0, base_count = 0;
            for (std::size_t i = 0; i < sr.cases.size(); ++i) {
                if (sr.cases[i] == "base") {
                    ++base_count;
                    if (i + 1 != sr.cases.size())
                        note_failure(ci, pts, "base level not last in the trace");
                } else {
                    ++recursive_levels;
                }
            }
            if (recursive_levels != cs.info.depth || base_count > 1 ||
                sr.kept != cs.kept.size())
                note_failure(ci, pts, "size report inconsistent with the compression");
        }

        rep.max_kept = std::max(rep.max_kept, cs.kept.size());
        rep.max_depth = std::max(rep.max_depth, cs.info.depth);
        groups[collision_key(cs)].push_back({ci, pts});
        ++rep.pairs;
    };

    auto points_of_mask = [&](std::uint64_t mask) {
        std::vector<std::size_t> pts;
        for (std::size_t p = 0; p < n; ++p)
            if ((mask >> p) & 1) pts.push_back(p);
        return pts;
    };

    if (rep.exhaustive) {
        for (std::size_t ci = 0; ci < m; ++ci)
            for (std::uint64_t mask = 1; mask <= subsets; ++mask)
                check_pair(ci, points_of_mask(mask));
    } else {
        SplitMix64 rng(opts.seed);
        for (std::uint64_t i = 0; i < opts.sample_pairs; ++i) {
            const std::size_t ci = static_cast<std::size_t>(rng.below(m));
            std::vector<std::size_t> pts;
            while (pts.empty()) {
                if (small_domain) {
                    pts = points_of_mask(1 + rng.below(subsets));
                } else {
                    for (std::size_t p = 0; p < n; ++p)
                        if (rng.next() & 1) pts.push_back(p);
                }
            }
            check_pair(ci, pts);
        }
    }

    // Same compression => the two samples agree on their common points.
    for (const auto& [key, entries] : groups) {
        if (entries.size() < 2) continue;
        ++rep.collision_groups;
        auto agree = [&](std::size_t a, std::size_t b) {
            const Entry& ea = entries[a];
            const Entry& eb = entries[b];
            std::size_t i = 0, j = 0;
            while (i < ea.pts.size() && j < eb.pts.size()) {
                if (ea.pts[i] < eb.pts[j]) {
                    ++i;
                } else if (ea.pts[i] > eb.pts[j]) {
                    ++j;
                } else {
                    if (cls.row(ea.ci).get(ea.pts[i]) != cls.row(eb.ci).get(ea.pts[i]))
                        return false;
                    ++i;
                    ++j;
                }
            }
            return true;
        };
        const std::size_t g = entries.size();
        if (g <= 2000) {
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = a + 1; b < g; ++b) {
                    ++rep.collision_checked;
                    if (!agree(a, b)) ++rep.collision_violations;
                }
        } else {
            for (std::size_t b = 1; b < g; ++b) {
                rep.collision_checked += 2;
                if (!agree(0, b)) ++rep.collision_violations;
                if (!agree(b - 1, b)) ++rep.collision_violations;
            }
        }
    }

    // Malformed side information must be rejected loudly.
    {
        std::vector<std::size_t> pts{0};
        auto sample = LabeledSample::from_concept(cls.row(0), pts);
        auto cs = eng.compress(sample);
        cs.info.depth = std::max(1u, cs.info.depth);
        std::size_t outside = npos;
        for (std::size_t p = 0; p < n; ++p)
            if (!cs.kept.label_of(p)) {
                outside = p;
                break;
            }
        if (outside != npos)
            cs.info.marks = {{1, outside}};
        else
            cs.info.marks = {{1, cs.kept.points[0]}, {1, cs.kept.points[0]}};
        try {
            (void)eng.reconstruct(cs);
            rep.malformed_rejected = false;
        } catch (const std::invalid_argument&) {
            rep.malformed_rejected = true;
        }
    }
    return rep;
}

}  // namespace vclab
