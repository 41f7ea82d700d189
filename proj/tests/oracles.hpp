#pragma once

// Brute-force reference implementations used only by tests. Each mirrors a
// library operation through an independent path so frozen expected values
// never come from the code under test.

#include <optional>
#include <string>
#include <vector>

#include "vclab/compression.hpp"
#include "vclab/concept_class.hpp"
#include "vclab/metric.hpp"
#include "vclab/teaching.hpp"

namespace oracle {

using vclab::BigInt;
using vclab::BitVec;
using vclab::ConceptClass;
using vclab::Rat;

// Shattering by direct pattern collection (string set, no bit tricks).
inline bool shatters_naive(const ConceptClass& cls, const std::vector<std::size_t>& pts) {
    std::vector<std::string> pats;
    for (const auto& r : cls.rows()) {
        std::string p;
        for (auto x : pts) p.push_back(r.get(x) ? '1' : '0');
        if (std::find(pats.begin(), pats.end(), p) == pats.end()) pats.push_back(p);
    }
    return pats.size() == (std::size_t{1} << pts.size());
}

inline int vc_naive(const ConceptClass& cls) {
    int best = 0;
    for (std::size_t k = 1; k <= cls.domain_size(); ++k) {
        bool any = vclab::for_each_subset(cls.domain_size(), k,
                                          [&](std::span<const std::size_t> s) {
            return shatters_naive(cls, std::vector<std::size_t>(s.begin(), s.end()));
        });
        if (!any) break;
        best = static_cast<int>(k);
    }
    return best;
}

// First teaching set in (size, lexicographic) order by plain enumeration.
inline std::vector<std::size_t> min_teaching_naive(const ConceptClass& cls,
                                                   std::size_t idx) {
    for (std::size_t k = 0; k <= cls.domain_size(); ++k) {
        std::vector<std::size_t> found;
        bool hit = vclab::for_each_subset(cls.domain_size(), k,
                                          [&](std::span<const std::size_t> s) {
            if (vclab::is_teaching_set(cls, idx, s)) {
                found.assign(s.begin(), s.end());
                return true;
            }
            return false;
        });
        if (hit) return found;
    }
    return {};
}

// Packing validity: strict pairwise separation, maximality, rounding contract.
inline std::optional<std::string> check_packing(const ConceptClass& cls,
                                                const vclab::Distribution& mu,
                                                const vclab::EpsilonSpec& eps,
                                                const vclab::Packing& p) {
    if (p.members.empty()) return "empty packing";
    for (std::size_t a = 0; a < p.members.size(); ++a)
        for (std::size_t b = a + 1; b < p.members.size(); ++b)
            if (eps.compare(vclab::dist(cls.row(p.members[a]), cls.row(p.members[b]), mu)) >= 0)
                return "pair within eps";
    for (std::size_t i = 0; i < cls.size(); ++i) {
        bool covered = false;
        for (auto m : p.members)
            if (eps.compare(vclab::dist(cls.row(i), cls.row(m), mu)) >= 0) covered = true;
        if (!covered) return "concept not covered";
        const std::size_t r = p.round_to[i];
        if (eps.compare(vclab::dist(cls.row(i), cls.row(r), mu)) < 0)
            return "rounding farther than eps";
        if (p.round_to[r] != r) return "rounding not idempotent";
    }
    return std::nullopt;
}

inline Rat rat_pow(Rat base, std::uint64_t e) {
    Rat out = 1;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt v = 1;
    for (std::uint64_t i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

// Exact-rational versions of the two generalization bounds.
inline Rat ds_bound_exact(std::uint64_t m, unsigned d, const Rat& eps) {
    return 2 * Rat(rat_pow(Rat(2 * m + 1), d)) * rat_pow(1 - eps / 4, m);
}

inline Rat lw_bound_exact(std::uint64_t m, unsigned k, const BigInt& q, const Rat& eps) {
    Rat sum = 0;
    for (unsigned j = 0; j <= k; ++j)
        sum += Rat(binomial(m, j)) * rat_pow(1 - eps, m - j);
    return Rat(q) * sum;
}

}  // namespace oracle
