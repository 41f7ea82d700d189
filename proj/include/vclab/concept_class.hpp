#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vclab/bitvec.hpp"

namespace vclab {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct DualClass;

// A deduplicated set of 0/1 concepts over the domain {0, ..., n-1}.
// Rows are kept sorted lexicographically, so row indices, tie-breaks and
// every derived object are deterministic.
class ConceptClass {
public:
    // Deduplicates and sorts. Throws if rows is empty, n == 0, or some row
    // has the wrong length. removed_duplicates (optional) reports whether
    // any input rows collapsed.
    static ConceptClass from_rows(std::size_t n, std::vector<BitVec> rows,
                                  bool* removed_duplicates = nullptr);

    // Test/CLI convenience: rows as "0101" strings, all the same length.
    static ConceptClass from_strings(const std::vector<std::string>& rows);

    std::size_t domain_size() const { return n_; }
    std::size_t size() const { return rows_.size(); }
    const BitVec& row(std::size_t i) const { return rows_[i]; }
    const std::vector<BitVec>& rows() const { return rows_; }

    // Index of an exact row, or npos.
    std::size_t index_of(const BitVec& c) const;

    // C restricted to the given points (strictly ascending, nonempty,
    // within the domain); rows are re-deduplicated.
    ConceptClass restrict_to(std::span<const std::size_t> points) const;

    // True iff the projection to `points` realizes all 2^|points| patterns.
    // The empty set is shattered by convention.
    bool shatters(std::span<const std::size_t> points) const;

    int vc_dimension() const;

    // The dual class: one concept per distinct column, over a domain with one
    // point per concept of C (in canonical order).
    DualClass dual() const;

    friend bool operator==(const ConceptClass& a, const ConceptClass& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_;
    }

    // Canonical content key, usable for memoization.
    std::string content_key() const;

private:
    ConceptClass(std::size_t n, std::vector<BitVec> rows)
        : n_(n), rows_(std::move(rows)) {}

    std::size_t n_ = 0;
    std::vector<BitVec> rows_;
};

struct DualClass {
    ConceptClass cls;                       // C*: the distinct columns, canonical
    std::vector<std::size_t> col_of_point;  // x -> row of cls holding x's column
    std::vector<std::size_t> rep_point;     // cls row -> smallest x with that column
};

// A set of labeled domain points; points strictly ascending.
struct LabeledSample {
    std::vector<std::size_t> points;
    std::vector<std::uint8_t> labels;

    static LabeledSample from_concept(const BitVec& c, std::span<const std::size_t> pts);
    // Sorts by point; throws on duplicate points or labels outside {0,1}.
    static LabeledSample make(std::vector<std::pair<std::size_t, std::uint8_t>> items);

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    std::optional<std::uint8_t> label_of(std::size_t point) const;

    friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

struct LoadResult {
    ConceptClass cls;
    bool duplicates_removed = false;
    std::size_t raw_rows = 0;
};

// Parses the class text format (one 0/1 row per line, '#' comments) or the
// JSON form {"n": int, "concepts": ["0101", ...]} (detected by a leading '{').
// Throws std::invalid_argument on format violations.
LoadResult load_class(std::string_view text);

// Renders a class in the text format (sorted rows, trailing newline).
std::string to_class_text(const ConceptClass& cls);

// Exact sum_{k=0}^{d} C(n, k). Requires 0 <= d <= n.
BigInt sauer_bound(unsigned n, unsigned d);

// Enumerates k-subsets of {0..n-1} in lexicographic order; fn gets a
// span over the current subset and returns true to stop early.
// Returns true if some call returned true.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F fn) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (fn(std::span<const std::size_t>(idx))) return true;
        // advance
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return false;
        }
        if (k == 0) return false;
    }
}

}  // namespace vclab
