#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vclab/concept_class.hpp"

namespace vclab {

struct TeachingReport {
    std::size_t concept_index = npos;  // canonical row index
    BitVec bits;
    std::vector<std::size_t> points;   // ascending
    std::vector<std::uint8_t> labels;  // = bits restricted to points
    std::string method;                // exact | halving | pair_reduction | three_six
};

// True iff `idx` is the only row of cls consistent with its own labels on
// `points`. Throws if idx is out of range.
bool is_teaching_set(const ConceptClass& cls, std::size_t idx,
                     std::span<const std::size_t> points);

// Minimum-cardinality teaching set for row idx, as a minimum hitting set of
// the disagreement sets against every other row; among minimum sets the
// lexicographically smallest is returned. nullopt if the minimum exceeds cap.
std::optional<std::vector<std::size_t>> min_teaching_set(
    const ConceptClass& cls, std::size_t idx, std::size_t cap = npos);

// Halving: repeatedly pin the smallest point where the surviving rows are
// non-constant to its minority label (ties -> 0). The survivor gets a
// teaching set of size <= ceil(log2 |C|).
TeachingReport halving_teaching_concept(const ConceptClass& cls);

struct PairStep {
    std::size_t x0 = npos, x1 = npos;  // points labeled 0 and 1
    std::size_t class_before = 0;
    std::size_t subset_size = 0;
};
struct PairReductionResult {
    TeachingReport report;
    std::vector<PairStep> steps;
    std::size_t halving_tail = 0;  // points contributed by the final halving
};

// Iterated pair reduction: while the class is larger than the fallback
// threshold, pick the ordered point pair (x, x') minimizing the nonempty
// proper subclass {c : c(x)=0, c(x')=1} (ties: smallest pair), pin the pair
// to labels (0,1) and keep only that subclass; finish by halving.
// fallback_threshold 0 means the size-based default for the class's
// VC-dimension (astronomical, so the loop is skipped at practical sizes).
PairReductionResult pair_reduction_teaching_concept(
    const ConceptClass& cls, std::uint64_t fallback_threshold = 0);

// (4e^2)^(d*2^(d+2)) saturated to 2^63-1.
std::uint64_t pair_reduction_default_threshold(int vc);

struct RTLayer {
    std::size_t set_size = 0;  // the layer's minimum teaching-set size
    // (original row index, its minimum teaching set within the remaining class)
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> members;
};
struct RTDecomposition {
    std::size_t dimension = 0;
    std::vector<RTLayer> layers;
};

// Peels layers of minimum-teaching-set concepts; the RT-dimension is the
// largest layer minimum encountered.
RTDecomposition rt_dimension(const ConceptClass& cls);

// Every 3-point projection realizes at most 6 patterns (vacuous for n < 3).
bool is_36_class(const ConceptClass& cls);

// For a (3,6) class, produces a concept with a teaching set of size <= 3:
// directly for VC-dimension <= 1, otherwise via the minimum shattered-pair
// quadrant, which has VC-dimension <= 1. Throws if cls is not (3,6).
TeachingReport three_six_teaching(const ConceptClass& cls);

}  // namespace vclab
