#pragma once

#include <cstdint>

#include "vclab/concept_class.hpp"

namespace vclab {
namespace gen {

// All singletons plus the empty set; n+1 concepts, VC-dimension 1 for n >= 2.
ConceptClass singletons_with_empty(std::size_t n);

// Indicators of contiguous runs on 0..n-1 plus the empty set;
// n(n+1)/2 + 1 concepts, VC-dimension 2 for n >= 2.
ConceptClass intervals(std::size_t n);

// All 2^n concepts; requires n <= 20.
ConceptClass full_cube(std::size_t n);

// All vectors of Hamming weight <= d; meets the Sauer-Shelah bound with
// equality (a maximum class of dimension d).
ConceptClass hamming_ball(std::size_t n, std::size_t d);

// Seeded random families. Deterministic in (parameters, seed); candidates
// are drawn from SplitMix64(seed) and rejected individually. Throws if the
// rejection budget (1e6 draws) is exhausted.
ConceptClass random_class(std::size_t n, std::size_t size, std::uint64_t seed);
ConceptClass random_vc_bounded(std::size_t n, int d, std::size_t size, std::uint64_t seed);
ConceptClass random_36(std::size_t n, std::size_t size, std::uint64_t seed);

}  // namespace gen
}  // namespace vclab
