#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vclab/concept_class.hpp"
#include "vclab/metric.hpp"

namespace vclab {

// Side information carried next to the kept sample: the recursion depth T
// and a partial injection f from levels into kept points. f is defined at a
// level exactly when that level took the unfaithful branch, and then names
// the point the branch pinned.
struct SideInfo {
    unsigned depth = 0;                                    // T; 0 only at the base
    std::vector<std::pair<unsigned, std::size_t>> marks;   // (level, point), level-ascending

    bool defined_at(unsigned t) const;
    std::optional<std::size_t> at(unsigned t) const;

    friend bool operator==(const SideInfo&, const SideInfo&) = default;
};

struct CompressedSample {
    LabeledSample kept;  // (Z, z)
    SideInfo info;

    friend bool operator==(const CompressedSample&, const CompressedSample&) = default;
};

struct SchemeParams {
    // Classes of size <= base_threshold are compressed by the base scheme.
    // 0 selects the size-based default min((4e^2)^(d*2^d+1), 2^63-1) with
    // d = VC+2, recomputed at every recursion level; that default exceeds any
    // practical class size, so recursion only fires with an explicit override.
    std::uint64_t base_threshold = 0;
};

std::uint64_t default_base_threshold(int vc);

// ---- base scheme (majority halving) ----
//
// compress: keep the version set V (all of C); while the pointwise majority
// of V (ties -> 1) disagrees with the sample somewhere, record the smallest
// disagreeing sample point with its label and filter V by it. Each recorded
// point at least halves V, so at most floor(log2 |C|) points are kept.
// reconstruct: replay the same loop using only the kept points; the replay
// visits the same points in the same order, so the final majority vector
// agrees with the whole original sample.
LabeledSample base_compress(const ConceptClass& cls, const LabeledSample& sample,
                            std::vector<std::size_t>* pivots = nullptr);
BitVec base_reconstruct(const ConceptClass& cls, const LabeledSample& kept,
                        std::vector<std::size_t>* pivots = nullptr);

// ---- rank scheme (no side information) ----
//
// compress: keep the pivot columns (in domain order, by exact rational
// elimination) of the sampled submatrix; distinct rows of the submatrix must
// disagree on a spanning column set. reconstruct: the first concept of C
// consistent with the kept points.
LabeledSample rank_compress(const ConceptClass& cls, const LabeledSample& sample);
BitVec rank_reconstruct(const ConceptClass& cls, const LabeledSample& kept);

// Pivot columns (subset of cols, ascending) of the matrix formed by the
// given columns of cls, over the rationals.
std::vector<std::size_t> rank_pivot_columns(const ConceptClass& cls,
                                            std::span<const std::size_t> cols);
std::size_t matrix_rank(const ConceptClass& cls);

// ---- recursive scheme ----

enum class LevelKind { base, unfaithful, faithful };  // base / Case 1 / Case 2

struct LevelTrace {
    LevelKind kind = LevelKind::base;
    std::size_t class_size = 0;
    std::size_t domain_size = 0;
    int vc = 0;
    std::string eps;              // empty at base levels
    bool guard_fallback = false;  // base forced by a degenerate dual packing
    // Case 1:
    std::size_t x = npos, rx = npos;
    std::size_t filtered_size = 0;    // |{c : c(x)=b, c(rx)=1-b}| before projection
    std::size_t next_class_size = 0;  // recursed class after dedup (0 if skipped)
    // Case 2:
    std::size_t astar_size = 0;
    // Independently re-derived per-level checks:
    bool mark_matches_witness = true;    // f defined here iff an unfaithful witness exists
    bool blank_matches_faithful = true;  // f undefined here iff every consistent row rounds faithfully
    bool case1_shrink_ok = true;    // filtered_size <= eps * |C| (exact)
    bool case2_shrink_ok = true;    // |A*| < n
};

struct CompressionTrace {
    std::vector<LevelTrace> levels;  // outermost first
};

struct SizeReport {
    std::size_t kept = 0;
    unsigned depth = 0;
    std::size_t levels = 0;
    std::vector<std::string> cases;   // per level: "base" | "case1" | "case2"
    std::size_t side_info_bits = 0;   // bits of the serialized (f, T)
};

SizeReport size_report(const CompressedSample& cs, const CompressionTrace& trace);

// kappa/rho pair for one class. Both maps derive every per-level object
// (epsilon, dual packing, rounding) from the class content alone, so a
// compressed sample plus the class is all a reconstructor needs. Levels are
// memoized by class content; instances are cheap to reuse across samples but
// not thread-safe.
class Scheme {
public:
    explicit Scheme(ConceptClass cls, SchemeParams params = {});
    ~Scheme();
    Scheme(Scheme&&) noexcept;
    Scheme& operator=(Scheme&&) noexcept;

    const ConceptClass& cls() const { return cls_; }
    const SchemeParams& params() const { return params_; }

    // Requires a nonempty realizable sample. Throws std::invalid_argument
    // otherwise.
    CompressedSample compress(const LabeledSample& sample,
                              CompressionTrace* trace = nullptr);

    // Throws std::invalid_argument on malformed side information (f not
    // injective, marks outside [1,T], marked points not kept). Structurally
    // well-formed inputs outside the image of compress reconstruct to the
    // lexicographically first concept.
    BitVec reconstruct(const CompressedSample& cs);

    // Serialized-bit count of (f, T) in the interchange encoding.
    static std::size_t side_info_bits(const SideInfo& info);

private:
    struct Level;
    const Level& level(const ConceptClass& c);

    ConceptClass cls_;
    SchemeParams params_;
    std::unordered_map<std::string, std::unique_ptr<Level>> memo_;
};

void validate_side_info(const CompressedSample& cs);

// ---- whole-scheme verification ----

struct VerifyOptions {
    std::uint64_t budget = 1'000'000;  // exhaustive when |C|*(2^n-1) fits
    std::uint64_t seed = 0;            // sampling stream when not exhaustive
    std::uint64_t sample_pairs = 10'000;
    bool collect_traces = true;
};

struct VerifyReport {
    bool exhaustive = false;
    std::uint64_t pairs = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> failure_samples;  // capped detail
    std::uint64_t case1_levels = 0, case2_levels = 0, base_levels = 0;
    std::uint64_t level_invariant_violations = 0, shrink_violations = 0;
    std::size_t max_kept = 0;
    unsigned max_depth = 0;
    std::uint64_t collision_groups = 0, collision_checked = 0, collision_violations = 0;
    bool malformed_rejected = false;  // corrupted side info raised an error
    bool ok() const {
        return failures == 0 && level_invariant_violations == 0 && shrink_violations == 0 &&
               collision_violations == 0 && malformed_rejected;
    }
};

VerifyReport verify_scheme(const ConceptClass& cls, const SchemeParams& params,
                           const VerifyOptions& opts = {});

}  // namespace vclab
