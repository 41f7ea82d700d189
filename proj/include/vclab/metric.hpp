#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vclab/concept_class.hpp"

namespace vclab {

using Rat = boost::multiprecision::cpp_rational;

// Integer point weights; probabilities are weight/total, kept exact.
struct Distribution {
    std::vector<std::uint64_t> weights;
    std::uint64_t total = 0;

    static Distribution uniform(std::size_t n);
    static Distribution from_weights(std::vector<std::uint64_t> w);
};

// dist_mu(a, b) = mu({x : a(x) != b(x)}), as an exact rational.
Rat dist(const BitVec& a, const BitVec& b, const Distribution& mu);

// A separation threshold: either an exact rational in (0,1], or the
// symbolic value base^(-1/s). Comparisons against rationals are decided by
// integer arithmetic, so the compression and reconstruction sides can never
// disagree on a distance test.
class EpsilonSpec {
public:
    static EpsilonSpec from_ratio(BigInt num, BigInt den);
    // base^(-1/s), base >= 2, s >= 1.
    static EpsilonSpec inverse_power(std::uint64_t base, std::uint64_t s);

    bool is_symbolic() const { return symbolic_; }
    std::uint64_t base() const { return base_; }
    std::uint64_t exponent() const { return s_; }

    // Sign of p/q - eps; p >= 0, q > 0.
    int compare_ratio(const BigInt& p, const BigInt& q) const;
    int compare(const Rat& r) const;
    bool less_than(const Rat& r) const { return compare(r) < 0; }   // eps < r
    bool at_least(const Rat& r) const { return compare(r) >= 0; }   // eps >= r

    double approx() const;
    std::string str() const;

private:
    bool symbolic_ = false;
    BigInt num_ = 0, den_ = 1;       // rational form
    std::uint64_t base_ = 0, s_ = 0; // symbolic form
};

// The separation parameter that balances the recursive compression size:
// eps = size^(-1/(d*2^d+1)) with d the level's VC-dimension plus two.
// Requires size >= 2 and 2 <= d <= 15.
EpsilonSpec recursion_epsilon(std::uint64_t size, unsigned d);

// True iff all pairs in the rows indexed by `subset` are strictly more than
// eps apart under mu.
bool is_separated(const ConceptClass& cls, std::span<const std::size_t> subset,
                  const Distribution& mu, const EpsilonSpec& eps);

struct Packing {
    std::vector<std::size_t> members;   // row indices in insertion (= canonical) order
    std::vector<std::size_t> round_to;  // row -> member row within distance <= eps
};

// Scans rows in canonical order, keeping each row strictly more than eps
// away from all kept members. round_to maps a member to itself and any
// other row to the earliest-inserted member within distance <= eps.
Packing greedy_packing(const ConceptClass& cls, const Distribution& mu,
                       const EpsilonSpec& eps);

// Greedy maximal packing of the dual class under the uniform distribution,
// with the domain-point view: `points` lists, in ascending order, the first
// domain point realizing each selected column, and round(x) maps any domain
// point to the representative point of the member its column rounds to.
struct DualApprox {
    DualClass dual;
    Packing packing;                 // over dual.cls rows
    std::vector<std::size_t> points; // A* as ascending domain points

    std::size_t round(std::size_t x) const {
        return dual.rep_point[packing.round_to[dual.col_of_point[x]]];
    }
};

DualApprox dual_approx_set(const ConceptClass& cls, const EpsilonSpec& eps);

struct HausslerBound {
    double tight;  // e(d+1)(2e/eps)^d
    double weak;   // (4e^2/eps)^d
};
// Reporting values for the packing-size bound; eps in (0,1].
HausslerBound haussler_bound(unsigned d, const Rat& eps);

// size <= e(d+1)(2e/eps)^d, with the bound nudged upward so float rounding
// can only make the check more permissive.
bool within_haussler(std::size_t packing_size, unsigned d, const Rat& eps);

}  // namespace vclab
