#include "vclab/metric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vclab {

namespace mp = boost::multiprecision;

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("distribution needs at least one point");
    Distribution d;
    d.weights.assign(n, 1);
    d.total = n;
    return d;
}

Distribution Distribution::from_weights(std::vector<std::uint64_t> w) {
    if (w.empty()) throw std::invalid_argument("distribution needs at least one point");
    Distribution d;
    d.total = 0;
    for (auto x : w) {
        if (x > std::numeric_limits<std::uint64_t>::max() - d.total)
            throw std::invalid_argument("distribution weights overflow");
        d.total += x;
    }
    if (d.total == 0) throw std::invalid_argument("distribution total weight must be positive");
    d.weights = std::move(w);
    return d;
}

Rat dist(const BitVec& a, const BitVec& b, const Distribution& mu) {
    if (a.size() != b.size() || a.size() != mu.weights.size())
        throw std::invalid_argument("dist: length mismatch");
    std::uint64_t w = 0;
    a.for_each_diff(b, [&](std::size_t p) { w += mu.weights[p]; });
    return Rat(BigInt(w), BigInt(mu.total));
}

EpsilonSpec EpsilonSpec::from_ratio(BigInt num, BigInt den) {
    if (den <= 0 || num <= 0 || num > den)
        throw std::invalid_argument("epsilon must lie in (0,1]");
    EpsilonSpec e;
    BigInt g = mp::gcd(num, den);
    e.num_ = num / g;
    e.den_ = den / g;
    return e;
}

EpsilonSpec EpsilonSpec::inverse_power(std::uint64_t base, std::uint64_t s) {
    if (base < 2 || s < 1) throw std::invalid_argument("inverse_power needs base >= 2, s >= 1");
    EpsilonSpec e;
    e.symbolic_ = true;
    e.base_ = base;
    e.s_ = s;
    return e;
}

int EpsilonSpec::compare_ratio(const BigInt& p, const BigInt& q) const {
    if (q <= 0 || p < 0) throw std::invalid_argument("compare_ratio needs p >= 0, q > 0");
    if (!symbolic_) {
        BigInt lhs = p * den_, rhs = num_ * q;
        return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
    }
    // p/q vs base^(-1/s)  <=>  p^s * base vs q^s
    if (p == 0) return -1;
    if (p >= q) return 1;  // eps < 1
    unsigned s = static_cast<unsigned>(s_);
    BigInt lhs = mp::pow(p, s) * base_;
    BigInt rhs = mp::pow(q, s);
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

int EpsilonSpec::compare(const Rat& r) const {
    return -compare_ratio(mp::numerator(r), mp::denominator(r));
}

double EpsilonSpec::approx() const {
    if (!symbolic_) return Rat(num_, den_).convert_to<double>();
    return std::exp(-std::log(static_cast<double>(base_)) / static_cast<double>(s_));
}

std::string EpsilonSpec::str() const {
    if (!symbolic_) return num_.str() + "/" + den_.str();
    return std::to_string(base_) + "^(-1/" + std::to_string(s_) + ")";
}

EpsilonSpec recursion_epsilon(std::uint64_t size, unsigned d) {
    if (size < 2) throw std::invalid_argument("recursion_epsilon needs |C| >= 2");
    if (d < 2 || d > 15)
        throw std::invalid_argument("recursion_epsilon supports 2 <= d <= 15");
    std::uint64_t s = static_cast<std::uint64_t>(d) * (std::uint64_t{1} << d) + 1;
    return EpsilonSpec::inverse_power(size, s);
}

bool is_separated(const ConceptClass& cls, std::span<const std::size_t> subset,
                  const Distribution& mu, const EpsilonSpec& eps) {
    if (subset.empty()) throw std::invalid_argument("is_separated needs a nonempty set");
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            Rat d = dist(cls.row(subset[i]), cls.row(subset[j]), mu);
            if (eps.compare(d) >= 0) return false;  // d <= eps
        }
    return true;
}

Packing greedy_packing(const ConceptClass& cls, const Distribution& mu,
                       const EpsilonSpec& eps) {
    Packing p;
    p.round_to.assign(cls.size(), npos);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        std::size_t near = npos;
        for (auto m : p.members) {
            Rat d = dist(cls.row(i), cls.row(m), mu);
            if (eps.compare(d) >= 0) {  // d <= eps: not separated from m
                near = m;
                break;
            }
        }
        if (near == npos) {
            p.members.push_back(i);
            p.round_to[i] = i;
        } else {
            p.round_to[i] = near;
        }
    }
    return p;
}

DualApprox dual_approx_set(const ConceptClass& cls, const EpsilonSpec& eps) {
    DualApprox a{cls.dual(), {}, {}};
    a.packing = greedy_packing(a.dual.cls, Distribution::uniform(cls.size()), eps);
    a.points.reserve(a.packing.members.size());
    for (auto m : a.packing.members) a.points.push_back(a.dual.rep_point[m]);
    std::sort(a.points.begin(), a.points.end());
    return a;
}

HausslerBound haussler_bound(unsigned d, const Rat& eps) {
    if (eps <= 0 || eps > 1) throw std::invalid_argument("haussler_bound needs eps in (0,1]");
    const long double e = 2.718281828459045235L;
    long double ev = Rat(eps).convert_to<long double>();
    long double tight = e * (d + 1) * std::pow(2 * e / ev, static_cast<long double>(d));
    long double weak = std::pow(4 * e * e / ev, static_cast<long double>(d));
    return {static_cast<double>(tight), static_cast<double>(weak)};
}

bool within_haussler(std::size_t packing_size, unsigned d, const Rat& eps) {
    double bound = haussler_bound(d, eps).tight;
    return static_cast<double>(packing_size) <= bound * (1.0 + 1e-9);
}

}  // namespace vclab
