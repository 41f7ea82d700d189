#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vclab {

// Fixed-length packed bit vector. Bit i holds the label of domain point i.
// Lexicographic order treats point 0 as the most significant position, so
// sorting rows matches sorting their "0101..." string forms.
class BitVec {
public:
    BitVec() = default;

    explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitVec from_string(std::string_view s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                v.set(i, true);
            } else if (s[i] != '0') {
                throw std::invalid_argument("bit string may contain only '0' and '1'");
            }
        }
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool v) {
        if (v) {
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        } else {
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        }
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    // Hamming distance.
    std::size_t diff_count(const BitVec& o) const {
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            c += static_cast<std::size_t>(std::popcount(words_[w] ^ o.words_[w]));
        return c;
    }

    // Calls fn(point) for every point where the two vectors disagree.
    template <class F>
    void for_each_diff(const BitVec& o, F fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w] ^ o.words_[w];
            while (x) {
                unsigned b = static_cast<unsigned>(std::countr_zero(x));
                fn(w * 64 + b);
                x &= x - 1;
            }
        }
    }

    template <class F>
    void for_each_set(F fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                unsigned b = static_cast<unsigned>(std::countr_zero(x));
                fn(w * 64 + b);
                x &= x - 1;
            }
        }
    }

    bool intersects(const BitVec& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }

    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    // <0, 0, >0 as the string form of a compares to that of b.
    static int lex_compare(const BitVec& a, const BitVec& b) {
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            std::uint64_t x = a.words_[w] ^ b.words_[w];
            if (x) {
                std::size_t p = w * 64 + static_cast<unsigned>(std::countr_zero(x));
                return a.get(p) ? 1 : -1;  // '0' < '1'
            }
        }
        return 0;
    }

    friend bool operator<(const BitVec& a, const BitVec& b) {
        return lex_compare(a, b) < 0;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace vclab
