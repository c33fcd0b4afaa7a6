#pragma once
// Packed bit sequence with O(1) index access, sized for blocklengths from a
// couple of bits up to 2^24 and beyond. Unused bits of the last word are kept
// zero so word-level reductions need no masking.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syncap/kernels.hpp"

namespace syncap {

class BitWord {
public:
    BitWord() = default;
    explicit BitWord(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) >> 6, 0) {}

    static BitWord from_string(std::string_view s) {
        BitWord b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') b.set(i, true);
            else if (s[i] != '0') throw std::invalid_argument("bit string may contain only 0/1");
        }
        return b;
    }

    // low nbits of packed, bit i of the sequence = bit i of packed
    static BitWord from_packed(std::uint64_t packed, std::size_t nbits) {
        if (nbits > 64) throw std::invalid_argument("from_packed limited to 64 bits");
        BitWord b(nbits);
        if (nbits) b.w_[0] = nbits == 64 ? packed : (packed & ((1ull << nbits) - 1));
        return b;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        const std::uint64_t m = 1ull << (i & 63);
        if (v) w_[i >> 6] |= m;
        else w_[i >> 6] &= ~m;
    }

    void push_back(bool v) {
        if ((nbits_ & 63) == 0) w_.push_back(0);
        if (v) w_[nbits_ >> 6] |= 1ull << (nbits_ & 63);
        ++nbits_;
    }

    void reserve(std::size_t nbits) { w_.reserve((nbits + 63) >> 6); }

    std::uint64_t popcount() const { return kern::active().popcount(w_.data(), w_.size()); }

    std::uint64_t hamming_distance(const BitWord& o) const {
        if (o.nbits_ != nbits_) throw std::invalid_argument("hamming_distance: length mismatch");
        return kern::active().popcount_xor(w_.data(), o.w_.data(), w_.size());
    }

    BitWord complemented() const {
        BitWord b(nbits_);
        for (std::size_t k = 0; k < w_.size(); ++k) b.w_[k] = ~w_[k];
        b.mask_tail();
        return b;
    }

    std::string to_string() const {
        std::string s(nbits_, '0');
        for (std::size_t i = 0; i < nbits_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    // dense (length, bits) key for associative use; sequences above 56 bits
    // do not fit and are rejected
    std::uint64_t packed() const {
        if (nbits_ > 56) throw std::invalid_argument("packed() limited to 56 bits");
        return (std::uint64_t(nbits_) << 56) | (nbits_ ? w_[0] : 0);
    }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

    // reestablish the zero-tail invariant after direct word writes
    void mask_tail() {
        const std::size_t r = nbits_ & 63;
        if (r && !w_.empty()) w_.back() &= (1ull << r) - 1;
    }

    friend bool operator==(const BitWord&, const BitWord&) = default;
    friend bool operator<(const BitWord& a, const BitWord& b) {
        if (a.nbits_ != b.nbits_) return a.nbits_ < b.nbits_;
        for (std::size_t k = a.w_.size(); k-- > 0;)
            if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k];
        return false;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

// Maximal blocks of equal consecutive bits, in order. Run j (0-based) has
// symbol first_symbol XOR (j odd).
struct RunDecomposition {
    bool first_symbol = false;
    std::vector<std::uint32_t> lengths;

    std::size_t count() const { return lengths.size(); }
    bool symbol(std::size_t j) const { return first_symbol ^ bool(j & 1); }
    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto l : lengths) t += l;
        return t;
    }
};

RunDecomposition decompose_runs(const BitWord& x);

} // namespace syncap
