#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace schumacher {

// x_0 is the least significant bit; str() prints most significant first.
struct BitString {
    int n = 0;
    std::uint64_t value = 0;

    BitString() = default;
    BitString(int n, std::uint64_t value);
    static BitString parse(std::string_view msb_first);

    bool bit(int i) const { return ((value >> i) & 1u) != 0; }
    int weight() const;
    std::string str() const;

    friend bool operator==(const BitString&, const BitString&) = default;
};

struct BlockBounds {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

constexpr int kMaxBlockLength = 64;

// C(n,k), zero outside 0 <= k <= n. Throws std::out_of_range for n outside [0,64].
std::uint64_t binom(int n, int k);

// Throws std::overflow_error when hi does not fit (only n = m = 64).
BlockBounds block_bounds(int n, int m);

// Sum of C(n,i) for i < m; always representable for n <= 64.
std::uint64_t block_lo(int n, int m);

std::uint64_t index_I(const BitString& x);

// Terms of the leading-zero recursion: each strips p zeros and the first 1,
// contributing C(len-p-1, weight); a final 0 marks the minimal remainder.
std::vector<std::uint64_t> index_chain(const BitString& x);

std::uint64_t rank(const BitString& x);
BitString unrank(int n, std::uint64_t y);

// Brute force position in the (weight, value) order; n <= 16.
std::uint64_t oracle_rank(const BitString& x);
std::vector<std::uint64_t> oracle_rank_table(int n);

} // namespace schumacher
