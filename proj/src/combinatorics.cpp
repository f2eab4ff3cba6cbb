#include "schumacher/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace schumacher {

namespace {

using Table = std::array<std::array<std::uint64_t, kMaxBlockLength + 1>, kMaxBlockLength + 1>;

Table make_pascal()
{
    Table t{};
    for (int n = 0; n <= kMaxBlockLength; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            std::uint64_t v = 0;
            if (__builtin_add_overflow(t[n - 1][k - 1], t[n - 1][k], &v))
                throw std::overflow_error("binomial table overflow");
            t[n][k] = v;
        }
    }
    return t;
}

const Table& pascal()
{
    static const Table t = make_pascal();
    return t;
}

void check_length(int n)
{
    if (n < 1 || n > kMaxBlockLength)
        throw std::out_of_range("block length must lie in [1, 64]");
}

std::uint64_t low_mask(int bits)
{
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

} // namespace

BitString::BitString(int n_, std::uint64_t value_) : n(n_), value(value_)
{
    check_length(n);
    if ((value & ~low_mask(n)) != 0)
        throw std::out_of_range("value does not fit in n bits");
}

BitString BitString::parse(std::string_view s)
{
    if (s.empty() || s.size() > kMaxBlockLength)
        throw std::invalid_argument("bit string length must lie in [1, 64]");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string may contain only 0 and 1");
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return BitString(static_cast<int>(s.size()), v);
}

int BitString::weight() const { return std::popcount(value); }

std::string BitString::str() const
{
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (bit(i))
            s[static_cast<std::size_t>(n - 1 - i)] = '1';
    return s;
}

std::uint64_t binom(int n, int k)
{
    if (n < 0 || n > kMaxBlockLength)
        throw std::out_of_range("binom: n must lie in [0, 64]");
    if (k < 0 || k > n)
        return 0;
    return pascal()[n][k];
}

std::uint64_t block_lo(int n, int m)
{
    if (m < 0 || m > n)
        throw std::out_of_range("block_lo: need 0 <= m <= n");
    std::uint64_t lo = 0;
    for (int i = 0; i < m; ++i)
        if (__builtin_add_overflow(lo, binom(n, i), &lo))
            throw std::overflow_error("block_lo overflow");
    return lo;
}

BlockBounds block_bounds(int n, int m)
{
    BlockBounds b;
    b.lo = block_lo(n, m);
    if (__builtin_add_overflow(b.lo, binom(n, m), &b.hi))
        throw std::overflow_error("block_bounds: hi exceeds 64 bits");
    return b;
}

std::uint64_t index_I(const BitString& x)
{
    // Sum over set bits j of C(j, number of ones at positions <= j).
    std::uint64_t total = 0;
    int ones = 0;
    for (int j = 0; j < x.n; ++j) {
        if (!x.bit(j))
            continue;
        ++ones;
        total += binom(j, ones);
    }
    return total;
}

std::vector<std::uint64_t> index_chain(const BitString& x)
{
    std::vector<std::uint64_t> terms;
    int len = x.n;
    int m = x.weight();
    std::uint64_t rest = x.value;
    for (;;) {
        if (rest == low_mask(m)) {
            terms.push_back(0);
            break;
        }
        int top = len - 1;
        while (((rest >> top) & 1u) == 0)
            --top;
        int p = len - 1 - top;
        terms.push_back(binom(len - p - 1, m));
        rest &= ~(std::uint64_t{1} << top);
        len = top;
        --m;
    }
    return terms;
}

std::uint64_t rank(const BitString& x)
{
    return block_lo(x.n, x.weight()) + index_I(x);
}

BitString unrank(int n, std::uint64_t y)
{
    check_length(n);
    if ((y & ~low_mask(n)) != 0)
        throw std::out_of_range("unrank: y must lie in [0, 2^n)");
    int m = 0;
    std::uint64_t lo = 0;
    while (y - lo >= binom(n, m)) {
        lo += binom(n, m);
        ++m;
    }
    std::uint64_t idx = y - lo;
    std::uint64_t v = 0;
    int w = m;
    for (int j = n - 1; j >= 0 && w > 0; --j) {
        // Every remaining string below the smallest one with bit j set fits in C(j, w).
        std::uint64_t c = binom(j, w);
        if (idx >= c) {
            v |= std::uint64_t{1} << j;
            idx -= c;
            --w;
        }
    }
    return BitString(n, v);
}

std::uint64_t oracle_rank(const BitString& x)
{
    if (x.n > 16)
        throw std::out_of_range("oracle_rank: n must be <= 16");
    const std::uint64_t size = std::uint64_t{1} << x.n;
    const int wx = x.weight();
    std::uint64_t before = 0;
    for (std::uint64_t v = 0; v < size; ++v) {
        int wv = std::popcount(v);
        if (wv < wx || (wv == wx && v < x.value))
            ++before;
    }
    return before;
}

std::vector<std::uint64_t> oracle_rank_table(int n)
{
    if (n < 1 || n > 16)
        throw std::out_of_range("oracle_rank_table: n must lie in [1, 16]");
    std::vector<std::uint64_t> order(std::size_t{1} << n);
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    std::stable_sort(order.begin(), order.end(), [](std::uint64_t a, std::uint64_t b) {
        int wa = std::popcount(a), wb = std::popcount(b);
        return wa != wb ? wa < wb : a < b;
    });
    std::vector<std::uint64_t> table(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        table[order[pos]] = pos;
    return table;
}

} // namespace schumacher
