#include "rsclust/partitions.hpp"

#include <algorithm>
#include <string>

namespace rsclust {

std::uint64_t stirling2_capped(std::size_t m, std::size_t k, std::uint64_t cap) {
    if (k > m || k == 0) return 0;
    const std::uint64_t sat = cap == UINT64_MAX ? cap : cap + 1;
    // one row of the S(i, j) = j*S(i-1, j) + S(i-1, j-1) table at a time
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;  // S(0, 0)
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) {
            const unsigned __int128 v =
                static_cast<unsigned __int128>(j) * row[j] + row[j - 1];
            row[j] = v > sat ? sat : static_cast<std::uint64_t>(v);
        }
        row[0] = 0;  // S(i, 0) = 0 for i >= 1
    }
    return row[k];
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    const std::uint64_t sat = cap == UINT64_MAX ? cap : cap + 1;
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // exact at every step: the running value is C(n-k+i, i)
        result = result * (n - k + i) / i;
        if (result >= sat) return sat;
    }
    return static_cast<std::uint64_t>(result);
}

RgsEnumerator::RgsEnumerator(std::size_t m, std::size_t k) : m_(m), k_(k) {
    if (k < 1) throw InvalidParameterError("partition block count must be >= 1");
    if (k > m) {
        throw InvalidParameterError("cannot split " + std::to_string(m) +
                                    " elements into " + std::to_string(k) +
                                    " nonempty blocks");
    }
    first();
}

void RgsEnumerator::first() {
    // lexicographically smallest string with exactly k blocks:
    // zeros, then the forced ramp 1, 2, ..., k-1 at the tail
    a_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
        const std::int64_t ramp = static_cast<std::int64_t>(i) -
                                  static_cast<std::int64_t>(m_ - k_);
        a_[i] = static_cast<std::int32_t>(std::max<std::int64_t>(0, ramp));
    }
    done_ = false;
    fresh_ = true;
}

void RgsEnumerator::reset() { first(); }

bool RgsEnumerator::next(std::vector<std::int32_t>& labels) {
    if (done_) return false;
    if (fresh_) {
        fresh_ = false;
        labels = a_;
        return true;
    }

    // prefix maxima; pm[i] = max(a_0..a_i)
    std::vector<std::int32_t> pm(m_);
    pm[0] = a_[0];
    for (std::size_t i = 1; i < m_; ++i) pm[i] = std::max(pm[i - 1], a_[i]);

    const std::int32_t top = static_cast<std::int32_t>(k_) - 1;
    for (std::size_t i = m_; i-- > 1;) {
        // a_i may grow to at most min(pm[i-1] + 1, k-1)
        if (a_[i] >= top || a_[i] > pm[i - 1]) continue;
        const std::int32_t cand = a_[i] + 1;
        const std::int32_t new_max = std::max(pm[i - 1], cand);
        const std::size_t slots_left = m_ - 1 - i;
        const std::size_t blocks_needed = static_cast<std::size_t>(top - new_max);
        if (blocks_needed > slots_left) continue;

        a_[i] = cand;
        // minimal completion: zeros until the tail ramp becomes forced
        std::int32_t cur_max = new_max;
        for (std::size_t j = i + 1; j < m_; ++j) {
            const std::size_t need = static_cast<std::size_t>(top - cur_max);
            if (need == m_ - j) {
                a_[j] = ++cur_max;
            } else {
                a_[j] = 0;
            }
        }
        labels = a_;
        return true;
    }
    done_ = true;
    return false;
}

}  // namespace rsclust
