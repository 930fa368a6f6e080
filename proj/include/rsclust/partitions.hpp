#ifndef RSCLUST_PARTITIONS_HPP
#define RSCLUST_PARTITIONS_HPP

#include <cstdint>
#include <vector>

#include "rsclust/errors.hpp"

namespace rsclust {

// Stirling number of the second kind S(m, k), saturating at cap + 1 so the
// caller can test "fits under cap" without overflow.
std::uint64_t stirling2_capped(std::size_t m, std::size_t k, std::uint64_t cap);

// Binomial coefficient C(n, k) with the same saturation convention.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

// Lexicographic enumeration of restricted growth strings for the partitions
// of {0, ..., m-1} into exactly k nonempty unlabeled blocks. The labeling is
// canonical: element 0 is in block 0, the first element outside block 0 is in
// block 1, and so on, so each partition appears exactly once. The number of
// strings emitted is S(m, k).
class RgsEnumerator {
public:
    RgsEnumerator(std::size_t m, std::size_t k);

    // Writes the next string into labels (resized to m); false when done.
    bool next(std::vector<std::int32_t>& labels);
    void reset();

    std::size_t m() const { return m_; }
    std::size_t k() const { return k_; }

private:
    void first();

    std::size_t m_;
    std::size_t k_;
    std::vector<std::int32_t> a_;
    bool done_ = false;
    bool fresh_ = true;
};

}  // namespace rsclust

#endif  // RSCLUST_PARTITIONS_HPP
