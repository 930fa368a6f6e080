#ifndef RSCLUST_ERRORS_HPP
#define RSCLUST_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rsclust {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct EmptyClusterError : Error { using Error::Error; };
struct InvalidParameterError : Error { using Error::Error; };
struct DegenerateSampleError : Error { using Error::Error; };
struct InfeasibleBoundsError : Error { using Error::Error; };
struct InfeasibleFlowError : Error { using Error::Error; };
struct IntegralityError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Enumeration request exceeds the configured cap.
struct CapacityError : Error {
    std::uint64_t estimated_count;
    CapacityError(const std::string& what, std::uint64_t count)
        : Error(what), estimated_count(count) {}
};

// Malformed input file; line is 1-based, 0 when not tied to a line.
struct FormatError : Error {
    std::size_t line;
    explicit FormatError(const std::string& what, std::size_t line_no = 0)
        : Error(what), line(line_no) {}
};

}  // namespace rsclust

#endif  // RSCLUST_ERRORS_HPP
