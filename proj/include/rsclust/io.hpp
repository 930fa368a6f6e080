#ifndef RSCLUST_IO_HPP
#define RSCLUST_IO_HPP

#include <string>

#include "rsclust/types.hpp"

namespace rsclust {

// Parse a text point file: one point per line, coordinates separated by
// whitespace and/or commas. Blank lines and lines starting with '#' are
// skipped. Every row must have the same dimension.
Dataset load_points(const std::string& path);

}  // namespace rsclust

#endif  // RSCLUST_IO_HPP
