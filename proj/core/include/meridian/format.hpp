#ifndef MERIDIAN_FORMAT_HPP
#define MERIDIAN_FORMAT_HPP

#include <string>

namespace meridian {

/// Shortest decimal string that parses back to exactly the same double
/// (std::to_chars round-trip mode).  Used everywhere output determinism or
/// re-parse exactness is required.
std::string format_double(double v);

}  // namespace meridian

#endif  // MERIDIAN_FORMAT_HPP
