#pragma once

#include <string>

namespace mlc {

/// Shortest decimal that round-trips to the same double; "nan", "inf" and
/// "-inf" for non-finite values.
std::string format_double(double x);

}  // namespace mlc
