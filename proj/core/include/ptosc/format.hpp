#pragma once

#include <string>

namespace ptosc {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

}  // namespace ptosc
