#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "ptosc/operators.hpp"

namespace ptosc {

// Text dump of a matrix: self-describing header (dim, cutoff, size, ordering
// version, potential string, coupling) followed by row-major entries as
// `re im` pairs with 17 significant digits.
void write_matrix_dump(std::ostream& os, const OperatorMatrix& m,
                       const std::string& potential, std::complex<double> g);

}  // namespace ptosc
