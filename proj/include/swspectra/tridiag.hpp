#pragma once

#include <vector>

namespace sw {

// All eigenvalues of a real symmetric tridiagonal matrix, ascending.
// diag holds the n diagonal entries, off the n-1 sub/super-diagonal entries.
// Implicit-shift QL, values only; throws std::runtime_error on the (never
// observed in practice) failure to converge within the iteration cap.
std::vector<double> tridiag_eigenvalues(std::vector<double> diag, std::vector<double> off);

} // namespace sw
