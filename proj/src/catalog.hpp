#pragma once

#include "intset.hpp"

#include <string>
#include <vector>

namespace shiftlab {

// Named example sets, with their symbolic known-facts attached here and
// nowhere else. Accepted names:
//   thick_powers2        union over n>=1 of [2^n, 2^n + n]
//   grid(n)              {(n*3^n)k + i : k>=1, 0<=i<n}
//   grid_union           union of grid(n) over n
//   fs_tens              finite sums of (10^n)
//   complement_fs_tens   N_0 minus fs_tens
//   complement_powers2   N_0 minus {2^n : n>=1}
//   salas_fs             N_0 minus finite sums of the Salas growth sequence
//   salas_diff           N_0 minus the difference set of the Salas growth sequence
IntSet example_set_catalog(const std::string& name);

std::vector<std::string> catalog_names();

// The growth sequence backing salas_fs / salas_diff: s1 = 5 and
// s_{n+1} = 4*(s_1 + ... + s_n + n) + 1, which satisfies the strict
// growth requirement s_{n+1} > 4*(sum + n). This concrete choice is
// implementer-fixed; terms are returned while they fit in int64.
Elems salas_growth_sequence();

} // namespace shiftlab
