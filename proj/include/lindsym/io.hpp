#pragma once

#include <string>
#include <vector>

#include "lindsym/liouvillian.hpp"
#include "lindsym/observables.hpp"

namespace lindsym {

// 17 significant digits: doubles round-trip exactly, so repeated runs diff
// clean and regression CSVs compare byte for byte.
std::string fmt17(double x);

// Coefficient-spectrum CSV, decreasing |c|:
//   index,re_c,im_c,abs_c,parity,orbit_size
std::string spectrum_csv(const std::vector<SpectrumRecord>& records);

// Basis dump CSV: index,canonical_ket,canonical_bra,orbit_size,delta_n,parity
std::string basis_csv(const InvariantBasis& basis);

// Coordinate-format dump of the reduced generator, one "row col re im" line
// per entry after a "dim sector" header.
std::string sparse_coo_dump(const ReducedLiouvillian& red);

void write_file(const std::string& path, const std::string& content);

}  // namespace lindsym
