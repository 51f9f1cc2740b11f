#pragma once

// Binary and CSV serialization of node fields.
//
// Blob layout (all integers uint32, all reals float64, little-endian):
//   "KSHF" | version=1 | channels | n_t | n_theta | n_z | h | omega | z_lo |
//   z_hi | name_len | name bytes | payload
// The payload is channel-major; inside a channel nodes are t-fastest.
// Scalar fields use 1 channel, displacements 3 (u_t, u_theta, u_z), frame
// matrices 9 (row-major M_00 .. M_22).

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kornshell/grid.hpp"

namespace kornshell {

struct FieldBlob {
  ShellGrid grid;
  std::string patch_name;
  std::vector<std::vector<double>> channels;
};

void write_blob(std::ostream& os, const ShellGrid& grid, const std::string& patch_name,
                const std::vector<std::span<const double>>& channels);
FieldBlob read_blob(std::istream& is);

void write_blob(std::ostream& os, const ScalarField& f, const std::string& patch_name);
void write_blob(std::ostream& os, const VecField3& u, const std::string& patch_name);
void write_blob(std::ostream& os, const FrameMatrixField& m,
                const std::string& patch_name);

ScalarField to_scalar_field(const FieldBlob& b);
VecField3 to_vec_field(const FieldBlob& b);
FrameMatrixField to_matrix_field(const FieldBlob& b);

/// One row per node: i_t,i_theta,i_z,t,theta,z,<channels...>.
void write_csv(std::ostream& os, const ShellGrid& grid,
               const std::vector<std::string>& names,
               const std::vector<std::span<const double>>& channels);

}  // namespace kornshell
