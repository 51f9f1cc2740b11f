#include "kornshell/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace kornshell {

static_assert(std::endian::native == std::endian::little,
              "blob I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'K', 'S', 'H', 'F'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("read_blob: truncated header");
  return v;
}

}  // namespace

void write_blob(std::ostream& os, const ShellGrid& g, const std::string& patch_name,
                const std::vector<std::span<const double>>& channels) {
  for (const auto& c : channels)
    if (c.size() != g.size()) throw std::invalid_argument("write_blob: channel size");
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(channels.size()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_t()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_theta()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n_z()));
  put<double>(os, g.h());
  put<double>(os, g.omega());
  put<double>(os, g.z_lo());
  put<double>(os, g.z_hi());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(patch_name.size()));
  os.write(patch_name.data(), static_cast<std::streamsize>(patch_name.size()));
  for (const auto& c : channels)
    os.write(reinterpret_cast<const char*>(c.data()),
             static_cast<std::streamsize>(c.size() * sizeof(double)));
}

FieldBlob read_blob(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_blob: bad magic");
  if (get<std::uint32_t>(is) != kVersion)
    throw std::runtime_error("read_blob: unsupported version");
  const auto nch = get<std::uint32_t>(is);
  const auto nt = get<std::uint32_t>(is);
  const auto nth = get<std::uint32_t>(is);
  const auto nz = get<std::uint32_t>(is);
  const double h = get<double>(is), omega = get<double>(is);
  const double zl = get<double>(is), zh = get<double>(is);
  const auto len = get<std::uint32_t>(is);
  FieldBlob b;
  b.grid = ShellGrid(h, static_cast<int>(nt), static_cast<int>(nth),
                     static_cast<int>(nz), omega, zl, zh);
  b.patch_name.resize(len);
  is.read(b.patch_name.data(), len);
  b.channels.assign(nch, std::vector<double>(b.grid.size()));
  for (auto& c : b.channels) {
    is.read(reinterpret_cast<char*>(c.data()),
            static_cast<std::streamsize>(c.size() * sizeof(double)));
    if (!is) throw std::runtime_error("read_blob: truncated payload");
  }
  return b;
}

void write_blob(std::ostream& os, const ScalarField& f, const std::string& name) {
  write_blob(os, f.grid(), name, {f.values()});
}

void write_blob(std::ostream& os, const VecField3& u, const std::string& name) {
  write_blob(os, u.grid(), name, {u.t.values(), u.theta.values(), u.z.values()});
}

void write_blob(std::ostream& os, const FrameMatrixField& m, const std::string& name) {
  std::vector<std::span<const double>> ch;
  for (int c = 0; c < 9; ++c) ch.push_back(m.channel(c).values());
  write_blob(os, m.grid(), name, ch);
}

ScalarField to_scalar_field(const FieldBlob& b) {
  if (b.channels.size() != 1) throw std::runtime_error("blob is not a scalar field");
  return ScalarField(b.grid, b.channels[0]);
}

VecField3 to_vec_field(const FieldBlob& b) {
  if (b.channels.size() != 3) throw std::runtime_error("blob is not a vector field");
  return VecField3(ScalarField(b.grid, b.channels[0]), ScalarField(b.grid, b.channels[1]),
                   ScalarField(b.grid, b.channels[2]));
}

FrameMatrixField to_matrix_field(const FieldBlob& b) {
  if (b.channels.size() != 9) throw std::runtime_error("blob is not a matrix field");
  FrameMatrixField m(b.grid);
  for (int c = 0; c < 9; ++c) m.channel(c) = ScalarField(b.grid, b.channels[c]);
  return m;
}

void write_csv(std::ostream& os, const ShellGrid& g,
               const std::vector<std::string>& names,
               const std::vector<std::span<const double>>& channels) {
  if (names.size() != channels.size())
    throw std::invalid_argument("write_csv: names/channels mismatch");
  os << "i_t,i_theta,i_z,t,theta,z";
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  const auto old = os.precision(17);
  for (int k = 0; k < g.n_z(); ++k)
    for (int j = 0; j < g.n_theta(); ++j)
      for (int i = 0; i < g.n_t(); ++i) {
        os << i << ',' << j << ',' << k << ',' << g.t(i) << ',' << g.theta(j) << ','
           << g.z(k);
        for (const auto& c : channels) os << ',' << c[g.index(i, j, k)];
        os << '\n';
      }
  os.precision(old);
}

}  // namespace kornshell
