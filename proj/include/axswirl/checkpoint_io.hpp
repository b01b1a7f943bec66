#pragma once

#include "axswirl/fields.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace axswirl {

/// Binary checkpoint, version 1, all values little-endian:
///
///   offset  size  content
///   0       8     magic "AXSWCKPT"
///   8       4     uint32 format version (1)
///   12      4     uint32 n_rho
///   16      4     uint32 n_z
///   20      8     float64 rho_max
///   28      8     float64 z_min
///   36      8     float64 z_max
///   44      8     float64 time
///   52      ...   float64 arrays u_rho, u_phi, u_z, pressure, each n_rho*n_z
///                 values in rho-fastest order (index = k*n_rho + j)
inline constexpr std::uint32_t kCheckpointVersion = 1;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string encode_checkpoint(const VelocityState& state);
/// Throws IoError on a truncated buffer, wrong magic or unknown version.
VelocityState decode_checkpoint(const std::string& bytes);

void write_checkpoint(const std::filesystem::path& path, const VelocityState& state);
VelocityState read_checkpoint(const std::filesystem::path& path);

/// 64-bit FNV-1a, used for the content hashes in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);

} // namespace axswirl
