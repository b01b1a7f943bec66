#include "axswirl/checkpoint_io.hpp"

#include "axswirl/grid.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace axswirl {

namespace {

constexpr char kMagic[8] = {'A', 'X', 'S', 'W', 'C', 'K', 'P', 'T'};
constexpr std::size_t kHeaderSize = 52;

template <class T>
void put(std::string& out, T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.append(buf, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw IoError("checkpoint: truncated data");
    char buf[sizeof(T)];
    std::memcpy(buf, in.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    pos += sizeof(T);
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

} // namespace

std::string encode_checkpoint(const VelocityState& state) {
    const CylGrid& g = *state.grid();
    std::string out;
    out.reserve(kHeaderSize + 4 * g.size() * sizeof(double));
    out.append(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, kCheckpointVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_rho));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_z));
    put<double>(out, g.rho_max);
    put<double>(out, g.z_min);
    put<double>(out, g.z_max);
    put<double>(out, state.time);
    for (const ScalarSample* f : {&state.u_rho, &state.u_phi, &state.u_z, &state.pressure})
        for (double v : f->values()) put<double>(out, v);
    return out;
}

VelocityState decode_checkpoint(const std::string& bytes) {
    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0)
        throw IoError("checkpoint: bad magic");
    std::size_t pos = sizeof(kMagic);
    const auto version = get<std::uint32_t>(bytes, pos);
    if (version != kCheckpointVersion)
        throw IoError("checkpoint: unsupported version " + std::to_string(version));
    const auto n_rho = get<std::uint32_t>(bytes, pos);
    const auto n_z = get<std::uint32_t>(bytes, pos);
    const double rho_max = get<double>(bytes, pos);
    const double z_min = get<double>(bytes, pos);
    const double z_max = get<double>(bytes, pos);
    const double time = get<double>(bytes, pos);

    GridHandle grid;
    try {
        grid = build_grid(static_cast<int>(n_rho), static_cast<int>(n_z), rho_max, z_min, z_max);
    } catch (const std::exception& e) {
        throw IoError(std::string("checkpoint: invalid grid header: ") + e.what());
    }
    if (bytes.size() != kHeaderSize + 4 * grid->size() * sizeof(double))
        throw IoError("checkpoint: payload size does not match header");

    VelocityState state = VelocityState::zeros(grid, time);
    for (ScalarSample* f : {&state.u_rho, &state.u_phi, &state.u_z, &state.pressure})
        for (double& v : f->values()) v = get<double>(bytes, pos);
    return state;
}

void write_checkpoint(const std::filesystem::path& path, const VelocityState& state) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const std::string bytes = encode_checkpoint(state);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

VelocityState read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return decode_checkpoint(ss.str());
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[value & 0xf];
        value >>= 4;
    }
    return s;
}

} // namespace axswirl
