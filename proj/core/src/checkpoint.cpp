#include "picrl/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "picrl/error.hpp"
#include "picrl/version.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace picrl::io {

namespace {

constexpr char kMagic[8] = {'P', 'I', 'C', 'R', 'L', 'C', 'K', 'P'};

template <typename T>
void write_pod(std::ofstream& f, T v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T read_pod(std::ifstream& f, const std::filesystem::path& path) {
  T v{};
  f.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!f) throw IoError("checkpoint: truncated file " + path.string());
  return v;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path,
                     const std::vector<std::pair<std::string, const numerics::ParamSet*>>& sets) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("checkpoint: cannot write " + path.string());
  f.write(kMagic, sizeof kMagic);
  write_pod<std::uint32_t>(f, kCheckpointFormatVersion);
  std::uint32_t count = 0;
  for (const auto& [prefix, set] : sets) count += static_cast<std::uint32_t>(set->count());
  write_pod(f, count);
  for (const auto& [prefix, set] : sets)
    for (const auto& p : *set) {
      const std::string name = prefix.empty() ? p.name : prefix + "/" + p.name;
      write_pod(f, static_cast<std::uint32_t>(name.size()));
      f.write(name.data(), static_cast<std::streamsize>(name.size()));
      write_pod(f, static_cast<std::uint64_t>(p.value.rows()));
      write_pod(f, static_cast<std::uint64_t>(p.value.cols()));
      f.write(reinterpret_cast<const char*>(p.value.data()),
              static_cast<std::streamsize>(p.value.size() * sizeof(double)));
    }
  if (!f) throw IoError("checkpoint: write failed for " + path.string());
}

const numerics::Matrix* CheckpointData::find(const std::string& name) const {
  for (const auto& [n, m] : tensors)
    if (n == name) return &m;
  return nullptr;
}

CheckpointData load_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("checkpoint: cannot open " + path.string());
  char magic[8];
  f.read(magic, sizeof magic);
  if (!f || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError("checkpoint: bad magic in " + path.string());
  const auto version = read_pod<std::uint32_t>(f, path);
  if (version != kCheckpointFormatVersion)
    throw IoError("checkpoint: format version " + std::to_string(version) + " in " +
                  path.string() + ", expected " + std::to_string(kCheckpointFormatVersion));
  const auto count = read_pod<std::uint32_t>(f, path);
  CheckpointData data;
  data.tensors.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    const auto name_len = read_pod<std::uint32_t>(f, path);
    std::string name(name_len, '\0');
    f.read(name.data(), name_len);
    if (!f) throw IoError("checkpoint: truncated file " + path.string());
    const auto rows = read_pod<std::uint64_t>(f, path);
    const auto cols = read_pod<std::uint64_t>(f, path);
    numerics::Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    f.read(reinterpret_cast<char*>(m.data()),
           static_cast<std::streamsize>(m.size() * sizeof(double)));
    if (!f) throw IoError("checkpoint: truncated file " + path.string());
    data.tensors.emplace_back(std::move(name), std::move(m));
  }
  return data;
}

void load_into(const std::filesystem::path& path,
               const std::vector<std::pair<std::string, numerics::ParamSet*>>& sets) {
  const CheckpointData data = load_checkpoint(path);
  // Validate everything before mutating anything.
  for (const auto& [prefix, set] : sets)
    for (const auto& p : *set) {
      const std::string name = prefix.empty() ? p.name : prefix + "/" + p.name;
      const numerics::Matrix* m = data.find(name);
      if (m == nullptr)
        throw IoError("checkpoint: " + path.string() + " is missing tensor '" + name + "'");
      if (!m->same_shape(p.value))
        throw IoError("checkpoint: tensor '" + name + "' is " + m->shape_str() + ", expected " +
                      p.value.shape_str());
    }
  for (const auto& [prefix, set] : sets)
    for (auto& p : *set) {
      const std::string name = prefix.empty() ? p.name : prefix + "/" + p.name;
      p.value = *data.find(name);
    }
}

}  // namespace picrl::io
