#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nek {

inline constexpr const char* kToolVersion = "nek 0.1.0";

// FNV-1a 64-bit; used for the config hash and per-output checksums in the
// run manifest (integrity bookkeeping, not cryptography).
std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

// Floats are always printed with 17 significant digits so reruns are
// byte-identical.
std::string format_g17(double v);

// Minimal CSV writer with fixed formatting.
class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  void close();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
  bool closed_ = false;
};

// Run manifest: config hash, tool version, seed, timestamps, and one
// checksum per emitted file. Written as <out_dir>/manifest.json.
struct RunManifest {
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::pair<std::string, std::string>> outputs;  // (file, checksum)
};

std::string iso8601_now();
void write_manifest(const std::string& out_dir, const RunManifest& manifest);

}  // namespace nek
