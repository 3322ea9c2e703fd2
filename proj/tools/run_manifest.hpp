#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace conelap::cli {

/// FNV-1a 64-bit digest of a byte string, as "fnv1a64:<16 hex digits>".
std::string digest_bytes(const std::string& bytes);
std::string digest_file(const std::filesystem::path& path);

/// One structured record per command run, written as
/// <out-dir>/<command>.manifest.json. Every listed output carries the digest
/// of its bytes at write time.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_config(std::map<std::string, std::string> config) { config_ = std::move(config); }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);

  /// Serializes with wall-clock seconds since construction.
  std::string to_json() const;
  std::filesystem::path write(const std::filesystem::path& out_dir) const;

  const std::vector<std::pair<std::string, std::string>>& outputs() const { return outputs_; }

 private:
  std::string command_;
  std::map<std::string, std::string> config_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::chrono::steady_clock::time_point start_;
};

/// Line-delimited run log of the learner; one JSON object per line.
struct RunRecord {
  std::string mode;
  std::map<std::string, std::string> input_hashes;
  std::map<std::string, std::string> config;
  std::size_t iterations = 0;
  bool converged = false;
  double final_objective = 0.0;
  double last_change = 0.0;
  std::string laplacian_path;
  std::string covariance_path;
};

std::string to_json_line(const RunRecord& r);
RunRecord parse_run_record(const std::string& line);
void append_run_record(const std::filesystem::path& log, const RunRecord& r);
/// Last record of a run log; ValidationError if the log is empty.
RunRecord read_last_run_record(const std::filesystem::path& log);

}  // namespace conelap::cli
