#include "run_manifest.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "conelap/errors.hpp"

namespace conelap::cli {

using nlohmann::json;

std::string digest_bytes(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return digest_bytes(bytes);
}

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.emplace_back(path.string(), digest_file(path));
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs_.emplace_back(path.string(), digest_file(path));
}

std::string RunManifest::to_json() const {
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  json j;
  j["command"] = command_;
  j["config"] = config_;
  j["input_hashes"] = json::object();
  for (const auto& [p, d] : inputs_) j["input_hashes"][p] = d;
  j["outputs"] = json::array();
  for (const auto& [p, d] : outputs_) j["outputs"].push_back({{"path", p}, {"digest", d}});
  j["timing_seconds"] = seconds;
  return j.dump(2) + "\n";
}

std::filesystem::path RunManifest::write(const std::filesystem::path& out_dir) const {
  const auto path = out_dir / (command_ + ".manifest.json");
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << to_json();
  return path;
}

std::string to_json_line(const RunRecord& r) {
  json j{{"mode", r.mode},
         {"input_hashes", r.input_hashes},
         {"config", r.config},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"final_objective", r.final_objective},
         {"last_change", r.last_change},
         {"laplacian", r.laplacian_path},
         {"covariance", r.covariance_path}};
  return j.dump();
}

RunRecord parse_run_record(const std::string& line) {
  try {
    const json j = json::parse(line);
    RunRecord r;
    r.mode = j.at("mode").get<std::string>();
    r.input_hashes = j.at("input_hashes").get<std::map<std::string, std::string>>();
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    r.iterations = j.at("iterations").get<std::size_t>();
    r.converged = j.at("converged").get<bool>();
    r.final_objective = j.at("final_objective").get<double>();
    r.last_change = j.at("last_change").get<double>();
    r.laplacian_path = j.at("laplacian").get<std::string>();
    r.covariance_path = j.at("covariance").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed run record: ") + e.what());
  }
}

void append_run_record(const std::filesystem::path& log, const RunRecord& r) {
  std::ofstream out(log, std::ios::app);
  if (!out) throw ValidationError("cannot write " + log.string());
  out << to_json_line(r) << '\n';
}

RunRecord read_last_run_record(const std::filesystem::path& log) {
  std::ifstream in(log);
  if (!in) throw ValidationError("cannot open " + log.string());
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) throw ValidationError("run log " + log.string() + " is empty");
  return parse_run_record(last);
}

}  // namespace conelap::cli
