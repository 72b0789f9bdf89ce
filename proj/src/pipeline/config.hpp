#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace debatenet {

enum class Stage { Synth, Ingest, Stats, Pairs, Features, Train, Importance, Did, Report };

std::string_view stage_name(Stage s);
Stage parse_stage(std::string_view name);  // throws ConfigError
const std::vector<Stage>& all_stages();

// Flat key=value run configuration. Every key is registered with a default;
// unknown keys are rejected.
class RunConfig {
 public:
  RunConfig();  // all defaults

  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string& path);

  // Throws ConfigError for an unknown key or a value of the wrong type.
  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& key) const;
  std::string get_string(const std::string& key) const { return get(key); }
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;  // comma-separated, trimmed, empties dropped
  bool is_set(const std::string& key) const { return !get(key).empty(); }

  // Threads to use, resolving 0 to the available cores.
  unsigned threads() const;
  std::string output_path(const std::string& file) const;

  // Canonical "key=value" lines of every key that influences the stage's
  // outputs, including its upstream stages. Excludes threads and output_dir.
  std::string canonical(Stage s) const;
  std::string hash(Stage s) const;
  // All keys except threads and output_dir, in canonical order.
  std::vector<std::pair<std::string, std::string>> resolved() const;

  static const std::vector<std::string>& keys();

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace debatenet
