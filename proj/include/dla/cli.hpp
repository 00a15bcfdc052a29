#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dla/methods.hpp"

namespace dla::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInputError = 2;

struct ExperimentConfig {
  Method method = Method::Ngram;
  std::map<std::string, std::string> paths;  // lexicon, word_list, clusters, corpus, ...
  Hyperparameters hp;
  std::string out = "out";
  int jobs = 0;

  /// Every key with its current value, in a fixed order.
  std::map<std::string, std::string> snapshot() const;
};

/// Applies one `key = value` setting. Unknown keys throw.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                   const std::string& base_dir = "");

/// Reads a key-value config file. `#` starts a comment; relative paths resolve
/// against the file's directory.
void load_config_file(ExperimentConfig& cfg, const std::string& path);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes `content` to `dir/name` through a temporary file and a rename.
void write_atomic(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace dla::cli
