#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <vector>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "theoryforge/syntax.hpp"

namespace testutil {

inline std::filesystem::path data_dir() { return THEORYFORGE_DATA_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Temporary directory removed on scope exit.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("theoryforge-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

// Hash over every file's relative path and bytes, in sorted path order.
inline std::size_t tree_digest(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    all += std::filesystem::relative(f, root).generic_string();
    all += '\0';
    all += slurp(f);
    all += '\0';
  }
  return std::hash<std::string>{}(all);
}

inline std::size_t count_files(const std::filesystem::path& root) {
  std::size_t n = 0;
  if (!std::filesystem::exists(root)) return 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root))
    n += e.is_regular_file();
  return n;
}

}  // namespace testutil
