// tests/support/tmpdir.h

// Copyright 2026 mcse authors
// Apache 2.0

#ifndef MCSE_TESTS_SUPPORT_TMPDIR_H_
#define MCSE_TESTS_SUPPORT_TMPDIR_H_

#include <atomic>
#include <filesystem>
#include <string>

namespace mcse::test {

// Scratch directory under the system temp root, removed on destruction.
class TmpDir {
 public:
  explicit TmpDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("mcse_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TmpDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TmpDir(const TmpDir&) = delete;
  TmpDir& operator=(const TmpDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace mcse::test

#endif  // MCSE_TESTS_SUPPORT_TMPDIR_H_
