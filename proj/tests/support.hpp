#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>

#include "qpsim/types.hpp"

namespace qpsim_test {

// Runs fn, requires that it throws SimError with the given code, and hands
// the error back for message/coordinate checks.
template <typename Fn>
qpsim::SimError expect_err(qpsim::Err code, Fn&& fn) {
  try {
    fn();
  } catch (const qpsim::SimError& e) {
    INFO(e.what());
    REQUIRE(e.code() == code);
    return e;
  }
  FAIL("expected SimError " << qpsim::err_name(code) << ", nothing thrown");
  return qpsim::SimError(code, "unreachable");
}

// Scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("qpsim_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace qpsim_test
