#pragma once

// Helpers for driving the CLI binary from tests.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli_runner {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline fs::path work_dir(const std::string& name) {
  static std::string current;
  static fs::path dir;
  if (current != name) {
    current = name;
    dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  return dir;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline RunResult run(const std::string& cli, const std::string& scratch,
                     const std::string& args) {
  static int counter = 0;
  const fs::path out = work_dir(scratch) / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = work_dir(scratch) / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = cli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Value of a "key=value" line in a report.
inline double report_value(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  if (pos == std::string::npos) return std::nan("");
  return std::strtod(text.c_str() + pos + key.size() + 1, nullptr);
}

}  // namespace cli_runner
