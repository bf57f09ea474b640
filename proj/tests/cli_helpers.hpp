#ifndef CCUR_TESTS_CLI_HELPERS_HPP
#define CCUR_TESTS_CLI_HELPERS_HPP

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ccur_test {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           (tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int value = 0;
    return value;
  }
};

inline int run_cli(const std::string& cli, const fs::path& cwd, const std::string& args) {
  const std::string command = "cd '" + cwd.string() + "' && '" + cli + "' " + args +
                              " >cli_stdout.txt 2>cli_stderr.txt";
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

// One golden CLI invocation and the files it must produce. The cases form a
// pipeline: `project` reads the selection emitted by `ccur`, so they must
// run in order inside one directory.
struct GoldenCase {
  std::string name;
  std::string args;
  std::vector<std::string> outputs;
};

inline std::vector<GoldenCase> golden_cases() {
  return {
      {"ccur",
       "ccur fg.csv bg.csv --header --row-labels --k 3 --c 4 --r 5 --out ccur_g",
       {"ccur_g.selection.json", "ccur_g.scores.csv", "ccur_g.manifest.json"}},
      {"cur",
       "cur fg.csv --header --row-labels --k 2 --c 3 --out cur_g",
       {"cur_g.factors.json", "cur_g.C.csv", "cur_g.U.csv", "cur_g.R.csv",
        "cur_g.manifest.json"}},
      {"cpca",
       "cpca fg.csv bg.csv --header --row-labels --top 3 --out cpca_g",
       {"cpca_g.features.json", "cpca_g.loadings.csv", "cpca_g.manifest.json"}},
      {"simulate",
       "simulate --n 24 --m 20 --p 10 --latent-dim 2 --threshold 1.2 --seed 7 "
       "--replicates 3 --method-k 3 --ccur-c 4 --out sim_g",
       {"sim_g.curves.csv", "sim_g.manifest.json"}},
      {"project",
       "project fg.csv --header --row-labels --selected-rows ccur_g.selection.json "
       "--out proj_g",
       {"proj_g.projection.csv", "proj_g.manifest.json"}},
  };
}

// Copy the committed inputs into `dir` and run every golden case there.
// Returns an empty string on success, else a description of the failure.
inline std::string run_golden_pipeline(const std::string& cli, const fs::path& golden_dir,
                                       const fs::path& dir) {
  for (const char* input : {"fg.csv", "bg.csv"}) {
    if (!fs::exists(golden_dir / input)) {
      return "missing committed input " + (golden_dir / input).string();
    }
    fs::copy_file(golden_dir / input, dir / input,
                  fs::copy_options::overwrite_existing);
  }
  for (const auto& c : golden_cases()) {
    const int code = run_cli(cli, dir, c.args);
    if (code != 0) {
      return c.name + " exited with code " + std::to_string(code) + ": " +
             read_file(dir / "cli_stderr.txt");
    }
    for (const auto& output : c.outputs) {
      if (!fs::exists(dir / output)) {
        return c.name + " did not produce " + output;
      }
    }
  }
  return "";
}

} // namespace ccur_test

#endif
