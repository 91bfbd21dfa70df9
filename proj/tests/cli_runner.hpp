#ifndef ELLIPTIC_LAB_TESTS_CLI_RUNNER_HPP
#define ELLIPTIC_LAB_TESTS_CLI_RUNNER_HPP

// Runs the command-line tool through the shell and captures its streams.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli_runner {

struct Result
{
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::filesystem::path scratch_dir()
{
    auto dir = std::filesystem::temp_directory_path()
               / ("elliptic_lab_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

/// `env` is a shell prefix such as "ELLIPTIC_LAB_CONFIG=x.cfg"; empty for none.
inline Result run(const std::string& args, const std::string& env = "")
{
    const auto dir = scratch_dir();
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string command = "env -u ELLIPTIC_LAB_CONFIG " + env + " '" + ELLIPTIC_LAB_CLI + "' " + args
                                + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(command.c_str());
    Result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace cli_runner

#endif // ELLIPTIC_LAB_TESTS_CLI_RUNNER_HPP
