#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace tubepoly {

enum class OutputFormat { json, csv, text };

struct RunConfig {
    std::string command;
    std::string body;
    /// Weyl index for `weyl`, `classify --weyl`, `roots --weyl`.
    std::optional<std::string> weyl;
    /// Wraps the body as adj(body, q) when positive.
    long q = 0;
    long bits = 128;
    long samples = 1000000;
    std::optional<std::uint64_t> seed;
    OutputFormat format = OutputFormat::json;
    std::string output_path;
    std::string family;
    long n = 0;
    long terms = 10;
    double t = 0.5;
    /// Exit with status 2 when the verdict is negative.
    bool assert_positive = false;
    bool ci = false;
};

struct RunResult {
    int exit_code = 0;
    std::string output;
    std::string error;
};

/// TUBEPOLY_BITS when set and valid, else 128.
long default_bits();
RunResult run_command(const RunConfig& config);
/// Parses argv, runs, writes the output to stdout or the --output path.
int cli_main(int argc, char** argv);

}  // namespace tubepoly
