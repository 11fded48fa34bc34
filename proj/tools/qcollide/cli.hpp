// Copyright 2026 The qcollide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcollide::cli {

enum class Command { Trajectory, Orbit, Markovian };
enum class Format { Csv, Json };

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumerical = 4;

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
};

struct ExperimentConfig {
    Command command = Command::Trajectory;
    std::vector<double> p_values{0.5};  // --p, possibly a comma list
    std::optional<GridSpec> p_grid;     // --p-grid, overrides p_values
    double w_g = 0.8;
    int ancillas = 1;
    std::size_t collisions = 100;
    std::optional<std::uint64_t> seed;
    std::optional<std::pair<std::size_t, std::size_t>> window;
    bool restrict_system_ancilla = false;
    double backflow_tol = 1e-9;
    std::string metric = "coherence";
    unsigned threads = 0;
    Format format = Format::Csv;
    std::string out;  // empty writes to stdout

    /// "single" | "multi" | "orbit" | "markovian"
    std::string scenario() const;
    /// The p values a command iterates over: the expanded grid or p_values.
    std::vector<double> expanded_p() const;
};

/// Raised for anything that maps onto a non-zero exit code.
struct CliFailure {
    int exit_code;
    std::string message;
};

GridSpec parse_grid(const std::string& text);
std::pair<std::size_t, std::size_t> parse_window(const std::string& text);
std::vector<double> parse_p_list(const std::string& text);

/// Runs the command and returns the full file contents it would write.
/// Throws CliFailure.
std::string execute(ExperimentConfig config);

/// Reads the "# key = value" header of a previously emitted CSV file.
ExperimentConfig config_from_header(std::istream& in);

/// The data rows of a CSV file (everything that is not a comment).
std::string data_section(const std::string& contents);

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcollide::cli
