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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcollide/qcollide.h"

namespace qcollide::cli {
namespace {

constexpr double kClusterTol = 1e-6;

// ---- C handle ownership ---------------------------------------------------

struct ScheduleDeleter {
    void operator()(qc_schedule h) const { qc_schedule_free(h); }
};
struct TrajectoryDeleter {
    void operator()(qc_trajectory h) const { qc_trajectory_free(h); }
};
struct OrbitDeleter {
    void operator()(qc_orbit h) const { qc_orbit_free(h); }
};
using ScheduleHandle = std::unique_ptr<qc_schedule_s, ScheduleDeleter>;
using TrajectoryHandle = std::unique_ptr<qc_trajectory_s, TrajectoryDeleter>;
using OrbitHandle = std::unique_ptr<qc_orbit_s, OrbitDeleter>;

int exit_code_for(qc_status status) {
    switch (status) {
        case QC_OK: return kExitOk;
        case QC_ERR_INVALID_ARGUMENT:
        case QC_ERR_DIMENSION:
        case QC_ERR_OUT_OF_RANGE: return kExitUsage;
        case QC_ERR_NUMERICAL:
        case QC_ERR_NOT_HERMITIAN: return kExitNumerical;
        default: return kExitInternal;
    }
}

void check(qc_status status) {
    if (status != QC_OK) throw CliFailure{exit_code_for(status), qc_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw CliFailure{kExitUsage, message}; }

// ---- number formatting ----------------------------------------------------

// 17 significant digits for data cells.
std::string format_data(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// Shortest round-trip form for configuration echoes.
std::string format_exact(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const char* what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) usage_error(std::string("cannot parse ") + what + " '" + text + "'");
    return value;
}

template <class Int>
Int parse_integer(const std::string& text, const char* what) {
    Int value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        usage_error(std::string("cannot parse ") + what + " '" + text + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    std::istringstream in(text);
    while (std::getline(in, current, sep)) parts.push_back(current);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

// ---- tables ---------------------------------------------------------------

using Cell = std::variant<std::size_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::pair<std::string, std::string>> footer;
};

std::string render_csv(const Table& table) {
    std::ostringstream out;
    for (const auto& [key, value] : table.header) out << "# " << key << " = " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            std::visit(
                [&](auto v) {
                    if constexpr (std::is_same_v<decltype(v), double>) out << format_data(v);
                    else out << v;
                },
                row[c]);
        }
        out << '\n';
    }
    for (const auto& [key, value] : table.footer) out << "# " << key << " = " << value << '\n';
    return out.str();
}

std::string render_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit([&](auto v) { obj[table.columns[c]] = v; }, row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

std::string render(const Table& table, Format format) {
    return format == Format::Json ? render_json(table) : render_csv(table);
}

// ---- configuration echo ---------------------------------------------------

const char* command_name(Command c) {
    switch (c) {
        case Command::Trajectory: return "trajectory";
        case Command::Orbit: return "orbit";
        case Command::Markovian: return "markovian";
    }
    return "?";
}

std::string join_p(const std::vector<double>& values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + format_exact(values[k]);
    return out;
}

std::vector<std::pair<std::string, std::string>> config_header(const ExperimentConfig& config) {
    std::vector<std::pair<std::string, std::string>> h;
    h.emplace_back("qcollide", qc_version());
    h.emplace_back("command", command_name(config.command));
    h.emplace_back("scenario", config.scenario());
    if (config.p_grid) {
        h.emplace_back("p_grid", format_exact(config.p_grid->start) + ":" + format_exact(config.p_grid->stop) + ":" +
                                     format_exact(config.p_grid->step));
    } else {
        h.emplace_back("p", join_p(config.p_values));
    }
    h.emplace_back("wg", format_exact(config.w_g));
    if (config.command == Command::Trajectory) h.emplace_back("ancillas", std::to_string(config.ancillas));
    h.emplace_back("collisions", std::to_string(config.collisions));
    if (config.seed) h.emplace_back("seed", std::to_string(*config.seed));
    if (config.window) {
        h.emplace_back("window", std::to_string(config.window->first) + ":" + std::to_string(config.window->second));
    }
    if (config.command == Command::Trajectory) {
        h.emplace_back("restrict_system_ancilla", config.restrict_system_ancilla ? "true" : "false");
    }
    if (config.command == Command::Orbit) h.emplace_back("metric", config.metric);
    if (config.command != Command::Orbit) h.emplace_back("backflow_tol", format_exact(config.backflow_tol));
    return h;
}

qc_metric metric_from_name(const std::string& name) {
    if (name == "coherence") return QC_METRIC_COHERENCE;
    if (name == "coherence-env") return QC_METRIC_COHERENCE_ENV;
    if (name == "negativity") return QC_METRIC_NEGATIVITY;
    if (name == "trace-distance") return QC_METRIC_TRACE_DISTANCE;
    usage_error("unknown metric '" + name + "' (expected coherence, coherence-env, negativity, trace-distance)");
}

void validate(const ExperimentConfig& config) {
    if (config.ancillas < 1 || config.ancillas > 3) usage_error("--ancillas must be 1, 2 or 3");
    if (config.collisions == 0) usage_error("--collisions must be positive");
    if (!(config.w_g >= 0.0 && config.w_g <= 1.0)) usage_error("--wg must lie in [0, 1]");
    if (!(config.backflow_tol >= 0.0)) usage_error("backflow tolerance must be non-negative");
    const auto ps = config.expanded_p();
    if (ps.empty()) usage_error("empty p grid");
    for (double p : ps)
        if (!(p >= 0.0 && p <= 1.0)) usage_error("p = " + format_exact(p) + " lies outside [0, 1]");
    if (config.command == Command::Trajectory && ps.size() != 1) usage_error("trajectory takes a single --p value");
    if (config.window) {
        const auto [first, last] = *config.window;
        if (first > last || last > config.collisions) usage_error("--window must satisfy a <= b <= collisions");
    }
    if (config.command == Command::Orbit) metric_from_name(config.metric);
}

// ---- commands -------------------------------------------------------------

Table run_trajectory_command(ExperimentConfig& config) {
    qc_schedule raw = nullptr;
    if (config.ancillas == 1) {
        check(qc_schedule_repeated(2, 0, 1, config.collisions, &raw));
    } else {
        if (!config.seed) {
            std::random_device rd;
            config.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
        }
        check(qc_schedule_random(config.ancillas + 1, config.collisions, *config.seed,
                                 config.restrict_system_ancilla ? 1 : 0, &raw));
    }
    ScheduleHandle schedule(raw);

    qc_trajectory_params params;
    qc_trajectory_params_default(&params);
    params.p = config.p_values.front();
    params.w_g = config.w_g;

    qc_trajectory raw_traj = nullptr;
    check(qc_trajectory_run(&params, schedule.get(), &raw_traj));
    TrajectoryHandle traj(raw_traj);

    Table table;
    table.columns = {"n", "coherence_A", "coherence_env", "negativity", "trace_distance"};
    table.header = config_header(config);
    if (config.ancillas > 1) {
        std::size_t n_events = 0;
        check(qc_schedule_size(schedule.get(), &n_events));
        std::string listing;
        for (std::size_t k = 0; k < n_events; ++k) {
            int i = 0, j = 0;
            check(qc_schedule_event(schedule.get(), k, &i, &j));
            listing += (k ? " " : "") + std::to_string(i) + "-" + std::to_string(j);
        }
        table.header.emplace_back("schedule", listing);
    }

    std::size_t length = 0;
    check(qc_trajectory_length(traj.get(), &length));
    std::vector<double> distances;
    for (std::size_t k = 0; k < length; ++k) {
        qc_step step;
        check(qc_trajectory_step(traj.get(), k, &step));
        table.rows.push_back({step.n, step.coherence_a, step.coherence_env, step.negativity, step.trace_distance});
        distances.push_back(step.trace_distance);
    }

    qc_backflow_summary summary;
    check(qc_backflow(distances.data(), distances.size(), config.backflow_tol, &summary, nullptr, 0));
    table.footer.emplace_back("backflow_events", std::to_string(summary.n_events));
    table.footer.emplace_back("total_backflow", format_data(summary.total_backflow));
    table.footer.emplace_back("verdict", summary.n_events == 0 ? "markovian" : "non-markovian");
    return table;
}

Table run_markovian_command(const ExperimentConfig& config) {
    Table table;
    table.columns = {"n", "p", "trace_distance", "coherence"};
    table.header = config_header(config);

    std::vector<double> ps = config.expanded_p();
    std::sort(ps.begin(), ps.end());
    for (double p : ps) {
        qc_trajectory_params params;
        qc_trajectory_params_default(&params);
        params.p = p;
        params.w_g = config.w_g;
        qc_trajectory raw = nullptr;
        check(qc_markovian_run(&params, config.collisions, &raw));
        TrajectoryHandle traj(raw);

        std::size_t length = 0;
        check(qc_trajectory_length(traj.get(), &length));
        std::vector<double> distances;
        for (std::size_t k = 0; k < length; ++k) {
            qc_step step;
            check(qc_trajectory_step(traj.get(), k, &step));
            table.rows.push_back({step.n, p, step.trace_distance, step.coherence_a});
            distances.push_back(step.trace_distance);
        }
        qc_backflow_summary summary;
        check(qc_backflow(distances.data(), distances.size(), config.backflow_tol, &summary, nullptr, 0));
        qc_complex rho[4];
        check(qc_trajectory_final_system_state(traj.get(), rho, 4));

        const std::string tag = "[p=" + format_exact(p) + "]";
        table.footer.emplace_back("monotone" + tag, summary.n_events == 0 ? "true" : "false");
        table.footer.emplace_back("final_rho_a_diagonal" + tag, format_data(rho[0].re) + "," + format_data(rho[3].re));
    }
    return table;
}

Table run_orbit_command(ExperimentConfig& config) {
    const std::vector<double> grid = config.expanded_p();
    qc_orbit_params params;
    qc_orbit_params_default(&params);
    params.n_collisions = config.collisions;
    if (!config.window) {
        const std::size_t first = config.collisions + 1 > 60 ? config.collisions + 1 - 60 : 0;
        config.window = std::make_pair(first, config.collisions);
    }
    params.window_first = config.window->first;
    params.window_last = config.window->second;
    params.metric = metric_from_name(config.metric);
    params.w_g = config.w_g;
    params.threads = config.threads;

    qc_orbit raw = nullptr;
    check(qc_orbit_run(grid.data(), grid.size(), &params, &raw));
    OrbitHandle orbit(raw);

    Table table;
    table.columns = {"p", "value"};
    table.header = config_header(config);

    std::size_t n_points = 0;
    check(qc_orbit_size(orbit.get(), &n_points));
    std::string clusters;
    for (std::size_t k = 0; k < n_points; ++k) {
        double p = 0.0;
        const double* values = nullptr;
        std::size_t n_values = 0;
        check(qc_orbit_column(orbit.get(), k, &p, &values, &n_values));
        for (std::size_t v = 0; v < n_values; ++v) table.rows.push_back({p, values[v]});
        std::size_t count = 0;
        check(qc_distinct_values(values, n_values, kClusterTol, &count));
        clusters += (k ? " " : "") + format_exact(p) + ":" + std::to_string(count);
    }
    table.footer.emplace_back("clusters", clusters);
    return table;
}

void write_output(const std::string& contents, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << contents;
        out.flush();
        if (!out) throw CliFailure{kExitIo, "failed writing to standard output"};
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw CliFailure{kExitIo, "cannot open '" + path + "' for writing"};
    file << contents;
    file.flush();
    if (!file) throw CliFailure{kExitIo, "failed writing '" + path + "'"};
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw CliFailure{kExitIo, "cannot open '" + path + "'"};
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

const char* kColumnsHelp =
    "Output: CSV with '# key = value' header and footer comments, 17 significant\n"
    "digits per value, or a JSON array of row objects (--format json).\n"
    "Columns, in order:\n"
    "  trajectory  n,coherence_A,coherence_env,negativity,trace_distance\n"
    "  orbit       p,value\n"
    "  markovian   n,p,trace_distance,coherence\n"
    "Exit codes: 0 ok, 2 usage/config, 3 I/O, 4 numerical invariant violated.";

struct RawOptions {
    std::string p;
    std::string p_grid;
    std::string window;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App& sub, ExperimentConfig& config, RawOptions& raw) {
    sub.add_option("--p", raw.p, "Interaction probability, or a comma-separated list");
    sub.add_option("--p-grid", raw.p_grid, "Grid of p values as start:stop:step (inclusive)");
    sub.add_option("--wg", config.w_g, "Ground-state weight of every thermal ancilla")->capture_default_str();
    sub.add_option("--collisions", config.collisions, "Number of collisions")->capture_default_str();
    sub.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub.add_option("--out", config.out, "Output path (default: standard output)");
}

ExperimentConfig finish_config(ExperimentConfig config, const RawOptions& raw) {
    if (!raw.p.empty() && !raw.p_grid.empty()) usage_error("--p and --p-grid are mutually exclusive");
    if (!raw.p.empty()) config.p_values = parse_p_list(raw.p);
    if (!raw.p_grid.empty()) config.p_grid = parse_grid(raw.p_grid);
    if (!raw.window.empty()) config.window = parse_window(raw.window);
    config.seed = raw.seed;
    config.format = raw.format == "json" ? Format::Json : Format::Csv;
    return config;
}

}  // namespace

std::string ExperimentConfig::scenario() const {
    switch (command) {
        case Command::Trajectory: return ancillas == 1 ? "single" : "multi";
        case Command::Orbit: return "orbit";
        case Command::Markovian: return "markovian";
    }
    return "?";
}

std::vector<double> ExperimentConfig::expanded_p() const {
    if (!p_grid) return p_values;
    const GridSpec& g = *p_grid;
    if (!(g.step > 0.0) || g.stop < g.start) return {};
    const auto count = static_cast<std::size_t>((g.stop - g.start) / g.step + 1e-9) + 1;
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) grid[k] = g.start + static_cast<double>(k) * g.step;
    return grid;
}

GridSpec parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) usage_error("grid must look like start:stop:step, got '" + text + "'");
    return {parse_double(parts[0], "grid start"), parse_double(parts[1], "grid stop"),
            parse_double(parts[2], "grid step")};
}

std::pair<std::size_t, std::size_t> parse_window(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) usage_error("window must look like a:b, got '" + text + "'");
    return {parse_integer<std::size_t>(parts[0], "window start"), parse_integer<std::size_t>(parts[1], "window end")};
}

std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> values;
    for (const auto& part : split(text, ',')) values.push_back(parse_double(part, "p"));
    if (values.empty()) usage_error("empty p list");
    return values;
}

std::string execute(ExperimentConfig config) {
    validate(config);
    Table table;
    switch (config.command) {
        case Command::Trajectory: table = run_trajectory_command(config); break;
        case Command::Orbit: table = run_orbit_command(config); break;
        case Command::Markovian: table = run_markovian_command(config); break;
    }
    return render(table, config.format);
}

ExperimentConfig config_from_header(std::istream& in) {
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        entries.emplace(line.substr(2, eq - 2), line.substr(eq + 3));
    }
    auto get = [&](const char* key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    ExperimentConfig config;
    const std::string* command = get("command");
    if (command == nullptr) usage_error("header has no 'command' entry");
    if (*command == "trajectory") config.command = Command::Trajectory;
    else if (*command == "orbit") config.command = Command::Orbit;
    else if (*command == "markovian") config.command = Command::Markovian;
    else usage_error("unknown command '" + *command + "' in header");

    if (const auto* v = get("p")) config.p_values = parse_p_list(*v);
    if (const auto* v = get("p_grid")) config.p_grid = parse_grid(*v);
    if (const auto* v = get("wg")) config.w_g = parse_double(*v, "wg");
    if (const auto* v = get("ancillas")) config.ancillas = parse_integer<int>(*v, "ancillas");
    if (const auto* v = get("collisions")) config.collisions = parse_integer<std::size_t>(*v, "collisions");
    if (const auto* v = get("seed")) config.seed = parse_integer<std::uint64_t>(*v, "seed");
    if (const auto* v = get("window")) config.window = parse_window(*v);
    if (const auto* v = get("restrict_system_ancilla")) config.restrict_system_ancilla = *v == "true";
    if (const auto* v = get("metric")) config.metric = *v;
    if (const auto* v = get("backflow_tol")) config.backflow_tol = parse_double(*v, "backflow_tol");
    return config;
}

std::string data_section(const std::string& contents) {
    std::istringstream in(contents);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.rfind('#', 0) == 0) continue;
        out += line;
        out += '\n';
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qcollide: qubit collision-model simulator"};
    app.footer(kColumnsHelp);
    app.require_subcommand(1);

    ExperimentConfig traj_config;
    traj_config.command = Command::Trajectory;
    RawOptions traj_raw;
    auto* traj = app.add_subcommand("trajectory", "Evolve the paired system states and record metrics per collision");
    add_common_options(*traj, traj_config, traj_raw);
    traj->add_option("--ancillas", traj_config.ancillas, "Number of thermal ancillas (1-3)")->capture_default_str();
    traj->add_option("--seed", traj_raw.seed, "Seed for the random collision schedule (2-3 ancillas)");
    traj->add_flag("--restrict-system-ancilla", traj_config.restrict_system_ancilla,
                   "Draw only system-ancilla pairs in random schedules");
    traj->add_option("--backflow-tol", traj_config.backflow_tol, "Tolerance for backflow events")->capture_default_str();

    ExperimentConfig orbit_config;
    orbit_config.command = Command::Orbit;
    RawOptions orbit_raw;
    auto* orbit = app.add_subcommand("orbit", "Orbit diagram of a metric over a grid of p values");
    add_common_options(*orbit, orbit_config, orbit_raw);
    orbit->add_option("--window", orbit_raw.window, "Recorded steps a:b (default: last 60)");
    orbit->add_option("--metric", orbit_config.metric, "coherence, coherence-env, negativity or trace-distance")
        ->capture_default_str();
    orbit->add_option("--threads", orbit_config.threads, "Worker threads (0 = all cores)")->capture_default_str();

    ExperimentConfig markov_config;
    markov_config.command = Command::Markovian;
    RawOptions markov_raw;
    auto* markov = app.add_subcommand("markovian", "Fresh-ancilla (infinite bath) map for one or more p values");
    add_common_options(*markov, markov_config, markov_raw);
    markov->add_option("--backflow-tol", markov_config.backflow_tol, "Tolerance for backflow events")
        ->capture_default_str();

    std::string replay_path, replay_out;
    auto* replay = app.add_subcommand("replay", "Re-run the experiment recorded in a CSV header");
    replay->add_option("file", replay_path, "CSV file written by qcollide")->required();
    replay->add_option("--out", replay_out, "Output path (default: standard output)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        ExperimentConfig config;
        if (*traj) config = finish_config(traj_config, traj_raw);
        else if (*orbit) config = finish_config(orbit_config, orbit_raw);
        else if (*markov) config = finish_config(markov_config, markov_raw);
        else {
            std::istringstream in(read_file(replay_path));
            config = config_from_header(in);
            config.out = replay_out;
        }
        if (config.w_g < 0.5) err << "warning: w_g < w_e describes a population-inverted (negative temperature) bath\n";
        const std::string path = config.out;
        write_output(execute(std::move(config)), path, out);
        return kExitOk;
    } catch (const CliFailure& f) {
        err << "qcollide: " << f.message << '\n';
        return f.exit_code;
    } catch (const std::exception& e) {
        err << "qcollide: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace qcollide::cli
