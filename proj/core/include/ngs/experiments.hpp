#pragma once

#include "ngs/config.hpp"
#include "ngs/mms.hpp"
#include "ngs/pulse.hpp"
#include "ngs/spectral.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ngs {

// Run drivers behind the `ngs` subcommands. Each validates the config, writes its CSVs,
// config.ini (the resolved config, re-runnable with --config) and manifest.json into cfg.out.

ConvergenceReport cmd_converge(const RunConfig& cfg, std::ostream& log);

struct PulseSummary {
    std::string label; // "a3", "local", ...
    std::optional<double> a;
    double scale_c = 1.0;
    std::size_t steps = 0;
    bool converged = false;
    double final_criterion = 0.0;
    double v_max = 0.0;
    double x_at_v_max = 0.0;
    PulseShape shape = PulseShape::other;
};

// Throws Error(max_steps_exceeded) after writing the outputs of the runs done so far.
std::vector<PulseSummary> cmd_pulse(const RunConfig& cfg, std::ostream& log);

std::vector<OracleComparison> cmd_oracle(const RunConfig& cfg, std::ostream& log);

StepperState cmd_single(const RunConfig& cfg, std::ostream& log);

// Builds the problem an oracle config describes ("zero" gives vanishing data and sources).
DirichletProblem oracle_problem(const RunConfig& cfg);

// Helpers shared with the tests.
std::string format_number(double value);
void write_profile_csv(const std::filesystem::path& path, const Mesh1D& mesh, const StepperState& state);
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);
void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report);

const char* code_version() noexcept;

} // namespace ngs
