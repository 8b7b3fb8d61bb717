#pragma once

#include "ngs/assembly.hpp"
#include "ngs/kernel.hpp"
#include "ngs/mesh.hpp"
#include "ngs/stepper.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ngs {

enum class RunMode { mms, pulse, oracle, single };
enum class ScaleMode { none, paper_C, derived_C };

struct KernelConfig {
    std::string type = "gaussian"; // gaussian | exponential | truncated_growing_exp | dispersal_exp
    double a = 3.0;
    double R = 5.0;
    double c = 0.5;

    Kernel build() const;
    Kernel build_with_a(double a_value) const;

    static KernelConfig from(const Kernel& kernel);
};

// Fully resolved run description; every CLI flag mirrors one of these keys.
struct RunConfig {
    RunMode mode = RunMode::single;
    std::string case_name;           // [run] case
    std::filesystem::path out = "run";
    BcMode bc = BcMode::Dirichlet;
    Interval omega{0.0, 1.0};
    double collar = 0.0;
    KernelConfig kernel;
    PhysicalParams params;
    ScaleMode scale = ScaleMode::none;

    double h = 0.05;
    std::vector<double> levels;  // explicit mesh sizes (mms, oracle)
    std::size_t level_count = 0; // first n default levels of the case; 0 = all
    std::vector<std::size_t> modes; // spectral modes per oracle level
    double tau = 0.01;
    std::string tau_rule = "fixed"; // fixed | <k>h | h/<k>

    double T = 1.0;
    double steady_tol = 1e-5;
    std::size_t max_steps = 1'000'000;
    std::vector<double> a_values{3.0, 5.0, 7.0, 9.0};
    bool local_reference = true;
    std::string initial = "pulse"; // pulse | rest | case | zero
    bool dump_matrices = false;
    static constexpr bool deterministic = true;

    double tau_for(double level_h) const;
};

const char* to_string(RunMode mode) noexcept;
const char* to_string(ScaleMode mode) noexcept;
RunMode parse_mode(const std::string& s);

// Defaults for a mode: pulse setup, registered case data for mms/oracle.
RunConfig default_config(RunMode mode, const std::string& case_name = {});

// INI-style file with sections [run] [domain] [kernel] [params] [grid]; keys override `base`.
RunConfig load_config(const std::filesystem::path& path, RunConfig base);
RunConfig parse_config(const std::string& text, RunConfig base);

// Cross-field checks, run before any allocation. Throws Error with a distinct code per class:
// non-tiling h, tau not dividing T, horizon wider than collar, infinite-horizon Neumann,
// negative rates, unknown case.
void validate(const RunConfig& cfg);

// Inverse of parse_config: every key, full precision.
std::string to_ini(const RunConfig& cfg);

// Resolved mesh sizes for mms/oracle runs.
std::vector<double> resolved_levels(const RunConfig& cfg);

} // namespace ngs
