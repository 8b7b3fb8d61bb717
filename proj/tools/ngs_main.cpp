#include <CLI11.hpp>

#include "ngs/config.hpp"
#include "ngs/error.hpp"
#include "ngs/experiments.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Overrides {
    std::string config;
    std::string case_name;
    std::optional<std::size_t> levels;
    std::vector<double> a;
    std::optional<double> h;
    std::optional<double> tau;
    std::string out;
    bool quiet = false;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "INI run configuration ([run] [domain] [kernel] [params] [grid])")
        ->check(CLI::ExistingFile);
    cmd->add_option("--case", o.case_name, "manufactured case (dirichlet1, neumann1; oracle also accepts zero)");
    cmd->add_option("--levels", o.levels, "number of refinement levels to run");
    cmd->add_option("--a", o.a, "dispersal ranges a (pulse)")->delimiter(',');
    cmd->add_option("--h", o.h, "mesh size");
    cmd->add_option("--tau", o.tau, "time step (switches tau rule to fixed)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_flag("-q,--quiet", o.quiet, "no progress output");
}

ngs::RunConfig resolve(ngs::RunMode mode, const Overrides& o)
{
    std::string case_name = o.case_name;
    if (mode == ngs::RunMode::oracle && case_name == "zero") {
        case_name.clear();
    }
    ngs::RunConfig cfg = ngs::default_config(mode, case_name);
    if (!o.config.empty()) {
        cfg = ngs::load_config(o.config, cfg);
    }
    cfg.mode = mode;
    if (o.case_name == "zero" && mode == ngs::RunMode::oracle) {
        cfg.case_name = "zero";
    } else if (!o.case_name.empty() && o.case_name != cfg.case_name) {
        const ngs::RunConfig fresh = ngs::default_config(mode, o.case_name);
        cfg = ngs::parse_config("[run]\ncase = " + o.case_name + "\n", cfg);
        cfg.levels = fresh.levels;
        cfg.tau_rule = fresh.tau_rule;
        cfg.tau = fresh.tau;
    }
    if (o.levels) {
        cfg.level_count = *o.levels;
    }
    if (!o.a.empty()) {
        cfg.a_values = o.a;
    }
    if (o.h) {
        cfg.h = *o.h;
        if (mode == ngs::RunMode::mms || mode == ngs::RunMode::oracle) {
            cfg.levels = {*o.h};
        }
    }
    if (o.tau) {
        cfg.tau = *o.tau;
        cfg.tau_rule = "fixed";
    }
    if (!o.out.empty()) {
        cfg.out = o.out;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nonlocal Gray-Scott finite element solver"};
    app.set_help_flag("--help", "print this help and exit"); // -h would clash with the mesh-size flag --h
    app.require_subcommand(1);
    app.set_version_flag("--version", ngs::code_version());

    Overrides o;
    auto* converge = app.add_subcommand("converge", "MMS refinement study: convergence.csv");
    auto* pulse = app.add_subcommand("pulse", "steady pulses for each a plus the local reference");
    auto* oracle = app.add_subcommand("oracle", "finite element vs spectral Galerkin comparison");
    auto* single = app.add_subcommand("single", "one run to final time T: profile.csv");
    for (auto* cmd : {converge, pulse, oracle, single}) {
        add_common(cmd, o);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ostream null_stream(nullptr);
    std::ostream& log = o.quiet ? null_stream : std::cerr;
    try {
        if (converge->parsed()) {
            ngs::cmd_converge(resolve(ngs::RunMode::mms, o), log);
        } else if (pulse->parsed()) {
            ngs::cmd_pulse(resolve(ngs::RunMode::pulse, o), log);
        } else if (oracle->parsed()) {
            ngs::cmd_oracle(resolve(ngs::RunMode::oracle, o), log);
        } else {
            ngs::cmd_single(resolve(ngs::RunMode::single, o), log);
        }
    } catch (const ngs::Error& e) {
        std::cerr << "ngs: " << ngs::to_string(e.code()) << ": " << e.what() << '\n';
        return ngs::exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "ngs: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
