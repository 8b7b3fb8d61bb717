#include "ngs/experiments.hpp"

#include "ngs/assembly.hpp"
#include "ngs/error.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#ifndef NGS_VERSION
#define NGS_VERSION "unknown"
#endif

namespace ngs {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const char* code_version() noexcept { return NGS_VERSION; }

std::string format_number(double value)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << value;
    return os.str();
}

namespace {

std::ofstream open_output(const fs::path& path)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::invalid_argument, "cannot write " + path.string());
    }
    out.imbue(std::locale::classic());
    return out;
}

std::string opt(const std::optional<double>& x) { return x ? format_number(*x) : std::string{}; }

class Clock {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json config_json(const RunConfig& cfg)
{
    return {
        {"mode", to_string(cfg.mode)},
        {"case", cfg.case_name},
        {"bc", cfg.bc == BcMode::Dirichlet ? "dirichlet" : "neumann"},
        {"omega", {cfg.omega.lo, cfg.omega.hi}},
        {"collar", cfg.collar},
        {"kernel", {{"type", cfg.kernel.type}, {"a", cfg.kernel.a}, {"R", cfg.kernel.R}, {"c", cfg.kernel.c}}},
        {"params",
         {{"d_u", cfg.params.d_u}, {"d_v", cfg.params.d_v}, {"f", cfg.params.f}, {"kappa", cfg.params.kappa}}},
        {"scale", to_string(cfg.scale)},
        {"h", cfg.h},
        {"levels", resolved_levels(cfg)},
        {"modes", cfg.modes},
        {"tau", cfg.tau},
        {"tau_rule", cfg.tau_rule},
        {"T", cfg.T},
        {"steady_tol", cfg.steady_tol},
        {"max_steps", cfg.max_steps},
        {"a_values", cfg.a_values},
        {"local_reference", cfg.local_reference},
        {"initial", cfg.initial},
        {"deterministic", RunConfig::deterministic},
    };
}

json base_conventions()
{
    return {
        {"initial_data", "nodal interpolation"},
        {"time_scheme", "semi-implicit Euler: linear terms implicit, u v^2 explicit"},
        {"assembly_quadrature", "4-point Gauss, inner integral clipped at the horizon and split at y = x for kinked kernels"},
        {"reaction_quadrature", "3-point Gauss over Omega elements"},
        {"source_quadrature", "4-point Gauss over all elements"},
        {"error_quadrature", "5-point Gauss over Omega elements"},
        {"dirichlet_constraint", "zero extension, no collar; Gamma is the total kernel mass"},
        {"neumann_constraint", "collar of width >= horizon; Gamma(x) is the kernel mass over the extended domain"},
        {"collar_sources", "on the collar q = -d K w (strong form), so the exact solution satisfies the constraint"},
    };
}

void write_run_files(const RunConfig& cfg, json manifest)
{
    {
        std::ofstream ini = open_output(cfg.out / "config.ini");
        ini << to_ini(cfg);
    }
    std::ofstream out = open_output(cfg.out / "manifest.json");
    out << manifest.dump(2) << '\n';
}

json manifest_head(const char* command, const RunConfig& cfg)
{
    json m;
    m["tool"] = "ngs";
    m["version"] = code_version();
    m["command"] = command;
    m["config_file"] = "config.ini";
    m["config"] = config_json(cfg);
    m["conventions"] = base_conventions();
    return m;
}

const char* region_name(Region r) { return r == Region::Interior ? "interior" : "collar"; }

Kernel scaled_kernel(const RunConfig& cfg, PhysicalParams& params)
{
    Kernel kernel = cfg.kernel.build();
    params.scale_c = 1.0;
    if (cfg.scale == ScaleMode::paper_C) {
        params.scale_c = kernel.laplacian_scale(ScaleFormula::paper);
    } else if (cfg.scale == ScaleMode::derived_C) {
        params.scale_c = kernel.laplacian_scale(ScaleFormula::moment);
    }
    return kernel;
}

MmsCase configured_case(const RunConfig& cfg)
{
    // The manufactured solution is fixed by the case; problem data follow the config so
    // that an edited config still yields a consistent manufactured problem.
    MmsCase c = find_case(cfg.case_name);
    c.omega = cfg.omega;
    c.collar = cfg.collar;
    c.bc = cfg.bc;
    c.kernel = cfg.kernel.build();
    c.params = cfg.params;
    c.T = cfg.T;
    return c;
}

} // namespace

void write_profile_csv(const fs::path& path, const Mesh1D& mesh, const StepperState& state)
{
    std::ofstream out = open_output(path);
    out << "x,u,v,region\n";
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        out << format_number(mesh.node(i)) << ',' << format_number(state.u(k)) << ',' << format_number(state.v(k))
            << ',' << region_name(mesh.region(i)) << '\n';
    }
}

void write_trace_csv(const fs::path& path, const RunTrace& trace)
{
    std::ofstream out = open_output(path);
    out << "step,t,norm_u,norm_v,criterion\n";
    for (const TraceRow& r : trace.rows) {
        out << r.step << ',' << format_number(r.t) << ',' << format_number(r.norm_u) << ','
            << format_number(r.norm_v) << ',' << format_number(r.criterion) << '\n';
    }
}

void write_convergence_csv(const fs::path& path, const ConvergenceReport& report)
{
    std::ofstream out = open_output(path);
    out << "level,h,tau,nodes,elements,err_u,rate_u,err_v,rate_v\n";
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const ConvergenceLevel& l = report.levels[i];
        out << i + 1 << ',' << format_number(l.h) << ',' << format_number(l.tau) << ',' << l.nodes << ','
            << l.elements << ',' << format_number(l.err_u) << ',' << opt(l.rate_u) << ',' << format_number(l.err_v)
            << ',' << opt(l.rate_v) << '\n';
    }
}

ConvergenceReport cmd_converge(const RunConfig& cfg, std::ostream& log)
{
    if (cfg.mode != RunMode::mms) {
        throw Error(Errc::invalid_argument, "converge needs mode = mms");
    }
    validate(cfg);
    const Clock clock;
    const MmsCase c = configured_case(cfg);
    const std::vector<double> levels = resolved_levels(cfg);

    ConvergenceReport report;
    report.case_name = c.name;
    for (double h : levels) {
        const double tau = cfg.tau_for(h);
        log << "level h=" << h << " tau=" << tau << std::flush;
        LevelResult r = run_level(c, h, tau);
        log << "  err_u=" << r.level.err_u << " err_v=" << r.level.err_v << '\n';
        if (!report.levels.empty()) {
            const ConvergenceLevel& prev = report.levels.back();
            r.level.rate_u = convergence_rate(prev.err_u, r.level.err_u, prev.h, r.level.h);
            r.level.rate_v = convergence_rate(prev.err_v, r.level.err_v, prev.h, r.level.h);
        }
        report.levels.push_back(r.level);
        if (cfg.dump_matrices) {
            const Mesh1D& mesh = r.mesh;
            const AssembledOperators ops = assemble_nonlocal(mesh, c.kernel, c.bc);
            const fs::path dir = cfg.out / "matrices" / ("level" + std::to_string(report.levels.size()));
            std::ofstream m = open_output(dir / "mass_omega.txt");
            write_matrix(m, ops.mass_omega);
            std::ofstream a = open_output(dir / "nonlocal.txt");
            write_matrix(a, ops.nonlocal);
        }
    }
    write_convergence_csv(cfg.out / "convergence.csv", report);

    json m = manifest_head("converge", cfg);
    m["outputs"] = {"convergence.csv"};
    json rows = json::array();
    for (const ConvergenceLevel& l : report.levels) {
        rows.push_back({{"h", l.h}, {"tau", l.tau}, {"err_u", l.err_u}, {"err_v", l.err_v}});
    }
    m["levels"] = rows;
    m["error_norm"] = "relative L2(Omega) at T";
    m["wall_time_s"] = clock.seconds();
    write_run_files(cfg, m);
    return report;
}

std::vector<PulseSummary> cmd_pulse(const RunConfig& cfg, std::ostream& log)
{
    if (cfg.mode != RunMode::pulse) {
        throw Error(Errc::invalid_argument, "pulse needs mode = pulse");
    }
    validate(cfg);
    const Clock clock;

    PulseSetup setup;
    setup.omega = cfg.omega;
    setup.collar = cfg.collar;
    setup.horizon = cfg.kernel.R;
    setup.h = cfg.h;
    setup.tau = cfg.tau;
    setup.tol = cfg.steady_tol;
    setup.max_steps = cfg.max_steps;
    setup.params = cfg.params;
    setup.scaled = cfg.scale != ScaleMode::none;
    setup.formula = cfg.scale == ScaleMode::derived_C ? ScaleFormula::moment : ScaleFormula::paper;

    std::vector<std::optional<double>> runs(cfg.a_values.begin(), cfg.a_values.end());
    if (cfg.local_reference) {
        runs.emplace_back();
    }

    std::vector<PulseSummary> summaries;
    json runs_json = json::array();
    bool exhausted = false;
    for (const auto& a : runs) {
        PulseSummary s;
        s.a = a;
        s.label = a ? "a" + format_number(*a) : "local";
        log << "pulse " << s.label << std::flush;
        const PulseRun run = run_pulse(setup, a);
        const StepperState& st = run.result.state;

        const std::vector<double> x(run.mesh.nodes().begin(), run.mesh.nodes().end());
        const std::vector<double> v(st.v.data(), st.v.data() + st.v.size());
        Eigen::Index arg = 0;
        s.scale_c = run.scale_c;
        s.steps = st.n;
        s.converged = run.result.converged;
        s.final_criterion = run.result.history.empty() ? 0.0 : run.result.history.back();
        s.v_max = st.v.maxCoeff(&arg);
        s.x_at_v_max = x[static_cast<std::size_t>(arg)];
        s.shape = classify_pulse(x, v);
        log << "  steps=" << s.steps << " v_max=" << s.v_max << " shape=" << to_string(s.shape)
            << (s.converged ? "" : " (not converged)") << '\n';

        write_profile_csv(cfg.out / s.label / "profile.csv", run.mesh, st);
        write_trace_csv(cfg.out / s.label / "trace.csv", run.trace);
        runs_json.push_back({{"label", s.label},
                             {"a", a ? json(*a) : json(nullptr)},
                             {"scale_c", s.scale_c},
                             {"steps", s.steps},
                             {"converged", s.converged},
                             {"final_criterion", s.final_criterion},
                             {"energy_bound_exceedances", run.trace.energy_bound_exceedances},
                             {"profile", s.label + "/profile.csv"},
                             {"trace", s.label + "/trace.csv"}});
        summaries.push_back(s);
        if (!s.converged) {
            exhausted = true;
            break;
        }
    }

    {
        std::ofstream out = open_output(cfg.out / "summary.csv");
        out << "label,a,scale_c,steps,converged,final_criterion,v_max,x_at_v_max,shape\n";
        for (const PulseSummary& s : summaries) {
            out << s.label << ',' << opt(s.a) << ',' << format_number(s.scale_c) << ',' << s.steps << ','
                << (s.converged ? 1 : 0) << ',' << format_number(s.final_criterion) << ','
                << format_number(s.v_max) << ',' << format_number(s.x_at_v_max) << ',' << to_string(s.shape)
                << '\n';
        }
    }

    json m = manifest_head("pulse", cfg);
    m["conventions"]["scale_formula"] = to_string(cfg.scale);
    m["conventions"]["local_reference"] = "P1 Laplacian on Omega with natural boundary, c = 1";
    m["conventions"]["steady_criterion"] = "max over u, v of ||w^{n+1} - w^n|| / ||w^n|| in L2(Omega)";
    m["initial_data"] = {{"u0", "1 - 0.3 exp(-10 x^2)"}, {"v0", "exp(-10 x^2)"}};
    m["outputs"] = {"summary.csv"};
    m["runs"] = runs_json;
    m["complete"] = !exhausted;
    m["wall_time_s"] = clock.seconds();
    write_run_files(cfg, m);

    if (exhausted) {
        std::ostringstream msg;
        msg << "pulse " << summaries.back().label << " not steady after " << summaries.back().steps
            << " steps (last criterion " << summaries.back().final_criterion << ")";
        throw Error(Errc::max_steps_exceeded, msg.str());
    }
    return summaries;
}

DirichletProblem oracle_problem(const RunConfig& cfg)
{
    if (cfg.case_name == "zero") {
        DirichletProblem p;
        p.omega = cfg.omega;
        p.kernel = cfg.kernel.build();
        p.params = cfg.params;
        p.params.f = 0.0; // the feed is data too; with it u = v = 0 would not be a solution
        p.T = cfg.T;
        p.u0 = [](double) { return 0.0; };
        p.v0 = [](double) { return 0.0; };
        return p;
    }
    return dirichlet_problem(configured_case(cfg));
}

std::vector<OracleComparison> cmd_oracle(const RunConfig& cfg, std::ostream& log)
{
    if (cfg.mode != RunMode::oracle) {
        throw Error(Errc::invalid_argument, "oracle needs mode = oracle");
    }
    validate(cfg);
    const Clock clock;
    const DirichletProblem problem = oracle_problem(cfg);
    const std::vector<double> levels = resolved_levels(cfg);

    std::vector<OracleComparison> out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double h = levels[i];
        const double tau = cfg.tau_for(h);
        log << "oracle h=" << h << " modes=" << cfg.modes[i] << std::flush;
        const FemSolution fem = solve_fem(problem, h, tau);
        const SpectralBasis basis(problem.omega, cfg.modes[i]);
        const SpectralTrajectory spec = solve_spectral(problem, basis, tau);
        OracleComparison c{h, cfg.modes[i], tau, l2_distance(fem.mesh, fem.state.u, basis, spec.u.back()),
                           l2_distance(fem.mesh, fem.state.v, basis, spec.v.back())};
        log << "  diff_u=" << c.diff_u << " diff_v=" << c.diff_v << '\n';
        out.push_back(c);

        const std::string name = "fields_level" + std::to_string(i + 1) + ".csv";
        std::ofstream f = open_output(cfg.out / name);
        f << "x,u_fem,v_fem,u_spectral,v_spectral\n";
        for (std::size_t k = 0; k < fem.mesh.node_count(); ++k) {
            const double x = fem.mesh.node(k);
            const auto j = static_cast<Eigen::Index>(k);
            f << format_number(x) << ',' << format_number(fem.state.u(j)) << ',' << format_number(fem.state.v(j))
              << ',' << format_number(basis.reconstruct(spec.u.back(), x)) << ','
              << format_number(basis.reconstruct(spec.v.back(), x)) << '\n';
        }
    }
    {
        std::ofstream f = open_output(cfg.out / "oracle.csv");
        f << "level,h,modes,tau,diff_u,diff_v\n";
        for (std::size_t i = 0; i < out.size(); ++i) {
            f << i + 1 << ',' << format_number(out[i].h) << ',' << out[i].modes << ',' << format_number(out[i].tau)
              << ',' << format_number(out[i].diff_u) << ',' << format_number(out[i].diff_v) << '\n';
        }
    }

    json m = manifest_head("oracle", cfg);
    m["conventions"]["spectral_basis"] =
        "constant plus odd-frequency cos/sin modes, each scaled to unit L2 norm; Galerkin mass is the exact Gram matrix";
    m["conventions"]["difference_norm"] = "absolute L2(Omega) at T, 8-point Gauss per element";
    json outputs = {"oracle.csv"};
    for (std::size_t i = 0; i < out.size(); ++i) {
        outputs.push_back("fields_level" + std::to_string(i + 1) + ".csv");
    }
    m["outputs"] = outputs;
    m["wall_time_s"] = clock.seconds();
    write_run_files(cfg, m);
    return out;
}

StepperState cmd_single(const RunConfig& cfg, std::ostream& log)
{
    if (cfg.mode != RunMode::single) {
        throw Error(Errc::invalid_argument, "single needs mode = single");
    }
    validate(cfg);
    const Clock clock;

    PhysicalParams params = cfg.params;
    const Kernel kernel = scaled_kernel(cfg, params);
    const Mesh1D mesh = Mesh1D::uniform(cfg.omega, cfg.collar, cfg.h);
    const AssembledOperators ops = assemble_nonlocal(mesh, kernel, cfg.bc);
    const double tau = cfg.tau_for(cfg.h);
    const Stepper stepper(mesh, ops, params, tau);

    std::function<double(double)> u0;
    std::function<double(double)> v0;
    Sources sources;
    if (cfg.initial == "pulse") {
        u0 = pulse_u0;
        v0 = pulse_v0;
    } else if (cfg.initial == "rest") {
        u0 = [](double) { return 1.0; };
        v0 = [](double) { return 0.0; };
    } else if (cfg.initial == "zero") {
        u0 = [](double) { return 0.0; };
        v0 = [](double) { return 0.0; };
    } else if (cfg.initial == "case") {
        MmsCase c = configured_case(cfg);
        c.params = params;
        c.kernel = kernel;
        u0 = [u = c.u](double x) { return u(x, 0.0); };
        v0 = [v = c.v](double x) { return v(x, 0.0); };
        sources = make_sources(c);
    } else {
        throw Error(Errc::invalid_argument, "unknown initial data '" + cfg.initial + "' (pulse, rest, zero, case)");
    }

    log << "single: " << mesh.node_count() << " nodes, tau=" << tau << ", T=" << cfg.T << '\n';
    RunTrace trace;
    const StepperState state = run_to_time(stepper, stepper.interpolate(u0, v0), cfg.T, sources, &trace);
    write_profile_csv(cfg.out / "profile.csv", mesh, state);
    write_trace_csv(cfg.out / "trace.csv", trace);
    if (cfg.dump_matrices) {
        std::ofstream mo = open_output(cfg.out / "matrices" / "mass_omega.txt");
        write_matrix(mo, ops.mass_omega);
        std::ofstream a = open_output(cfg.out / "matrices" / "nonlocal.txt");
        write_matrix(a, ops.nonlocal);
    }

    json m = manifest_head("single", cfg);
    m["conventions"]["scale_c"] = params.scale_c;
    m["outputs"] = {"profile.csv", "trace.csv"};
    m["steps"] = state.n;
    m["energy_bound"] = trace.energy_bound;
    m["energy_bound_exceedances"] = trace.energy_bound_exceedances;
    m["wall_time_s"] = clock.seconds();
    write_run_files(cfg, m);
    return state;
}

} // namespace ngs
