#include "ngs/config.hpp"

#include "ngs/error.hpp"
#include "ngs/mms.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <type_traits>
#include <set>
#include <sstream>

namespace ngs {

namespace pt = boost::property_tree;

Kernel KernelConfig::build() const { return build_with_a(a); }

Kernel KernelConfig::build_with_a(double a_value) const
{
    if (type == "gaussian") {
        return Kernel::gaussian();
    }
    if (type == "exponential") {
        return Kernel::exponential();
    }
    if (type == "truncated_growing_exp") {
        return Kernel::truncated_growing_exp(c, R);
    }
    if (type == "dispersal_exp") {
        return Kernel::dispersal_exp(a_value, R);
    }
    throw Error(Errc::invalid_argument, "unknown kernel type '" + type + "'");
}

KernelConfig KernelConfig::from(const Kernel& kernel)
{
    KernelConfig k;
    const auto& v = kernel.variant();
    if (std::holds_alternative<GaussianKernel>(v)) {
        k.type = "gaussian";
    } else if (std::holds_alternative<ExponentialKernel>(v)) {
        k.type = "exponential";
    } else if (const auto* t = std::get_if<TruncatedGrowingExpKernel>(&v)) {
        k.type = "truncated_growing_exp";
        k.c = t->c;
        k.R = t->R;
    } else if (const auto* d = std::get_if<DispersalExpKernel>(&v)) {
        k.type = "dispersal_exp";
        k.a = d->a;
        k.R = d->R;
    }
    return k;
}

const char* to_string(RunMode mode) noexcept
{
    switch (mode) {
    case RunMode::mms: return "mms";
    case RunMode::pulse: return "pulse";
    case RunMode::oracle: return "oracle";
    case RunMode::single: return "single";
    }
    return "single";
}

const char* to_string(ScaleMode mode) noexcept
{
    switch (mode) {
    case ScaleMode::none: return "none";
    case ScaleMode::paper_C: return "paper_C";
    case ScaleMode::derived_C: return "derived_C";
    }
    return "none";
}

RunMode parse_mode(const std::string& s)
{
    if (s == "mms" || s == "converge") {
        return RunMode::mms;
    }
    if (s == "pulse") {
        return RunMode::pulse;
    }
    if (s == "oracle") {
        return RunMode::oracle;
    }
    if (s == "single") {
        return RunMode::single;
    }
    throw Error(Errc::invalid_argument, "unknown run mode '" + s + "'");
}

double RunConfig::tau_for(double level_h) const
{
    if (tau_rule.empty() || tau_rule == "fixed") {
        return tau;
    }
    if (tau_rule.back() == 'h') {
        const std::string factor = tau_rule.substr(0, tau_rule.size() - 1);
        return (factor.empty() ? 1.0 : std::stod(factor)) * level_h;
    }
    if (tau_rule.rfind("h/", 0) == 0) {
        return level_h / std::stod(tau_rule.substr(2));
    }
    throw Error(Errc::invalid_argument, "unrecognised tau rule '" + tau_rule + "' (use fixed, <k>h or h/<k>)");
}

namespace {

RunConfig from_case(RunConfig cfg, const MmsCase& c)
{
    cfg.case_name = c.name;
    cfg.bc = c.bc;
    cfg.omega = c.omega;
    cfg.collar = c.collar;
    cfg.kernel = KernelConfig::from(c.kernel);
    cfg.params = c.params;
    cfg.T = c.T;
    cfg.h = c.levels.front();
    cfg.levels = c.levels;
    cfg.tau_rule = c.name == "dirichlet1" ? "2h" : "h/5";
    cfg.scale = ScaleMode::none;
    cfg.initial = "case";
    return cfg;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        out.push_back(std::stod(item));
    }
    return out;
}

ScaleMode parse_scale(const std::string& s)
{
    if (s == "none") {
        return ScaleMode::none;
    }
    if (s == "paper_C" || s == "paper") {
        return ScaleMode::paper_C;
    }
    if (s == "derived_C" || s == "derived") {
        return ScaleMode::derived_C;
    }
    throw Error(Errc::invalid_argument, "unknown scale mode '" + s + "'");
}

BcMode parse_bc(const std::string& s)
{
    if (s == "dirichlet") {
        return BcMode::Dirichlet;
    }
    if (s == "neumann") {
        return BcMode::Neumann;
    }
    throw Error(Errc::invalid_argument, "unknown boundary constraint '" + s + "'");
}

bool parse_bool(const std::string& s)
{
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw Error(Errc::invalid_argument, "expected a boolean, got '" + s + "'");
}

void apply(RunConfig& cfg, const std::string& section, const std::string& key, const std::string& value)
{
    const std::string k = section + "." + key;
    try {
        if (k == "run.mode") {
            cfg.mode = parse_mode(value);
        } else if (k == "run.case") {
            cfg = from_case(cfg, find_case(value));
        } else if (k == "run.out") {
            cfg.out = value;
        } else if (k == "run.T") {
            cfg.T = std::stod(value);
        } else if (k == "run.steady_tol") {
            cfg.steady_tol = std::stod(value);
        } else if (k == "run.max_steps") {
            cfg.max_steps = std::stoul(value);
        } else if (k == "run.a_values") {
            cfg.a_values = parse_list(value);
        } else if (k == "run.local_reference") {
            cfg.local_reference = parse_bool(value);
        } else if (k == "run.initial") {
            cfg.initial = value;
        } else if (k == "run.scale") {
            cfg.scale = parse_scale(value);
        } else if (k == "run.dump_matrices") {
            cfg.dump_matrices = parse_bool(value);
        } else if (k == "domain.lo") {
            cfg.omega.lo = std::stod(value);
        } else if (k == "domain.hi") {
            cfg.omega.hi = std::stod(value);
        } else if (k == "domain.collar") {
            cfg.collar = std::stod(value);
        } else if (k == "domain.bc") {
            cfg.bc = parse_bc(value);
        } else if (k == "kernel.type") {
            cfg.kernel.type = value;
        } else if (k == "kernel.a") {
            cfg.kernel.a = std::stod(value);
        } else if (k == "kernel.R") {
            cfg.kernel.R = std::stod(value);
        } else if (k == "kernel.c") {
            cfg.kernel.c = std::stod(value);
        } else if (k == "params.d_u") {
            cfg.params.d_u = std::stod(value);
        } else if (k == "params.d_v") {
            cfg.params.d_v = std::stod(value);
        } else if (k == "params.f") {
            cfg.params.f = std::stod(value);
        } else if (k == "params.kappa") {
            cfg.params.kappa = std::stod(value);
        } else if (k == "grid.h") {
            cfg.h = std::stod(value);
        } else if (k == "grid.levels") {
            cfg.levels = parse_list(value);
        } else if (k == "grid.level_count") {
            cfg.level_count = std::stoul(value);
        } else if (k == "grid.modes") {
            cfg.modes.clear();
            for (double m : parse_list(value)) {
                cfg.modes.push_back(static_cast<std::size_t>(m));
            }
        } else if (k == "grid.tau") {
            cfg.tau = std::stod(value);
        } else if (k == "grid.tau_rule") {
            cfg.tau_rule = value;
        } else {
            throw Error(Errc::invalid_argument, "unknown configuration key '" + k + "'");
        }
    } catch (const std::logic_error&) {
        throw Error(Errc::invalid_argument, "bad value '" + value + "' for configuration key '" + k + "'");
    }
}

} // namespace

RunConfig default_config(RunMode mode, const std::string& case_name)
{
    RunConfig cfg;
    cfg.mode = mode;
    switch (mode) {
    case RunMode::mms:
        return from_case(cfg, find_case(case_name.empty() ? "dirichlet1" : case_name));
    case RunMode::oracle:
        cfg = from_case(cfg, find_case(case_name.empty() ? "dirichlet1" : case_name));
        cfg.levels = {0.05, 0.025, 0.0125};
        cfg.modes = {11, 21, 41};
        cfg.tau_rule = "fixed";
        cfg.tau = 0.025;
        return cfg;
    case RunMode::pulse:
    case RunMode::single:
        if (!case_name.empty()) {
            return from_case(cfg, find_case(case_name));
        }
        cfg.bc = BcMode::Neumann;
        cfg.omega = {-40.0, 40.0};
        cfg.collar = 5.0;
        cfg.kernel.type = "dispersal_exp";
        cfg.kernel.a = 3.0;
        cfg.kernel.R = 5.0;
        cfg.params = {.d_u = 1.0, .d_v = 0.01, .f = 0.01, .kappa = 0.0977, .scale_c = 1.0};
        cfg.scale = ScaleMode::paper_C;
        cfg.h = 0.05;
        cfg.tau = 0.01;
        cfg.tau_rule = "fixed";
        cfg.steady_tol = 1e-5;
        cfg.initial = "pulse";
        cfg.T = 1.0;
        return cfg;
    }
    return cfg;
}

RunConfig parse_config(const std::string& text, RunConfig base)
{
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(Errc::invalid_argument, std::string("config parse error: ") + e.what());
    }
    static const std::set<std::string> sections{"run", "domain", "kernel", "params", "grid"};
    // [run] first so that `case` lays down defaults before other sections override them
    if (auto run = tree.get_child_optional("run")) {
        if (auto c = run->get_optional<std::string>("case")) {
            apply(base, "run", "case", *c);
        }
        if (auto m = run->get_optional<std::string>("mode")) {
            apply(base, "run", "mode", *m);
        }
    }
    for (const auto& [section, child] : tree) {
        if (!sections.contains(section)) {
            throw Error(Errc::invalid_argument, "unknown configuration section [" + section + "]");
        }
        for (const auto& [key, value] : child) {
            if (section == "run" && (key == "case" || key == "mode")) {
                continue;
            }
            apply(base, section, key, value.data());
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::invalid_argument, "cannot read config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

namespace {

std::string num(double x)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << x;
    return os.str();
}

template <class T>
std::string join(const std::vector<T>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += num(xs[i]);
        } else {
            out += std::to_string(xs[i]);
        }
    }
    return out;
}

} // namespace

std::string to_ini(const RunConfig& cfg)
{
    std::ostringstream os;
    os << "[run]\n";
    os << "mode = " << to_string(cfg.mode) << '\n';
    if (!cfg.case_name.empty()) {
        os << "case = " << cfg.case_name << '\n';
    }
    os << "T = " << num(cfg.T) << '\n';
    os << "steady_tol = " << num(cfg.steady_tol) << '\n';
    os << "max_steps = " << cfg.max_steps << '\n';
    os << "a_values = " << join(cfg.a_values) << '\n';
    os << "local_reference = " << (cfg.local_reference ? "true" : "false") << '\n';
    os << "initial = " << cfg.initial << '\n';
    os << "scale = " << to_string(cfg.scale) << '\n';
    os << "dump_matrices = " << (cfg.dump_matrices ? "true" : "false") << '\n';
    os << "\n[domain]\n";
    os << "lo = " << num(cfg.omega.lo) << '\n';
    os << "hi = " << num(cfg.omega.hi) << '\n';
    os << "collar = " << num(cfg.collar) << '\n';
    os << "bc = " << (cfg.bc == BcMode::Dirichlet ? "dirichlet" : "neumann") << '\n';
    os << "\n[kernel]\n";
    os << "type = " << cfg.kernel.type << '\n';
    os << "a = " << num(cfg.kernel.a) << '\n';
    os << "R = " << num(cfg.kernel.R) << '\n';
    os << "c = " << num(cfg.kernel.c) << '\n';
    os << "\n[params]\n";
    os << "d_u = " << num(cfg.params.d_u) << '\n';
    os << "d_v = " << num(cfg.params.d_v) << '\n';
    os << "f = " << num(cfg.params.f) << '\n';
    os << "kappa = " << num(cfg.params.kappa) << '\n';
    os << "\n[grid]\n";
    os << "h = " << num(cfg.h) << '\n';
    if (!cfg.levels.empty()) {
        os << "levels = " << join(cfg.levels) << '\n';
    }
    os << "level_count = " << cfg.level_count << '\n';
    if (!cfg.modes.empty()) {
        os << "modes = " << join(cfg.modes) << '\n';
    }
    os << "tau = " << num(cfg.tau) << '\n';
    os << "tau_rule = " << cfg.tau_rule << '\n';
    return os.str();
}

std::vector<double> resolved_levels(const RunConfig& cfg)
{
    std::vector<double> levels = cfg.levels.empty() ? std::vector<double>{cfg.h} : cfg.levels;
    if (cfg.level_count > 0 && cfg.level_count < levels.size()) {
        levels.resize(cfg.level_count);
    }
    return levels;
}

namespace {

void check_time_division(double T, double tau)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw Error(Errc::tau_not_dividing_time, "time step must be positive");
    }
    const double ratio = T / tau;
    if (T < 0.0 || std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream msg;
        msg << "time step " << tau << " does not divide final time " << T;
        throw Error(Errc::tau_not_dividing_time, msg.str());
    }
}

} // namespace

void validate(const RunConfig& cfg)
{
    if (cfg.mode == RunMode::mms || (cfg.mode == RunMode::oracle && cfg.case_name != "zero")) {
        find_case(cfg.case_name);
    }
    if (cfg.mode == RunMode::single && cfg.initial == "case") {
        find_case(cfg.case_name);
    }
    validate(cfg.params);

    const Kernel kernel = cfg.kernel.build();
    if (cfg.bc == BcMode::Neumann) {
        if (!kernel.has_finite_horizon()) {
            throw Error(Errc::infinite_horizon_neumann, "Neumann constraints need a kernel with finite horizon");
        }
        if (kernel.horizon() > cfg.collar * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "kernel horizon " << kernel.horizon() << " exceeds collar width " << cfg.collar;
            throw Error(Errc::horizon_exceeds_collar, msg.str());
        }
    } else if (cfg.collar != 0.0) {
        throw Error(Errc::invalid_argument, "Dirichlet runs use collar = 0");
    }
    if (cfg.mode == RunMode::pulse) {
        if (cfg.kernel.type != "dispersal_exp" || cfg.bc != BcMode::Neumann) {
            throw Error(Errc::invalid_argument, "pulse runs use the dispersal kernel under Neumann constraints");
        }
        for (double a : cfg.a_values) {
            if (!(a > 0.0)) {
                throw Error(Errc::negative_rate, "dispersal range a must be positive");
            }
        }
        if (!(cfg.steady_tol > 0.0)) {
            throw Error(Errc::invalid_argument, "steady tolerance must be positive");
        }
    }
    if (cfg.mode == RunMode::oracle && cfg.bc != BcMode::Dirichlet) {
        throw Error(Errc::invalid_argument, "oracle comparisons are Dirichlet only");
    }

    const std::vector<double> levels = cfg.mode == RunMode::mms || cfg.mode == RunMode::oracle
                                           ? resolved_levels(cfg)
                                           : std::vector<double>{cfg.h};
    if (cfg.mode == RunMode::oracle && cfg.modes.size() != levels.size()) {
        throw Error(Errc::invalid_argument, "oracle runs need one spectral mode count per level");
    }
    for (double h : levels) {
        check_spacing(cfg.omega, cfg.collar, h);
        if (cfg.mode != RunMode::pulse) {
            check_time_division(cfg.T, cfg.tau_for(h));
        }
    }
}

} // namespace ngs
