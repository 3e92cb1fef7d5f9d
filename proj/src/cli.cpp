#include "pia/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pia/errors.hpp"
#include "pia/expression.hpp"
#include "pia/oracles.hpp"
#include "pia/spec_file.hpp"

namespace pia::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw InvalidArgument("cannot write '" + path + "'");
    return os;
}

struct Source {
    std::string spec_path;
    std::string oracle;
};

ProblemSpecFile load_source(const Source& src) {
    if (!src.spec_path.empty() && !src.oracle.empty()) {
        throw InvalidArgument("--spec and --oracle are mutually exclusive");
    }
    if (!src.oracle.empty()) return oracle_spec(src.oracle);
    if (!src.spec_path.empty()) return ProblemSpecFile::load(src.spec_path);
    throw InvalidArgument("one of --spec or --oracle is required");
}

std::string inputs_hash(const ProblemSpecFile& s, const std::string& extra) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(s.serialize() + extra)));
    return buf;
}

// Problem-file field responsible for a failed check.
std::string field_of(const std::string& check) {
    if (check == "sigma_floor" || check == "sigma_finite") return "coefficients.sigma";
    if (check == "alpha_floor" || check == "alpha_finite") return "coefficients.alpha";
    if (check == "mu_finite") return "coefficients.mu";
    if (check == "running_cost_finite") return "coefficients.f";
    return "coefficients.g";
}

void report_validation(const ValidationReport& rep, std::ostream& err) {
    constexpr std::size_t kShown = 10;
    for (std::size_t k = 0; k < rep.violations.size() && k < kShown; ++k) {
        const Violation& v = rep.violations[k];
        err << "error: " << field_of(v.check) << ": " << v.check << " violated at x="
            << format_real(v.x) << ", a=" << format_real(v.a) << " (observed "
            << format_real(v.observed) << ")\n";
    }
    if (rep.violations.size() > kShown) {
        err << "error: " << rep.violations.size() - kShown << " more violations\n";
    }
}

int cmd_solve(const Source& src, const std::string& out_dir, std::ostream& out,
              std::ostream& err) {
    const ProblemSpecFile spec = load_source(src);
    const ControlProblem problem = spec.build_problem();
    const ValidationReport rep = validate_problem(problem, spec.n_cells + 1, spec.pia.n_actions);
    if (!rep.passed) {
        report_validation(rep, err);
        return kError;
    }
    const GridPolicy initial = spec.build_initial_policy(problem);
    const PIAReport report = run_pia(problem, initial, spec.pia);

    fs::create_directories(out_dir);
    write_iterations_csv((fs::path(out_dir) / "iterations.csv").string(), report);
    write_value_csv((fs::path(out_dir) / "value.csv").string(), report.final_value);
    write_policy_csv((fs::path(out_dir) / "policy.csv").string(), report.final_policy);

    std::ofstream run = open_out((fs::path(out_dir) / "run.csv").string());
    run << "key,value\n";
    run << "version," << kVersion << "\n";
    run << "inputs_hash," << inputs_hash(spec, src.oracle) << "\n";
    run << "termination," << to_string(report.termination) << "\n";
    run << "converged," << (report.converged ? 1 : 0) << "\n";
    run << "iterations," << report.iterations.size() << "\n";
    run << "monotone," << (check_monotone_sequence(report) ? 1 : 0) << "\n";
    if (!src.oracle.empty()) {
        const OracleProblem oracle = oracle_by_name(src.oracle);
        double worst = 0.0;
        const Grid& g = report.final_value.grid;
        for (std::size_t i = 0; i < g.n_nodes(); ++i) {
            worst = std::max(worst,
                             std::abs(report.final_value.values[i] - oracle.exact_value(g.node(i))));
        }
        run << "oracle_sup_error," << format_real(worst) << "\n";
        out << "oracle " << src.oracle << ": sup |V - V_exact| = " << format_real(worst) << "\n";
    }
    out << "termination: " << to_string(report.termination) << " after "
        << report.iterations.size() << " iterations, final residual "
        << format_real(report.iterations.back().max_residual) << "\n";
    return report.converged ? kOk : kNotConverged;
}

struct SimOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_paths;
    std::optional<double> step;
    std::optional<double> t_max;
    std::size_t workers = 0;

    SimConfig apply(SimConfig cfg) const {
        if (seed) cfg.seed = *seed;
        if (n_paths) cfg.n_paths = *n_paths;
        if (step) cfg.step = *step;
        if (t_max) cfg.t_max = *t_max;
        cfg.workers = workers;
        cfg.validate();
        return cfg;
    }
};

int cmd_simulate(const Source& src, double x0, const std::string& policy_expr,
                 const std::string& out_dir, const SimOverrides& sim, std::ostream& out,
                 std::ostream& err) {
    const ProblemSpecFile spec = load_source(src);
    const ControlProblem problem = spec.build_problem();
    const Grid grid = spec.build_grid();
    std::optional<GridPolicy> pol;
    if (!policy_expr.empty()) {
        const Expression e = Expression::parse(policy_expr, Expression::Variables::XOnly);
        pol = GridPolicy::from(grid, [&](double x) { return e(x); });
    } else {
        const fs::path prior = fs::path(out_dir) / "policy.csv";
        if (!fs::exists(prior)) {
            err << "error: no --policy given and no prior solve output at " << prior.string()
                << "\n";
            return kError;
        }
        pol = read_policy_csv(prior.string(), grid);
    }
    check_policy(problem, *pol);

    const SimConfig cfg = sim.apply(spec.sim);
    const PayoffEstimate est = simulate_payoff(problem, *pol, x0, cfg);
    fs::create_directories(out_dir);
    write_estimate_csv((fs::path(out_dir) / "estimate.csv").string(), x0, est);
    out << "J(" << format_real(x0) << ") ~ " << format_real(est.mean) << " +/- "
        << format_real(est.std_error) << " (" << est.n_paths << " paths, truncated "
        << format_real(est.truncated_fraction) << ")\n";
    return kOk;
}

int cmd_tanaka(const Source& src, double t, const std::string& out_dir, const SimOverrides& sim,
               std::ostream& out) {
    SimConfig base = oracle_spec("example1").sim;
    if (!src.spec_path.empty() || !src.oracle.empty()) base = load_source(src).sim;
    const SimConfig cfg = sim.apply(base);
    if (t > cfg.t_max) {
        throw InvalidArgument("--t " + format_real(t) + " exceeds t_max " + format_real(cfg.t_max));
    }
    const TanakaResult r = tanaka_joint_law(t, cfg);
    fs::create_directories(out_dir);
    write_tanaka_csv((fs::path(out_dir) / "tanaka.csv").string(), r);
    out << "P(X_t>0, control=-1): pi " << format_real(r.pi.prob_estimate) << ", sigma "
        << format_real(r.sigma.prob_estimate) << " +/- " << format_real(r.sigma.std_error)
        << "; KS " << format_real(r.ks_statistic) << " (1% critical "
        << format_real(r.ks_critical_1pct) << ")\n";
    return kOk;
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_iterations_csv(const std::string& path, const PIAReport& report) {
    std::ofstream os = open_out(path);
    os << "iter,max_residual,value_min,value_max,policy_change_sup,monotone\n";
    for (const IterationRecord& r : report.iterations) {
        os << r.index << ',' << format_real(r.max_residual) << ',' << format_real(r.value_min)
           << ',' << format_real(r.value_max) << ',' << format_real(r.policy_change_sup) << ','
           << (r.monotone ? 1 : 0) << '\n';
    }
}

void write_value_csv(const std::string& path, const GridFunction& v) {
    std::ofstream os = open_out(path);
    os << "x,V\n";
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        os << format_real(v.grid.node(i)) << ',' << format_real(v.values[i]) << '\n';
    }
}

void write_policy_csv(const std::string& path, const GridPolicy& pol) {
    std::ofstream os = open_out(path);
    os << "x,a\n";
    for (std::size_t i = 0; i < pol.actions.size(); ++i) {
        os << format_real(pol.grid.node(i)) << ',' << format_real(pol.actions[i]) << '\n';
    }
}

void write_estimate_csv(const std::string& path, double x0, const PayoffEstimate& est) {
    std::ofstream os = open_out(path);
    os << "x0,mean,std_error,n_paths,truncated_fraction\n";
    os << format_real(x0) << ',' << format_real(est.mean) << ',' << format_real(est.std_error)
       << ',' << est.n_paths << ',' << format_real(est.truncated_fraction) << '\n';
}

void write_tanaka_csv(const std::string& path, const TanakaResult& r) {
    std::ofstream os = open_out(path);
    os << "construction,t,prob_estimate,std_error,ks_statistic,ks_critical_1pct\n";
    for (const JointLawEstimate* e : {&r.pi, &r.sigma}) {
        os << (e->construction == Construction::PiConstruction ? "pi" : "sigma") << ','
           << format_real(e->t) << ',' << format_real(e->prob_estimate) << ','
           << format_real(e->std_error) << ',' << format_real(r.ks_statistic) << ','
           << format_real(r.ks_critical_1pct) << '\n';
    }
}

GridPolicy read_policy_csv(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "x,a") {
        throw InvalidArgument(path + ": expected header 'x,a'");
    }
    std::vector<double> actions;
    const double tol = 1e-9 * grid.domain().width();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        double x = 0.0;
        double a = 0.0;
        const char* b = line.data();
        const char* e = line.data() + line.size();
        if (comma == std::string::npos ||
            std::from_chars(b, b + comma, x).ec != std::errc() ||
            std::from_chars(b + comma + 1, e, a).ec != std::errc()) {
            throw InvalidArgument(path + ": malformed row '" + line + "'");
        }
        const std::size_t i = actions.size();
        if (i >= grid.n_nodes() || std::abs(x - grid.node(i)) > tol) {
            throw InvalidArgument(path + ": row " + std::to_string(i + 1) +
                                  " does not match the problem grid");
        }
        actions.push_back(a);
    }
    if (actions.size() != grid.n_nodes()) {
        throw InvalidArgument(path + ": expected " + std::to_string(grid.n_nodes()) +
                              " rows, found " + std::to_string(actions.size()));
    }
    return GridPolicy(grid, std::move(actions));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Policy improvement for controlled one-dimensional killed diffusions"};
    app.require_subcommand(1);

    Source src;
    std::string out_dir = "pia_out";
    double x0 = 0.0;
    double t = 1.0;
    std::string policy_expr;
    SimOverrides sim;

    auto add_source = [&](CLI::App* sub) {
        auto* s = sub->add_option("--spec", src.spec_path, "problem file (JSON)");
        auto* o = sub->add_option("--oracle", src.oracle, "built-in problem")
                      ->check(CLI::IsMember(oracle_names()));
        s->excludes(o);
    };
    auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--seed", sim.seed, "random seed");
        sub->add_option("--n-paths", sim.n_paths, "number of paths")->check(CLI::PositiveNumber);
        sub->add_option("--step", sim.step, "time step")->check(CLI::PositiveNumber);
        sub->add_option("--workers", sim.workers, "worker threads (0 = all cores)");
    };

    CLI::App* solve = app.add_subcommand("solve", "run policy improvement and write CSV results");
    add_source(solve);
    solve->add_option("--out", out_dir, "output directory");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo payoff of a policy");
    add_source(simulate);
    simulate->add_option("--x0", x0, "starting point")->required();
    simulate->add_option("--policy", policy_expr,
                         "policy expression in x (default: policy.csv from a prior solve in --out)");
    simulate->add_option("--out", out_dir, "output directory");
    add_sim(simulate);

    CLI::App* tanaka = app.add_subcommand("tanaka", "joint-law demonstration for sgn controls");
    add_source(tanaka);
    tanaka->add_option("--t", t, "time horizon")->required()->check(CLI::PositiveNumber);
    tanaka->add_option("--t-max", sim.t_max, "hard horizon cap");
    tanaka->add_option("--out", out_dir, "output directory");
    add_sim(tanaka);

    CLI::App* spec_cmd = app.add_subcommand("spec", "print the problem file of a built-in oracle");
    spec_cmd->add_option("--oracle", src.oracle, "built-in problem")
        ->required()
        ->check(CLI::IsMember(oracle_names()));

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kError;
    }

    try {
        if (solve->parsed()) return cmd_solve(src, out_dir, out, err);
        if (simulate->parsed()) return cmd_simulate(src, x0, policy_expr, out_dir, sim, out, err);
        if (tanaka->parsed()) return cmd_tanaka(src, t, out_dir, sim, out);
        out << oracle_spec(src.oracle).serialize();
        return kOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

}  // namespace pia::cli
