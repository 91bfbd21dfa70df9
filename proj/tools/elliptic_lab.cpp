// elliptic-lab: evaluate A(p, q), verify its invariance and the identities
// behind it, and evaluate the Hall-geometry factor.
//
// Exit codes: 0 success, 1 failed verification or unconverged quadrature,
// 2 bad input (domain violation, unparsable flag, unwritable output).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elliptic_lab/elliptic.hpp"
#include "elliptic_lab/hall.hpp"
#include "elliptic_lab/identity.hpp"
#include "elliptic_lab/output.hpp"

namespace {

using namespace elliptic_lab;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

/// Bad user input; the message names the offending flag.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Options
{
    double p = 0.5;
    double q = 0.5;
    std::string route = "all";
    double tol = -1.0; // < 0: per-command default
    std::string format = "text";
    std::string out = "-";
    double lambda_f = std::sqrt(2.0);
    double lambda_p = std::sqrt(2.0);
    int p_steps = 9;
    int q_steps = 9;
    int samples = 5;
    unsigned threads = 0;
    std::string config;
};

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("--config: cannot read '" + path + "'");
    std::map<std::string, std::string> entries;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("--config: line " + std::to_string(number) + " is not key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0)
            key.erase(0, 2);
        entries[key] = trim(line.substr(eq + 1));
    }
    return entries;
}

// Fills options of `leaf` that were not given on the command line.
void apply_config(CLI::App& leaf, const std::map<std::string, std::string>& entries)
{
    for (const auto& [key, value] : entries) {
        CLI::Option* opt = leaf.get_option_no_throw("--" + key);
        if (opt == nullptr || opt->count() > 0)
            continue;
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("--" + key + " (from config): " + e.what());
        }
    }
}

Format parse_format(const std::string& name, bool allow_text = true)
{
    if (name == "json")
        return Format::json;
    if (name == "csv")
        return Format::csv;
    if (name == "text" && allow_text)
        return Format::text;
    throw UsageError("--format: unknown format '" + name + "'");
}

void require_unit_open(double value, const char* flag)
{
    if (!(value > 0.0 && value < 1.0)) {
        std::ostringstream msg;
        msg << flag << " must lie in (0, 1), got " << format_real(value);
        throw UsageError(msg.str());
    }
}

void require_positive(double value, const char* flag)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << flag << " must be positive, got " << format_real(value);
        throw UsageError(msg.str());
    }
}

double tolerance(const Options& o, double fallback)
{
    if (o.tol < 0.0)
        return fallback;
    require_positive(o.tol, "--tol");
    return o.tol;
}

HallInput hall_input(const Options& o)
{
    require_positive(o.lambda_f, "--lambda-f");
    require_positive(o.lambda_p, "--lambda-p");
    try {
        (void)invert_lambda_ratio(o.lambda_f);
    } catch (const std::domain_error& e) {
        throw UsageError(std::string("--lambda-f: ") + e.what());
    }
    try {
        (void)solve_modulus(lambda_p_ratio, o.lambda_p, false);
    } catch (const std::domain_error& e) {
        throw UsageError(std::string("--lambda-p: ") + e.what());
    }
    return HallInput(o.lambda_f, o.lambda_p);
}

ParamPair param_pair(const Options& o)
{
    require_unit_open(o.p, "--p");
    require_unit_open(o.q, "--q");
    return ParamPair(o.p, o.q);
}

// ---------------------------------------------------------------- commands

int run_a(const Options& o)
{
    const ParamPair pair = param_pair(o);
    const Format format = parse_format(o.format);
    std::vector<Route> routes;
    if (o.route == "all") {
        routes.assign(all_routes.begin(), all_routes.end());
    } else {
        for (Route r : all_routes)
            if (route_name(r) == o.route)
                routes.push_back(r);
        if (routes.empty())
            throw UsageError("--route: unknown route '" + o.route + "'");
    }
    QuadratureSpec spec;
    if (o.tol >= 0.0)
        spec.abs_tol = spec.rel_tol = tolerance(o, 1e-12);

    OutputRecord record;
    record.command = "a";
    record.inputs = {{"p", o.p}, {"q", o.q}, {"route", o.route}, {"tol", spec.rel_tol}};
    std::vector<RouteReport> reports;
    bool converged = true;
    for (Route r : routes) {
        const Estimate est = a_route(r, pair, spec);
        reports.push_back({r, est.value, est.error_bound, est.converged});
        converged = converged && est.converged;
        record.outputs.emplace_back(std::string(route_name(r)), est.value);
        record.error_bounds.emplace_back(std::string(route_name(r)), est.error_bound);
    }
    if (reports.size() > 1)
        record.outputs.emplace_back("spread", route_spread(reports));
    record.outputs.emplace_back("converged", converged);
    write_record(std::cout, record, format);
    return converged ? exit_ok : exit_failed;
}

int run_verify_invariance(const Options& o)
{
    const ParamPair pair = param_pair(o);
    const Format format = parse_format(o.format);
    const double tol = tolerance(o, 1e-9);
    const InvarianceReport r = verify_invariance(pair, tol);

    OutputRecord record;
    record.command = "verify invariance";
    record.inputs = {{"p", o.p}, {"q", o.q}, {"tol", tol}};
    record.outputs = {{"p_comp", pair.p_comp()}, {"q_comp", pair.q_comp()}, {"a_pq", r.a_pq},
                      {"a_pcqc", r.a_pcqc}, {"abs_diff", r.abs_diff}, {"tolerance", r.tolerance},
                      {"converged", r.converged}};
    record.error_bounds = {{"a_pq+a_pcqc", r.error_bound}};
    record.pass = r.pass;
    write_record(std::cout, record, format);
    return r.pass ? exit_ok : exit_failed;
}

int run_verify_chain(const Options& o)
{
    const ParamPair pair = param_pair(o);
    const Format format = parse_format(o.format);
    const double tol = tolerance(o, 1e-9);
    if (o.samples < 1)
        throw UsageError("--samples must be >= 1");
    ChainTolerances tols;
    tols.identity = tol;
    tols.addition = std::max(tol, 1e-8);
    const ChainReport report = verify_proof_chain(pair, o.samples, {}, tols);

    OutputRecord record;
    record.command = "verify chain";
    record.inputs = {{"p", o.p}, {"q", o.q}, {"samples", static_cast<long>(o.samples)}, {"tol", tol}};
    for (const ChainEntry& e : report.entries) {
        record.outputs.emplace_back(e.identity_id + ".lhs", e.lhs);
        record.outputs.emplace_back(e.identity_id + ".rhs", e.rhs);
        record.outputs.emplace_back(e.identity_id + ".abs_diff", e.abs_diff);
        record.outputs.emplace_back(e.identity_id + ".pass", e.pass);
        if (!e.diagnostic.empty())
            record.outputs.emplace_back(e.identity_id + ".diagnostic", e.diagnostic);
        record.error_bounds.emplace_back(e.identity_id, e.tolerance);
    }
    record.pass = report.all_pass();
    write_record(std::cout, record, format);
    return report.all_pass() ? exit_ok : exit_failed;
}

int run_verify_hall(const Options& o)
{
    const HallInput input = hall_input(o);
    const Format format = parse_format(o.format);
    const double tol = tolerance(o, 1e-8);
    const InvarianceReport r = verify_device_symmetry(input, tol);

    OutputRecord record;
    record.command = "verify hall-symmetry";
    record.inputs = {{"lambda_f", o.lambda_f}, {"lambda_p", o.lambda_p}, {"tol", tol}};
    record.outputs = {{"normalized", r.a_pq}, {"normalized_image", r.a_pcqc},
                      {"abs_diff", r.abs_diff}, {"tolerance", r.tolerance},
                      {"converged", r.converged}};
    record.error_bounds = {{"normalized+normalized_image", r.error_bound}};
    record.pass = r.pass;
    write_record(std::cout, record, format);
    return r.pass ? exit_ok : exit_failed;
}

int run_hall_g(const Options& o)
{
    const HallInput input = hall_input(o);
    const Format format = parse_format(o.format);
    QuadratureSpec spec;
    if (o.tol >= 0.0)
        spec.abs_tol = spec.rel_tol = tolerance(o, 1e-12);
    const HallResult r = hall_g(input, spec);

    OutputRecord record;
    record.command = "hall g";
    record.inputs = {{"lambda_f", o.lambda_f}, {"lambda_p", o.lambda_p}, {"tol", spec.rel_tol}};
    record.outputs = {{"f", input.f().k()}, {"p", input.p().k()}, {"g", r.g},
                      {"normalized", r.normalized}, {"converged", r.converged}};
    record.error_bounds = {{"g", r.error_bound}};
    write_record(std::cout, record, format);
    return r.converged ? exit_ok : exit_failed;
}

int run_sweep(const Options& o)
{
    if (o.p_steps < 2)
        throw UsageError("--p-steps must be >= 2");
    if (o.q_steps < 2)
        throw UsageError("--q-steps must be >= 2");
    const Format format = parse_format(o.format == "text" ? "csv" : o.format, false);
    const double tol = tolerance(o, 1e-9);

    std::ofstream file;
    if (o.out != "-") {
        file.open(o.out, std::ios::out | std::ios::trunc);
        if (!file)
            throw UsageError("--out: cannot write '" + o.out + "'");
    }
    std::ostream& out = o.out == "-" ? std::cout : file;

    const auto grid = invariance_grid(linspace(0.1, 0.9, o.p_steps), linspace(0.1, 0.9, o.q_steps),
                                      tol, {}, o.threads);
    if (format == Format::json)
        write_sweep_json(out, grid);
    else
        write_sweep_csv(out, grid);
    out.flush();
    if (!out)
        throw UsageError("--out: write to '" + o.out + "' failed");
    for (const GridPoint& point : grid)
        if (!point.report.pass)
            return exit_failed;
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Elliptic-integral identity lab: A(p,q) routes, invariance checks, Hall factor"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", o.config, "flat key = value defaults (env ELLIPTIC_LAB_CONFIG)");

    auto add_pq = [&o](CLI::App* cmd) {
        cmd->add_option("--p", o.p, "p in (0,1)");
        cmd->add_option("--q", o.q, "q in (0,1)");
    };
    auto add_lambdas = [&o](CLI::App* cmd) {
        cmd->add_option("--lambda-f", o.lambda_f, "output resistance ratio lambda_f > 0");
        cmd->add_option("--lambda-p", o.lambda_p, "input resistance ratio lambda_p > 0");
    };
    auto add_common = [&o](CLI::App* cmd) {
        cmd->add_option("--tol", o.tol, "tolerance");
        cmd->add_option("--format", o.format, "json | csv | text");
    };

    CLI::App* a = app.add_subcommand("a", "evaluate A(p,q)");
    add_pq(a);
    a->add_option("--route", o.route, "direct | theta | lemma | final | all");
    add_common(a);

    CLI::App* verify = app.add_subcommand("verify", "verify an identity");
    verify->require_subcommand(1);
    CLI::App* invariance = verify->add_subcommand("invariance", "A(p,q) = A(p',q')");
    add_pq(invariance);
    add_common(invariance);
    CLI::App* chain = verify->add_subcommand("chain", "every identity of the derivation");
    add_pq(chain);
    chain->add_option("--samples", o.samples, "U samples for the addition formula");
    add_common(chain);
    CLI::App* hall_sym = verify->add_subcommand("hall-symmetry", "G/sqrt(lf lp) under lambda -> 2/lambda");
    add_lambdas(hall_sym);
    add_common(hall_sym);

    CLI::App* hall = app.add_subcommand("hall", "Hall-geometry factor");
    hall->require_subcommand(1);
    CLI::App* hall_g_cmd = hall->add_subcommand("g", "evaluate G(lambda_f, lambda_p)");
    add_lambdas(hall_g_cmd);
    add_common(hall_g_cmd);

    CLI::App* sweep = app.add_subcommand("sweep", "invariance grid over linspace(0.1, 0.9)");
    sweep->add_option("--p-steps", o.p_steps, "grid points in p (>= 2)");
    sweep->add_option("--q-steps", o.q_steps, "grid points in q (>= 2)");
    sweep->add_option("--out", o.out, "output file, - for stdout");
    sweep->add_option("--threads", o.threads, "worker threads, 0 = hardware");
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        CLI::App* leaf = &app;
        while (!leaf->get_subcommands().empty())
            leaf = leaf->get_subcommands().front();

        std::string config_path = o.config;
        if (config_path.empty())
            if (const char* env = std::getenv("ELLIPTIC_LAB_CONFIG"); env && *env)
                config_path = env;
        if (!config_path.empty())
            apply_config(*leaf, read_config(config_path));

        if (leaf == a)
            return run_a(o);
        if (leaf == invariance)
            return run_verify_invariance(o);
        if (leaf == chain)
            return run_verify_chain(o);
        if (leaf == hall_sym)
            return run_verify_hall(o);
        if (leaf == hall_g_cmd)
            return run_hall_g(o);
        if (leaf == sweep)
            return run_sweep(o);
        std::cerr << "error: no command\n";
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const EvaluationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failed;
    }
}
