#include "normcyc/experiments/sweep.hpp"
#include "normcyc/measures/exact_measure.hpp"
#include "normcyc/measures/vandermonde.hpp"
#include "normcyc/nc/evaluate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

using namespace normcyc;

namespace {

void emit(const Json& j, const std::string& out)
{
    if (out.empty())
        std::cout << j.dump(2) << '\n';
    else
        save_json(out, j);
}

int bodies_validate(const std::string& file)
{
    const Body K = load_body(file);
    Json j = to_json(K);
    j["full_dimensional"] = K.full_dimensional();
    if (K.is_polytope() && K.full_dimensional()) {
        Json v = Json::array();
        for (int i = 0; i < K.dim(); ++i) v.push_back(intrinsic_volume(K, i));
        j["intrinsic_volumes"] = v;
    }
    std::cout << j.dump(2) << '\n';
    return K.full_dimensional() ? 0 : 1;
}

int measures_exact(const std::string& file, int index, double h, const std::string& out)
{
    const Body K = load_body(file);
    const auto m = exact_support_measure(K, index, h);
    Json j = to_json(m.measure);
    j["index"] = index;
    j["bound"] = m.bound;
    emit(j, out);
    return 0;
}

int measures_mc(const std::string& file, std::optional<int> index, double rho, long samples, std::uint64_t seed,
                unsigned threads, const std::string& out)
{
    const Body K = load_body(file);
    Json j;
    if (index) {
        const auto sys = vandermonde_coefficients(K.dim());
        require(*index >= 0 && *index < K.dim(), Errc::index_out_of_range, "index outside [0, n-1]");
        const auto mus = sample_at_radii(K, sys, samples, seed, threads);
        const auto lambdas = extract_support_measures(mus, sys);
        const auto totals = extract_totals(mus, sys);
        j = to_json(lambdas[std::size_t(*index)]);
        j["index"] = *index;
        j["total"] = totals.value[std::size_t(*index)];
        j["stat_error"] = totals.stat_error[std::size_t(*index)];
    }
    else {
        const auto mu = mc_local_parallel_measure(ShellSampler::make(K, rho, samples, seed), threads);
        j = to_json(mu.measure);
        j["rho"] = rho;
        j["stat_error"] = mu.stat_error;
        j["accepted"] = mu.accepted;
    }
    j["samples"] = samples;
    j["seed"] = seed;
    emit(j, out);
    return 0;
}

int dbl_command(const std::string& a, const std::string& b, bool oracle, double h, const std::string& cert_out)
{
    DiscreteMeasure mu = load_measure(a);
    DiscreteMeasure nu = load_measure(b);
    double coarse = 0;
    if (h > 0) {
        auto ca = coarsen(mu, h);
        auto cb = coarsen(nu, h);
        coarse = ca.bound + cb.bound;
        mu = std::move(ca.measure);
        nu = std::move(cb.measure);
    }
    const auto inst = DblInstance::from_measures(mu, nu);
    const auto cert = dbl_flow(inst);
    Json j = {{"dbl", cert.value}, {"atoms", inst.size()}, {"coarsening_bound", coarse}};
    int code = 0;
    if (oracle) {
        const auto lp = dbl_lp(inst);
        const double diff = std::abs(lp.value - cert.value);
        j["lp"] = lp.value;
        j["agree"] = diff <= 1e-9;
        if (diff > 1e-9) code = 1;
    }
    if (!cert_out.empty()) save_json(cert_out, to_json(cert));
    std::cout << j.dump(2) << '\n';
    return code;
}

int nc_eval(const std::string& file, const std::string& form, int level, double tol)
{
    const Body K = load_body(file);
    const auto phi = form_by_name(form, K.dim());
    const auto v = tol > 0 ? evaluate_normal_cycle_to(K, phi, tol) : evaluate_normal_cycle(K, phi, level);
    std::cout << Json{{"form", form}, {"value", v.value}, {"err_est", v.err_est}, {"level", v.level}}.dump(2) << '\n';
    return 0;
}

int sweep_run(const std::string& file, const std::string& output, std::optional<long> samples,
              std::optional<std::uint64_t> seed, std::optional<double> h, std::optional<unsigned> threads)
{
    const auto dir = std::filesystem::path(file).parent_path().string();
    Json j = load_json(file);
    if (!output.empty()) j["output"] = output;
    if (samples) j["samples"] = *samples;
    if (seed) j["seed"] = *seed;
    if (h) j["h"] = *h;
    if (threads) j["threads"] = *threads;
    const auto cfg = SweepConfig::from_json(j, dir);
    const auto report = run_sweep(cfg);
    if (cfg.output.empty()) std::cout << to_csv(report.table);
    std::cout << fit_summary(report);
    return report.passed() ? 0 : 1;
}

int sweep_fit(const std::string& file)
{
    const auto report = evaluate_table(load_table(file));
    std::cout << fit_summary(report);
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Normal cycles, support measures and Hoelder sweeps for convex bodies in R^2 and R^3"};
    app.require_subcommand(1);
    int code = 0;

    auto* bodies = app.add_subcommand("bodies", "Body files");
    bodies->require_subcommand(1);
    std::string body_file;
    auto* validate = bodies->add_subcommand("validate", "Parse a body and print its summary");
    validate->add_option("file", body_file, "Body JSON")->required();
    validate->callback([&] { code = bodies_validate(body_file); });

    auto* measures = app.add_subcommand("measures", "Support measures as atom lists");
    measures->require_subcommand(1);
    int index = 0;
    double h = 0.05;
    std::string out;
    auto* exact = measures->add_subcommand("exact", "Quadrature Lambda_i of a polytope");
    exact->add_option("body", body_file, "Body JSON")->required();
    exact->add_option("-i,--index", index, "Measure index i")->required();
    exact->add_option("--mesh", h, "Mesh size h")->check(CLI::PositiveNumber);
    exact->add_option("-o,--out", out, "Output file (stdout if omitted)");
    exact->callback([&] { code = measures_exact(body_file, index, h, out); });

    std::optional<int> mc_index;
    double rho = 1;
    long samples = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    auto* mc = measures->add_subcommand("mc", "Monte Carlo mu_{K,rho}, or Lambda_i with --index");
    mc->add_option("body", body_file, "Body JSON")->required();
    mc->add_option("-i,--index", mc_index, "Extract Lambda_i from the radii j/n");
    mc->add_option("--rho", rho, "Shell radius")->check(CLI::PositiveNumber);
    mc->add_option("--samples", samples, "Samples per radius")->check(CLI::Range(1000L, 1000000000L));
    mc->add_option("--seed", seed, "Seed");
    mc->add_option("--threads", threads, "Worker threads (0 = all cores)");
    mc->add_option("-o,--out", out, "Output file (stdout if omitted)");
    mc->callback([&] { code = measures_mc(body_file, mc_index, rho, samples, seed, threads, out); });

    std::string measure_a, measure_b, cert_out;
    bool oracle = false;
    double dbl_h = 0;
    auto* dbl_cmd = app.add_subcommand("dbl", "Bounded Lipschitz distance of two measure files");
    dbl_cmd->add_option("a", measure_a, "First measure JSON")->required();
    dbl_cmd->add_option("b", measure_b, "Second measure JSON")->required();
    dbl_cmd->add_flag("--oracle", oracle, "Cross-check the flow solver against the dense LP");
    dbl_cmd->add_option("--coarsen", dbl_h, "Coarsen both measures on a grid of this size first");
    dbl_cmd->add_option("--certificate", cert_out, "Write the certificate JSON here");
    dbl_cmd->callback([&] { code = dbl_command(measure_a, measure_b, oracle, dbl_h, cert_out); });

    auto* nc = app.add_subcommand("nc", "Normal cycle evaluation");
    nc->require_subcommand(1);
    std::string form;
    int level = 3;
    double tol = 0;
    auto* eval = nc->add_subcommand("eval", "T_K(phi) for a catalog form");
    eval->add_option("body", body_file, "Body JSON")->required();
    eval->add_option("--form", form, "perimeter2d, turning2d, zero or poly:<seed>")->required();
    eval->add_option("--level", level, "Quadrature refinement level")->check(CLI::Range(0, 12));
    eval->add_option("--tol", tol, "Refine until the error estimate is below this");
    eval->callback([&] { code = nc_eval(body_file, form, level, tol); });

    auto* sweep = app.add_subcommand("sweep", "Hoelder sweeps");
    sweep->require_subcommand(1);
    std::string config, output, report;
    std::optional<long> sweep_samples;
    std::optional<std::uint64_t> sweep_seed;
    std::optional<double> sweep_h;
    std::optional<unsigned> sweep_threads;
    auto* run = sweep->add_subcommand("run", "Run a sweep config; exit 0 only if every gate passes");
    run->add_option("config", config, "Sweep config JSON")->required();
    run->add_option("-o,--output", output, "CSV path (overrides the config)");
    run->add_option("--samples", sweep_samples, "Samples per radius");
    run->add_option("--seed", sweep_seed, "Seed");
    run->add_option("--coarsen", sweep_h, "Coarsening grid and mesh size h");
    run->add_option("--threads", sweep_threads, "Worker threads");
    run->callback([&] { code = sweep_run(config, output, sweep_samples, sweep_seed, sweep_h, sweep_threads); });
    auto* fit = sweep->add_subcommand("fit", "Refit a sweep CSV and print the gates");
    fit->add_option("report", report, "Sweep CSV")->required();
    fit->callback([&] { code = sweep_fit(report); });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return code;
}
