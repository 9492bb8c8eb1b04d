#include "normcyc/experiments/sweep.hpp"

#include "normcyc/measures/exact_measure.hpp"
#include "normcyc/measures/vandermonde.hpp"
#include "normcyc/nc/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace normcyc {

namespace {

using Row = std::vector<std::pair<std::string, double>>;

constexpr double lp_tolerance = 1e-9;

std::uint64_t mc_seed(const SweepConfig& cfg) { return CounterRng::bits(cfg.seed, 1); }
std::uint64_t replicate_seed(const SweepConfig& cfg) { return CounterRng::bits(cfg.seed, 2); }

/// Coarsened Monte Carlo Lambda_i of one body, sampled on the pair's common boxes.
struct McLambda {
    DiscreteMeasure measure;
    double coarse_bound = 0;
    double stat_error = 0;
};

/// result[b][i] for b = 0 (K), 1 (L).
std::array<std::vector<McLambda>, 2> mc_lambdas(const SweepConfig& cfg, const Body& K, const Body& L,
                                                std::uint64_t seed)
{
    const auto sys = vandermonde_coefficients(cfg.dim());
    std::array<std::vector<McMeasure>, 2> mus;
    for (int j = 0; j < sys.n; ++j) {
        const double rho = sys.radii[j];
        const auto box = common_box(K, L, rho);
        const auto sub = CounterRng::bits(seed, std::uint64_t(j));
        mus[0].push_back(mc_local_parallel_measure(ShellSampler::make(K, rho, cfg.samples, sub, box), cfg.threads));
        mus[1].push_back(mc_local_parallel_measure(ShellSampler::make(L, rho, cfg.samples, sub, box), cfg.threads));
    }
    std::array<std::vector<McLambda>, 2> out;
    for (int b = 0; b < 2; ++b) {
        const auto lambdas = extract_support_measures(mus[b], sys);
        const auto totals = extract_totals(mus[b], sys);
        for (int i = 0; i < sys.n; ++i) {
            auto c = coarsen(lambdas[i], cfg.h);
            out[b].push_back({std::move(c.measure), c.bound, totals.stat_error[i]});
        }
    }
    return out;
}

double certificate_residual(const DblCertificate& c)
{
    return std::max({c.max_violation, c.objective_residual, std::abs(c.duality_gap), c.flow_residual});
}

DblCertificate distance(const DiscreteMeasure& a, const DiscreteMeasure& b)
{
    return dbl_flow(DblInstance::from_measures(a, b));
}

std::string stem_of(const std::string& name, const std::string& suffix)
{
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0)
        return {};
    return name.substr(0, name.size() - suffix.size());
}

bool is_integer_column(const std::string& name)
{
    return name == "n" || !stem_of(name, "_ok").empty() || !stem_of(name, "_exact").empty();
}

std::string sidecar_path(const std::string& csv)
{
    return std::filesystem::path(csv).replace_extension(".json").string();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    require(bool(out), Errc::parse, "cannot write '" + path + "'");
    out << text;
}

Json fit_to_json(const LogLogFit& f)
{
    auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    return {{"slope", num(f.slope)},
            {"intercept", num(f.intercept)},
            {"max_residual", num(f.max_residual)},
            {"used", f.used},
            {"excluded", f.excluded}};
}

Json report_to_json(const SweepReport& r)
{
    Json fits = Json::array();
    for (const auto& f : r.fits)
        fits.push_back({{"column", f.column},
                        {"full", fit_to_json(f.full)},
                        {"lower_half", fit_to_json(f.lower)},
                        {"ratio_column", f.ratio_column},
                        {"max_ratio", f.max_ratio},
                        {"stability", std::isfinite(f.stability) ? Json(f.stability) : Json(nullptr)},
                        {"stable", f.stable},
                        {"slope_gated", f.slope_gated},
                        {"slope_ok", f.slope_ok}});
    return {{"fits", fits},
            {"oracle_ok", r.oracle_ok},
            {"marginal_ok", r.marginal_ok},
            {"ratios_finite", r.ratios_finite},
            {"passed", r.passed()}};
}

Json environment()
{
    Json env;
#if defined(__VERSION__)
    env["compiler"] = __VERSION__;
#endif
    env["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                   std::to_string(EIGEN_MINOR_VERSION);
    env["cplusplus"] = long(__cplusplus);
    return env;
}

void write_outputs(const SweepConfig& cfg, const SweepTable& table, const SweepReport* report, const std::string& error)
{
    if (cfg.output.empty()) return;
    write_text(cfg.output, to_csv(table));
    Json side;
    side["config"] = cfg.to_json();
    side["seeds"] = {{"seed", cfg.seed}, {"mc", mc_seed(cfg)}, {"replicate", replicate_seed(cfg)}};
    side["environment"] = environment();
    side["rows"] = table.rows.size();
    if (report) side["report"] = report_to_json(*report);
    if (!error.empty()) side["error"] = error;
    save_json(sidecar_path(cfg.output), side);
}

} // namespace

void SweepConfig::validate() const
{
    require(!deltas.empty(), Errc::invalid_argument, "sweep needs at least one delta");
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        require(deltas[k] > 0 && std::isfinite(deltas[k]), Errc::invalid_argument, "deltas must be positive");
        require(k == 0 || deltas[k] < deltas[k - 1], Errc::invalid_argument, "deltas must be strictly decreasing");
    }
    for (int i : measures)
        require(i >= 0 && i < dim(), Errc::index_out_of_range, "measure index outside [0, n-1]");
    for (const auto& f : forms) form_by_name(f, dim());
    require(samples >= 10000, Errc::precondition, "sweep needs at least 10^4 samples per radius");
    require(h > 0 && std::isfinite(h), Errc::invalid_argument, "coarsening h must be positive");
    require(quadrature_level >= 0 && quadrature_level <= 12, Errc::invalid_argument, "quadrature level outside [0, 12]");
}

SweepConfig SweepConfig::from_json(const Json& j, const std::string& dir)
{
    require(j.is_object(), Errc::parse, "sweep config must be a JSON object");
    SweepConfig cfg;
    try {
        cfg.scenario = parse_scenario(j.at("scenario").get<std::string>());
        if (j.contains("base"))
            cfg.base = body_from_json(j["base"]);
        else if (j.contains("base_file")) {
            cfg.base_file = j["base_file"].get<std::string>();
            const auto p = std::filesystem::path(dir) / cfg.base_file;
            cfg.base = load_body(p.string());
        }
        cfg.deltas = j.at("deltas").get<std::vector<double>>();
        for (int i = 0; i < cfg.dim(); ++i) cfg.measures.push_back(i);
        if (j.contains("measures")) cfg.measures = j["measures"].get<std::vector<int>>();
        if (j.contains("forms")) cfg.forms = j["forms"].get<std::vector<std::string>>();
        cfg.samples = j.value("samples", cfg.samples);
        cfg.h = j.value("h", cfg.h);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.output = j.value("output", cfg.output);
        cfg.mc = j.value("mc", cfg.mc);
        cfg.quadrature_level = j.value("quadrature_level", cfg.quadrature_level);
        cfg.threads = j.value("threads", cfg.threads);
    }
    catch (const Json::exception& e) {
        throw Error(Errc::parse, std::string("sweep config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

Json SweepConfig::to_json() const
{
    Json j;
    j["scenario"] = normcyc::to_string(scenario);
    j["base"] = normcyc::to_json(base);
    if (!base_file.empty()) j["base_file"] = base_file;
    j["deltas"] = deltas;
    j["measures"] = measures;
    j["forms"] = forms;
    j["samples"] = samples;
    j["h"] = h;
    j["seed"] = seed;
    j["output"] = output;
    j["mc"] = mc;
    j["quadrature_level"] = quadrature_level;
    return j;
}

long SweepTable::column(const std::string& name) const
{
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) return long(c);
    return -1;
}

std::vector<double> SweepTable::values(const std::string& name) const
{
    const long c = column(name);
    require(c >= 0, Errc::invalid_argument, "no column '" + name + "'");
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r[std::size_t(c)]);
    return v;
}

bool SweepReport::passed() const
{
    if (!oracle_ok || !marginal_ok || !ratios_finite) return false;
    for (const auto& f : fits)
        if (!f.stable || !f.slope_ok) return false;
    return true;
}

Row sweep_row(const SweepConfig& cfg, const GeneratedPair& pair, double delta)
{
    const int n = cfg.dim();
    const Body& K = pair.K;
    const Body& L = pair.L;
    const double dH = pair.d_H;
    Row row{{"delta", delta}, {"d_H", dH}, {"d_H_err", pair.d_H_error}, {"parameter", pair.parameter}, {"n", n}};

    const bool exact = K.is_polytope() && L.is_polytope();
    const bool run_mc = cfg.mc || !exact;
    std::array<std::vector<McLambda>, 2> mc, rep;
    if (run_mc) mc = mc_lambdas(cfg, K, L, mc_seed(cfg));
    if (run_mc && exact) rep = mc_lambdas(cfg, K, L, replicate_seed(cfg));

    std::array<DiscreteMeasure, 2> top;
    double top_dbl = 0;
    bool have_top = false;
    for (int i : cfg.measures) {
        const std::string c = "L" + std::to_string(i);
        DiscreteMeasure a, b;
        double err = 0;
        if (exact) {
            auto ek = exact_support_measure(K, i, cfg.h);
            auto el = exact_support_measure(L, i, cfg.h);
            err = ek.bound + el.bound + lp_tolerance;
            a = std::move(ek.measure);
            b = std::move(el.measure);
        }
        else {
            const auto& mk = mc[0][std::size_t(i)];
            const auto& ml = mc[1][std::size_t(i)];
            err = mk.coarse_bound + ml.coarse_bound + mk.stat_error + ml.stat_error + lp_tolerance;
            a = mk.measure;
            b = ml.measure;
        }
        const auto cert = distance(a, b);
        const double scale = std::sqrt(dH);
        row.insert(row.end(), {{c + "_dbl", cert.value},
                               {c + "_err", err},
                               {c + "_exact", exact ? 1.0 : 0.0},
                               {c + "_cert", certificate_residual(cert)},
                               {c + "_ratio", cert.value / scale},
                               {c + "_ratio_err", err / scale}});
        if (exact && run_mc) {
            const auto& mk = mc[0][std::size_t(i)];
            const auto& ml = mc[1][std::size_t(i)];
            const double d_mc = distance(mk.measure, ml.measure).value;
            const double stat = distance(mk.measure, rep[0][std::size_t(i)].measure).value +
                                distance(ml.measure, rep[1][std::size_t(i)].measure).value;
            const double tol = err + mk.coarse_bound + ml.coarse_bound + stat + lp_tolerance;
            row.insert(row.end(), {{c + "_mc", d_mc},
                                   {c + "_mc_tol", tol},
                                   {c + "_oracle_ok", std::abs(d_mc - cert.value) <= tol ? 1.0 : 0.0}});
        }
        if (i == n - 1) {
            top = {std::move(a), std::move(b)};
            top_dbl = cert.value;
            have_top = true;
        }
    }

    if (have_top) {
        const auto sk = u_marginal(top[0], 2.0);
        const auto sl = u_marginal(top[1], 2.0);
        const double d = distance(sk, sl).value;
        const auto diff = merged(linear_combination({&sk, &sl}, {1.0, -1.0}));
        row.insert(row.end(), {{"S_dbl", d},
                               {"S_tv", diff.variation()},
                               {"S_marginal_ok", d <= 2 * top_dbl + lp_tolerance ? 1.0 : 0.0}});
    }

    const double root_scale = std::pow(dH, 1.0 / (2 * n + 1));
    for (const auto& name : cfg.forms) {
        const auto phi = form_by_name(name, n);
        const auto tk = evaluate_normal_cycle(K, phi, cfg.quadrature_level);
        const auto tl = evaluate_normal_cycle(L, phi, cfg.quadrature_level);
        const double diff = std::abs(tk.value - tl.value);
        // Roundoff floor of the quadrature sums.
        const double err = tk.err_est + tl.err_est + 1e-12 * (1 + std::abs(tk.value) + std::abs(tl.value));
        const std::string c = "T_" + name;
        row.insert(row.end(), {{c + "_diff", diff},
                               {c + "_err", err},
                               {c + "_ratio", diff / root_scale},
                               {c + "_ratio_err", err / root_scale}});
    }
    return row;
}

SweepReport evaluate_table(const SweepTable& table)
{
    SweepReport r;
    r.table = table;
    const std::size_t rows = table.rows.size();
    if (rows == 0) return r;
    const auto dH = table.values("d_H");
    // Lower half: the ceil(rows/2) smallest deltas, at least three rows when available.
    const std::size_t start = rows - std::min(rows, std::max<std::size_t>(3, rows - rows / 2));

    for (const auto& name : table.columns) {
        for (double v : table.values(name)) {
            if (!stem_of(name, "_oracle_ok").empty() && v != 1) r.oracle_ok = false;
            if (name == "S_marginal_ok" && v != 1) r.marginal_ok = false;
            if (!stem_of(name, "_ratio").empty() && !std::isfinite(v)) r.ratios_finite = false;
        }
    }

    for (const auto& name : table.columns) {
        std::string stem = stem_of(name, "_dbl");
        const bool measure = !stem.empty() && stem[0] == 'L';
        if (!measure) stem = stem_of(name, "_diff");
        if (stem.empty() || table.column(stem + "_ratio") < 0) continue;

        ColumnFit f;
        f.column = name;
        f.ratio_column = stem + "_ratio";
        f.slope_gated = measure;
        const auto y = table.values(name);
        const auto ratio = table.values(f.ratio_column);
        const auto ratio_err = table.values(stem + "_ratio_err");
        if (rows >= 3) f.full = fit_loglog(dH, y);
        const std::vector<double> x_lo(dH.begin() + long(start), dH.end());
        const std::vector<double> y_lo(y.begin() + long(start), y.end());
        if (x_lo.size() >= 3) f.lower = fit_loglog(x_lo, y_lo);
        if (f.slope_gated) f.slope_ok = x_lo.size() >= 3 && std::isfinite(f.lower.slope) && f.lower.slope >= slope_gate;

        std::vector<double> running(rows);
        double m = 0;
        for (std::size_t k = 0; k < rows; ++k) running[k] = m = std::max(m, ratio[k]);
        f.max_ratio = m;
        const double first = running[start];
        const double last = running.back();
        f.stability = last == 0 ? 1.0 : last / first;
        double noise = 0;
        for (std::size_t k = start; k < rows; ++k) noise = std::max(noise, ratio_err[k]);
        // A ratio that never rises above its error bar counts as stable.
        f.stable = std::isfinite(m) && (f.stability < stability_gate || last <= noise);
        r.fits.push_back(f);
    }
    return r;
}

SweepReport run_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    SweepTable table;
    for (std::size_t k = 0; k < cfg.deltas.size(); ++k) {
        const double delta = cfg.deltas[k];
        try {
            const auto pair = generate_pair(cfg.scenario, cfg.base, delta, cfg.seed);
            const auto row = sweep_row(cfg, pair, delta);
            if (table.columns.empty())
                for (const auto& [name, v] : row) table.columns.push_back(name);
            std::vector<double> values;
            for (const auto& [name, v] : row) values.push_back(v);
            table.rows.push_back(std::move(values));
        }
        catch (const Error& e) {
            std::ostringstream what;
            what << "row " << k << " (delta " << delta << "): " << e.what();
            write_outputs(cfg, table, nullptr, what.str());
            throw Error(e.code(), what.str());
        }
    }
    auto report = evaluate_table(table);
    write_outputs(cfg, table, &report, "");
    return report;
}

std::string to_csv(const SweepTable& table)
{
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
    out += '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (is_integer_column(table.columns[c]))
                std::snprintf(buf, sizeof buf, "%lld", (long long)std::llround(row[c]));
            else
                std::snprintf(buf, sizeof buf, "%.10e", row[c]);
            out += (c ? "," : "") + std::string(buf);
        }
        out += '\n';
    }
    return out;
}

SweepTable table_from_csv(const std::string& text)
{
    SweepTable t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cell;
        std::istringstream ls(s);
        while (std::getline(ls, cell, ',')) parts.push_back(cell);
        return parts;
    };
    require(bool(std::getline(in, line)), Errc::parse, "empty CSV");
    t.columns = split(line);
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line);
        require(cells.size() == t.columns.size(), Errc::parse, "CSV line " + std::to_string(lineno) + " has the wrong width");
        std::vector<double> row;
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            require(end != c.c_str() && *end == '\0', Errc::parse, "CSV line " + std::to_string(lineno) + ": bad number '" + c + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

SweepTable load_table(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    require(bool(in), Errc::parse, "cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return table_from_csv(s.str());
}

std::string fit_summary(const SweepReport& r)
{
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-22s %10s %10s %10s %12s %10s %s\n", "column", "slope", "lower", "residual", "max_ratio",
                  "stability", "gates");
    out << buf;
    for (const auto& f : r.fits) {
        std::snprintf(buf, sizeof buf, "%-22s %10.4f %10.4f %10.2e %12.4e %10.4f %s%s\n", f.column.c_str(), f.full.slope,
                      f.lower.slope, f.lower.max_residual, f.max_ratio, f.stability, f.stable ? "stable" : "UNSTABLE",
                      f.slope_gated ? (f.slope_ok ? " slope-ok" : " SLOPE-LOW") : "");
        out << buf;
    }
    out << "oracle agreement: " << (r.oracle_ok ? "ok" : "FAIL") << '\n';
    out << "marginal bound: " << (r.marginal_ok ? "ok" : "FAIL") << '\n';
    out << "ratios finite: " << (r.ratios_finite ? "ok" : "FAIL") << '\n';
    out << "overall: " << (r.passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

} // namespace normcyc
