// scalekit command line tool: catalog inspection, density evaluation,
// entropy, integral transforms, Monte Carlo scenarios, invariance checks and
// recipe verification, with reproducible file output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scalekit/catalog.hpp"
#include "scalekit/serialization.hpp"
#include "scalekit/simulate.hpp"
#include "scalekit/transforms.hpp"

namespace {

using scalekit::Json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) throw scalekit::Error("IoError", "could not write " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string grid_to_csv(const scalekit::GridDistribution& dist) {
    std::ostringstream out;
    dist.write_csv(out);
    return out.str();
}

std::string samples_to_csv(const std::vector<double>& samples) {
    std::ostringstream out;
    out << "sample\n";
    char buf[40];
    for (double s : samples) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", s);
        out << buf;
    }
    return out.str();
}

// Inline JSON text or a path to a JSON file; bare words are quoted so
// `--scale linear` works without shell quoting.
Json parse_json_argument(const std::string& text) {
    std::string candidate = text;
    if (!candidate.empty() && candidate[0] != '{' && candidate[0] != '"' &&
        candidate[0] != '[') {
        if (std::filesystem::exists(candidate)) {
            std::ifstream in(candidate);
            std::stringstream buffer;
            buffer << in.rdbuf();
            candidate = buffer.str();
        } else {
            candidate = "\"" + candidate + "\"";
        }
    }
    return Json::parse(candidate);
}

scalekit::GridDistribution load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw scalekit::Error("IoError", "could not open " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return scalekit::GridDistribution::read_csv(in);
    Json j;
    in >> j;
    return scalekit::grid_distribution_from_json(j);
}

// Union of the per-distribution parameter names; only flags the user set
// are forwarded, the catalog validates the rest.
struct ParamFlags {
    std::map<std::string, double> values;

    void attach(CLI::App* cmd) {
        static const char* names[] = {"lambda", "beta", "mu",   "k",    "alpha",      "b",
                                      "c1",     "c2",   "gamma", "ymin", "ymax",
                                      "orientation"};
        for (const char* name : names) {
            auto* opt = cmd->add_option("--" + std::string(name));
            opt->each([this, name](const std::string& v) { values[name] = std::stod(v); });
        }
    }
};

void require_catalog_name(const std::string& name) {
    const auto names = scalekit::catalog_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw scalekit::UsageError("unknown distribution '" + name +
                                   "' for --dist; see `scalekit catalog list`");
}

Json fit_report_json(const std::string& scenario, const scalekit::FitReport& report) {
    return Json{{"scenario", scenario},
                {"ks_statistic", report.ks_statistic},
                {"sample_count", report.sample_count},
                {"threshold", report.threshold},
                {"pass", report.pass},
                {"predicted", report.predicted}};
}

struct CommandContext {
    std::string output_path;
    std::string format = "csv";

    void emit_grid(const scalekit::GridDistribution& dist) const {
        std::string content = format == "json"
                                  ? scalekit::grid_distribution_to_json(dist).dump(2) + "\n"
                                  : grid_to_csv(dist);
        if (output_path.empty())
            std::cout << content;
        else
            atomic_write(output_path, content);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scalekit: maximum-entropy distributions on composable measurement scales"};
    app.require_subcommand(1);
    {
        std::string names = "catalog entries:";
        for (const auto& n : scalekit::catalog_names()) names += " " + n;
        std::string scens = "scenarios:";
        for (const auto& n : scalekit::scenario_names()) scens += " " + n;
        app.footer(names + "\n" + scens);
    }

    int exit_code = kExitOk;
    std::string active_command;

    // catalog list | show <name>
    auto* catalog_cmd = app.add_subcommand("catalog", "list the distribution catalog");
    auto* catalog_list = catalog_cmd->add_subcommand("list", "all entry names");
    std::string show_name;
    auto* catalog_show = catalog_cmd->add_subcommand("show", "full entry description");
    catalog_show->add_option("name", show_name, "catalog entry")->required();
    catalog_cmd->require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "normalize a density onto a grid");
    std::string eval_dist, eval_spec_path;
    std::size_t eval_points = 4096;
    ParamFlags eval_params;
    CommandContext eval_ctx;
    eval_cmd->add_option("--dist", eval_dist, "catalog entry name");
    eval_cmd->add_option("--spec", eval_spec_path, "distribution spec JSON file");
    eval_cmd->add_option("--points", eval_points, "grid size");
    eval_cmd->add_option("--out", eval_ctx.output_path, "output file (atomic write)");
    eval_cmd->add_option("--format", eval_ctx.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    eval_params.attach(eval_cmd);

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "differential entropy of a density");
    std::string entropy_dist, entropy_in;
    ParamFlags entropy_params;
    entropy_cmd->add_option("--dist", entropy_dist, "catalog entry name");
    entropy_cmd->add_option("--in", entropy_in, "grid file (csv or json)");
    entropy_params.attach(entropy_cmd);

    // transform laplace|fourier|levy|changevar
    auto* transform_cmd = app.add_subcommand("transform", "integral transforms and scale changes");
    transform_cmd->require_subcommand(1);
    std::string tr_in, tr_dual, tr_g;
    CommandContext tr_ctx;
    auto* tr_laplace = transform_cmd->add_subcommand("laplace", "h*(s) = E[exp(-s x)]");
    tr_laplace->add_option("--in", tr_in, "source grid file")->required();
    tr_laplace->add_option("--dual-points", tr_dual, "comma separated s values")->required();
    tr_laplace->add_option("--out", tr_ctx.output_path, "output file");
    auto* tr_fourier = transform_cmd->add_subcommand("fourier", "E[cos(s x)]");
    tr_fourier->add_option("--in", tr_in, "source grid file")->required();
    tr_fourier->add_option("--dual-points", tr_dual, "comma separated s values")->required();
    tr_fourier->add_option("--out", tr_ctx.output_path, "output file");
    double levy_gamma = 1.0, levy_phi = 1.0, levy_span = 2000.0;
    std::size_t levy_points = 1 << 16;
    auto* tr_levy = transform_cmd->add_subcommand("levy", "stable density by Fourier inversion");
    tr_levy->add_option("--gamma", levy_gamma, "stable exponent in (0,2]")->required();
    tr_levy->add_option("--phi", levy_phi, "scale parameter")->required();
    tr_levy->add_option("--points", levy_points, "grid length (power of two)");
    tr_levy->add_option("--span", levy_span, "half-width of the y grid");
    tr_levy->add_option("--out", tr_ctx.output_path, "output file");
    tr_levy->add_option("--format", tr_ctx.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    auto* tr_changevar = transform_cmd->add_subcommand("changevar", "density under x = g(y)");
    bool tr_inverse = false;
    tr_changevar->add_option("--in", tr_in, "source grid file")->required();
    tr_changevar->add_option("--g", tr_g, "scale expression JSON (inline or file)")->required();
    tr_changevar->add_flag("--inverse", tr_inverse, "--g holds the inverse map y = g^-1(x)");
    tr_changevar->add_option("--out", tr_ctx.output_path, "output file");
    tr_changevar->add_option("--format", tr_ctx.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // simulate <scenario>
    auto* sim_cmd = app.add_subcommand("simulate", "run a generative scenario and KS-fit it");
    std::string sim_scenario, sim_out;
    std::size_t sim_n = 100000;
    std::uint64_t sim_seed = 42;
    double sim_ks_constant = 1.63;
    sim_cmd->add_option("scenario", sim_scenario, "scenario name")->required();
    sim_cmd->add_option("--n", sim_n, "sample count");
    sim_cmd->add_option("--seed", sim_seed, "RNG seed")->envname("SCALEKIT_SEED");
    sim_cmd->add_option("--ks-constant", sim_ks_constant,
                        "KS pass threshold constant c in c/sqrt(n) (default 1.63, alpha~0.01)");
    sim_cmd->add_option("--out", sim_out, "write samples CSV here");

    // invariance
    auto* inv_cmd = app.add_subcommand("invariance", "affine invariance report for T against G");
    std::string inv_scale, inv_transform, inv_observable = "identity", inv_range = "0.01:100";
    std::size_t inv_points = 64;
    double inv_tolerance = 1e-9;
    inv_cmd->add_option("--scale", inv_scale, "measurement scale JSON (inline or file)")
        ->required();
    inv_cmd->add_option("--transform", inv_transform, "transform JSON (inline or file)")
        ->required();
    inv_cmd->add_option("--observable", inv_observable, "observable JSON");
    inv_cmd->add_option("--range", inv_range, "sampling range lo:hi (log-spaced)");
    inv_cmd->add_option("--points", inv_points, "sample point count");
    inv_cmd->add_option("--tolerance", inv_tolerance, "invariance tolerance");

    // verify <name>
    auto* verify_cmd = app.add_subcommand("verify", "check a recipe against its closed form");
    std::string verify_name;
    ParamFlags verify_params;
    verify_cmd->add_option("name", verify_name, "catalog entry")->required();
    verify_params.attach(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::ostringstream dummy;
        app.exit(e, dummy, dummy);
        Json err{{"kind", "UsageError"}, {"message", e.what()}, {"context", Json::object()}};
        std::cerr << err.dump() << "\n";
        return kExitUsage;
    }

    try {
        if (catalog_list->parsed()) {
            active_command = "catalog list";
            Json names = Json::array();
            for (const auto& e : scalekit::catalog()) {
                names.push_back({{"name", e.name}, {"family", e.family}});
            }
            std::cout << names.dump(2) << "\n";
        } else if (catalog_show->parsed()) {
            active_command = "catalog show";
            const auto& e = scalekit::catalog_entry(show_name);
            Json params = Json::array();
            for (const auto& p : e.params) {
                Json jp{{"name", p.name}, {"domain", p.domain_text}};
                if (p.default_value) jp["default"] = *p.default_value;
                params.push_back(jp);
            }
            const auto& setting = e.test_settings.front();
            Json out{{"name", e.name},
                     {"family", e.family},
                     {"closed_form", e.closed_form_text},
                     {"note", e.note},
                     {"params", params},
                     {"recipe_example",
                      {{"params", setting},
                       {"spec", scalekit::distribution_spec_to_json(
                                    scalekit::instantiate(e.name, setting))}}}};
            std::cout << out.dump(2) << "\n";
        } else if (eval_cmd->parsed()) {
            active_command = "eval";
            scalekit::GridOptions options;
            options.points = eval_points;
            std::optional<scalekit::DistributionSpec> spec;
            if (!eval_dist.empty()) {
                require_catalog_name(eval_dist);
                spec = scalekit::instantiate(eval_dist, eval_params.values);
            } else if (!eval_spec_path.empty()) {
                std::ifstream in(eval_spec_path);
                if (!in)
                    throw scalekit::Error("IoError", "could not open " + eval_spec_path);
                Json j;
                in >> j;
                spec = scalekit::distribution_spec_from_json(j);
            } else {
                throw scalekit::UsageError("eval needs --dist or --spec");
            }
            eval_ctx.emit_grid(scalekit::normalize(*spec, options));
        } else if (entropy_cmd->parsed()) {
            active_command = "entropy";
            double value;
            if (!entropy_dist.empty()) {
                require_catalog_name(entropy_dist);
                const auto spec = scalekit::instantiate(entropy_dist, entropy_params.values);
                value = scalekit::entropy(scalekit::normalize(spec));
            } else if (!entropy_in.empty()) {
                value = scalekit::entropy(load_grid(entropy_in));
            } else {
                throw scalekit::UsageError("entropy needs --dist or --in");
            }
            std::cout << Json{{"entropy", value}}.dump() << "\n";
        } else if (tr_laplace->parsed() || tr_fourier->parsed()) {
            active_command = tr_laplace->parsed() ? "transform laplace" : "transform fourier";
            const auto source = load_grid(tr_in);
            std::vector<double> duals;
            std::stringstream ss(tr_dual);
            for (std::string item; std::getline(ss, item, ',');)
                duals.push_back(std::stod(item));
            const auto values = tr_laplace->parsed()
                                    ? scalekit::laplace_transform(source, duals)
                                    : scalekit::fourier_cos_transform(source, duals);
            Json out{{"dual_points", duals}, {"values", values}};
            if (tr_ctx.output_path.empty())
                std::cout << out.dump(2) << "\n";
            else
                atomic_write(tr_ctx.output_path, out.dump(2) + "\n");
        } else if (tr_levy->parsed()) {
            active_command = "transform levy";
            scalekit::LevyOptions options;
            options.points = levy_points;
            options.span = levy_span;
            tr_ctx.emit_grid(scalekit::levy_stable_density(levy_gamma, levy_phi, options));
        } else if (tr_changevar->parsed()) {
            active_command = "transform changevar";
            const auto source = load_grid(tr_in);
            scalekit::VariableChange change{
                scalekit::scale_expr_from_json(parse_json_argument(tr_g))};
            change.given_as_inverse = tr_inverse;
            tr_ctx.emit_grid(scalekit::change_of_variable(source, change));
        } else if (sim_cmd->parsed()) {
            active_command = "simulate";
            const auto names = scalekit::scenario_names();
            if (std::find(names.begin(), names.end(), sim_scenario) == names.end())
                throw scalekit::UsageError("unknown scenario '" + sim_scenario + "'");
            const auto samples = scalekit::scenario_samples(sim_scenario, sim_n, sim_seed);
            auto report = scalekit::fit_against_prediction(
                samples, scalekit::scenario_prediction(sim_scenario), sim_ks_constant);
            report.predicted = sim_scenario;
            if (!sim_out.empty()) atomic_write(sim_out, samples_to_csv(samples));
            std::cout << fit_report_json(sim_scenario, report).dump() << "\n";
        } else if (inv_cmd->parsed()) {
            active_command = "invariance";
            const auto scale =
                scalekit::measurement_scale_from_json(parse_json_argument(inv_scale));
            const auto transform =
                scalekit::transform_from_json(parse_json_argument(inv_transform));
            const auto observable =
                scalekit::observable_from_json(parse_json_argument(inv_observable));
            const auto colon = inv_range.find(':');
            if (colon == std::string::npos)
                throw scalekit::UsageError("--range must look like lo:hi");
            const double lo = std::stod(inv_range.substr(0, colon));
            const double hi = std::stod(inv_range.substr(colon + 1));
            const auto points = scalekit::default_invariance_points(lo, hi, inv_points);
            const auto report = scalekit::check_affine_invariance(scale, observable, transform,
                                                                  points, inv_tolerance);
            std::cout << Json{{"is_invariant", report.is_invariant},
                              {"fitted_a", report.fitted_a},
                              {"fitted_b", report.fitted_b},
                              {"max_residual", report.max_residual}}
                             .dump()
                      << "\n";
        } else if (verify_cmd->parsed()) {
            active_command = "verify";
            require_catalog_name(verify_name);
            const auto& entry = scalekit::catalog_entry(verify_name);
            std::vector<scalekit::ParamMap> settings;
            if (!verify_params.values.empty())
                settings.push_back(verify_params.values);
            else
                settings = entry.test_settings;
            Json results = Json::array();
            bool all_pass = true;
            for (const auto& setting : settings) {
                const auto report = scalekit::verify_entry(verify_name, setting);
                all_pass = all_pass && report.pass;
                results.push_back({{"params", setting},
                                   {"max_pointwise_relerr", report.max_pointwise_relerr},
                                   {"points_checked", report.points_checked},
                                   {"pass", report.pass}});
            }
            std::cout << Json{{"name", verify_name}, {"results", results}, {"pass", all_pass}}
                             .dump(2)
                      << "\n";
            exit_code = all_pass ? kExitOk : kExitDomain;
        }
    } catch (const scalekit::UsageError& e) {
        Json err{{"kind", e.kind()},
                 {"message", e.what()},
                 {"context", {{"command", active_command}}}};
        std::cerr << err.dump() << "\n";
        return kExitUsage;
    } catch (const scalekit::Error& e) {
        Json err{{"kind", e.kind()},
                 {"message", e.what()},
                 {"context", {{"command", active_command}}}};
        std::cerr << err.dump() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        Json err{{"kind", "Internal"},
                 {"message", e.what()},
                 {"context", {{"command", active_command}}}};
        std::cerr << err.dump() << "\n";
        return kExitDomain;
    }
    return exit_code;
}
