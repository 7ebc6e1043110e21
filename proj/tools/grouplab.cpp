// grouplab: Haar/Gaussian coupling experiments, representation audits, and
// mixing checks on the compact classical groups, from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grouplab/experiments.hpp"

namespace {

using grouplab::ExperimentReport;
using grouplab::RunConfig;

struct CliState {
    RunConfig cfg;
    std::string out = "-";
    std::string csv;
    bool timings = false;
    bool text = false;
};

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content << std::endl;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw grouplab::ConfigError("cannot write output file: " + path);
    f << content;
}

int emit(const CliState& st, const std::vector<ExperimentReport>& reports) {
    write_output(st.out, grouplab::reports_to_json(reports, st.timings));
    if (!st.csv.empty()) {
        std::string all_csv;
        for (const auto& r : reports) all_csv += r.to_csv();
        write_output(st.csv, all_csv);
    }
    if (st.text)
        for (const auto& r : reports) std::cerr << r.to_text();
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.all_pass();
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"group coupling and representation experiment runner"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    CliState st;
    std::string config_path;
    std::string family;
    long n = 0;
    bool seed_given = false;

    app.add_option("--seed", st.cfg.seed, "master seed (GROUPLAB_SEED as fallback)")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--samples", st.cfg.samples_scale,
                   "global sample-count multiplier (default 1.0)");
    app.add_option("--jobs", st.cfg.jobs, "bound on concurrent grid cells (0 = all cores)");
    app.add_option("--out", st.out, "JSON report path ('-' for stdout)");
    app.add_option("--csv", st.csv, "also write a per-cell CSV dump to this path");
    app.add_option("--config", config_path, "flat key=value config file with [sections]");
    app.add_option("--family", family, "group family for dims (so|su|sp|spin)");
    app.add_option("--n", n, "rank parameter for single-group experiments");
    app.add_flag("--timings", st.timings, "include wall-clock timings in the report");
    app.add_flag("--text", st.text, "also print a human-readable summary to stderr");

    const char* names[] = {"haar-check", "coupling", "dims",        "laplacian", "level-d",
                           "mixing",     "product-free", "doubling", "repr-audit", "all"};
    for (const char* name : names) app.add_subcommand(name);
    // spec alias: --dmax for dims
    long dmax = -1;
    app.add_option("--dmax", dmax, "maximal level for dims sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!seed_given) {
            if (const char* env = std::getenv("GROUPLAB_SEED")) st.cfg.seed = std::stoull(env);
        }
        if (!config_path.empty()) {
            auto file_overrides = grouplab::parse_config_file(config_path);
            // flags override file values
            file_overrides.merge(st.cfg.overrides);
            st.cfg.overrides = std::move(file_overrides);
        }
        const std::string sub = app.get_subcommands().front()->get_name();
        if (!family.empty()) st.cfg.overrides["dims.family"] = family;
        if (n > 0) {
            for (const char* key : {"dims.n", "haar-check.n", "coupling.n", "level-d.n",
                                    "mixing.n", "doubling.n"})
                st.cfg.overrides[key] = std::to_string(n);
        }
        if (dmax >= 0) st.cfg.overrides["dims.dmax"] = std::to_string(dmax);

        std::vector<ExperimentReport> reports;
        if (sub == "haar-check") reports.push_back(grouplab::run_haar_check(st.cfg));
        else if (sub == "coupling") reports.push_back(grouplab::run_coupling_suite(st.cfg));
        else if (sub == "dims") reports.push_back(grouplab::run_dims(st.cfg));
        else if (sub == "laplacian") reports.push_back(grouplab::run_laplacian_audit(st.cfg));
        else if (sub == "level-d") reports.push_back(grouplab::run_level_d(st.cfg));
        else if (sub == "mixing") reports.push_back(grouplab::run_mixing(st.cfg));
        else if (sub == "product-free") reports.push_back(grouplab::run_product_free(st.cfg));
        else if (sub == "doubling") reports.push_back(grouplab::run_doubling(st.cfg));
        else if (sub == "repr-audit") reports.push_back(grouplab::run_repr_audits(st.cfg));
        else if (sub == "all") reports = grouplab::run_all(st.cfg);
        return emit(st, reports);
    } catch (const grouplab::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
