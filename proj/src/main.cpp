#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "xrrmeta/ci_search.hpp"
#include "xrrmeta/comparators.hpp"
#include "xrrmeta/errors.hpp"
#include "xrrmeta/estimators.hpp"
#include "xrrmeta/io.hpp"
#include "xrrmeta/report.hpp"
#include "xrrmeta/simgen.hpp"
#include "xrrmeta/version.hpp"

namespace {

using namespace xrrmeta;

int hw_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<std::string> parse_methods(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(list);
    while (std::getline(in, cur, ',')) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        std::string m = cur.substr(b, e - b + 1);
        if (m != "xrrmeta") method_from_name(m);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (out.empty()) throw ValidationError("--methods selects nothing");
    return out;
}

void write_payload(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ValidationError("cannot open output file: " + out_path);
    f << payload;
}

struct AnalyzeOpts {
    std::string input;
    double alpha = 0.05;
    int mc_reps = 2000;
    double step = 0.001;
    std::uint64_t seed = 0;
    int threads = 0;
    int min_k = 2;
    std::string methods = "xrrmeta,mh,mh-cc,peto-f,peto-r,dl";
    std::string output = "json";
    std::string out_path;
    bool stable = false;
};

int run_analyze(const AnalyzeOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    MetaDataset data = load_csv(o.input, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    auto methods = parse_methods(o.methods);

    AnalysisReport rep;
    rep.input_path = o.input;
    rep.k = data.k();
    rep.k_tot = data.k_tot();
    rep.dz = int(data.dz_studies.size());
    rep.alpha = o.alpha;
    rep.seed = o.seed;
    rep.mc_reps = o.mc_reps;
    rep.step = o.step;
    rep.threads = o.stable ? 0 : (o.threads > 0 ? o.threads : hw_threads());

    for (const auto& m : methods) {
        if (m == "xrrmeta") {
            SearchConfig cfg;
            cfg.alpha = o.alpha;
            cfg.step = o.step;
            cfg.min_k = o.min_k;
            cfg.mc.m = o.mc_reps;
            cfg.mc.seed = o.seed;
            cfg.mc.threads = o.threads;
            rep.ci = exact_ci(data, cfg);
            rep.observed = wald_statistic(data, 0.5);
            rep.has_exact = true;
        } else {
            rep.comparators.push_back(run_comparator(data, method_from_name(m)));
        }
    }
    auto dt = std::chrono::steady_clock::now() - t0;
    rep.wall_ms =
        o.stable ? 0.0 : std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(dt)
                             .count();
    write_payload(o.output == "json" ? report_to_json(rep) : report_to_csv(rep), o.out_path);
    return 0;
}

struct SimulateOpts {
    std::string scenario;
    int reps = 0;
    bool reps_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long rep_start = 0;
    double alpha = 0.05;
    int mc_reps = 500;
    double step = 0.005;
    int threads = 0;
    std::string methods = "xrrmeta,mh,mh-cc,peto-f,peto-r,dl";
    std::string out_path;
};

int run_simulate(const SimulateOpts& o) {
    Scenario sc = load_scenario(o.scenario);
    if (o.reps_set) sc.reps = o.reps;
    if (o.seed_set) sc.seed = o.seed;
    if (sc.reps < 1)
        throw ValidationError("no replications requested: set reps in the scenario or pass --reps");
    auto methods = parse_methods(o.methods);
    SearchConfig cfg;
    cfg.alpha = o.alpha;
    cfg.step = o.step;
    cfg.mc.m = o.mc_reps;
    cfg.mc.threads = o.threads;
    ExperimentResult res = run_experiment(sc, methods, cfg, o.rep_start);
    write_payload(experiment_to_csv(sc, res), o.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("xrrmeta ") + XRRMETA_VERSION +
                 " - exact rare-event meta-analysis with classical comparators"};
    app.require_subcommand(1);

    AnalyzeOpts ao;
    auto* analyze = app.add_subcommand("analyze", "Analyze a study-level CSV dataset");
    analyze->add_option("--input", ao.input, "CSV file: study_id,n1,y1,n2,y2")->required();
    analyze->add_option("--alpha", ao.alpha, "confidence level is 1 - alpha")
        ->check(CLI::Range(1e-6, 0.999999));
    analyze->add_option("--mc-reps", ao.mc_reps, "Monte Carlo replications per grid point")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--step", ao.step, "search grid resolution on the mu scale")
        ->check(CLI::Range(1e-9, 0.499));
    analyze->add_option("--seed", ao.seed, "master RNG seed");
    analyze->add_option("--threads", ao.threads, "worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    analyze->add_option("--min-k", ao.min_k, "fewest informative studies accepted")
        ->check(CLI::PositiveNumber);
    analyze->add_option("--methods", ao.methods, "comma list: xrrmeta,mh,mh-cc,peto-f,peto-r,dl");
    analyze->add_option("--output", ao.output, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--out", ao.out_path, "write the report here instead of stdout");
    analyze->add_flag("--stable-output", ao.stable,
                      "zero timing/machine fields so reruns are byte-stable");

    SimulateOpts so;
    auto* simulate = app.add_subcommand("simulate", "Run a simulation scenario");
    simulate->add_option("--scenario", so.scenario, "scenario file (key = value)")->required();
    simulate->add_option("--reps", so.reps, "replications (overrides the scenario)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", so.seed, "master RNG seed (overrides the scenario)");
    simulate->add_option("--rep-start", so.rep_start, "first replicate index (chunked runs)")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--alpha", so.alpha, "test level")->check(CLI::Range(1e-6, 0.999999));
    simulate->add_option("--mc-reps", so.mc_reps, "Monte Carlo replications per grid point")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--step", so.step, "search grid resolution on the mu scale")
        ->check(CLI::Range(1e-9, 0.499));
    simulate->add_option("--threads", so.threads, "worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--methods", so.methods, "comma list: xrrmeta,mh,mh-cc,peto-f,peto-r,dl");
    simulate->add_option("--out", so.out_path, "write the summary CSV here instead of stdout");

    try {
        app.parse(argc, argv);
        so.reps_set = simulate->count("--reps") > 0;
        so.seed_set = simulate->count("--seed") > 0;
        if (app.got_subcommand(analyze)) return run_analyze(ao);
        return run_simulate(so);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
