// Experiment runner: one subcommand per computed quantity, reproducible CSV
// and JSON reports.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfkit/complexity.hpp"
#include "tfkit/essential.hpp"
#include "tfkit/fixtures.hpp"
#include "tfkit/report.hpp"
#include "tfkit/tentropy.hpp"
#include "tfkit/transfer.hpp"

using namespace tfkit;
using nlohmann::json;

namespace {

struct Options {
    std::string fixture = "full2";
    std::string config_path;
    int nmax = 12;
    int depth = 2;
    std::string eps_ladder; // comma-separated; empty = per-host default
    std::string out_dir;
    bool strict = false;
    unsigned seed = 1u;
};

std::vector<double> parse_ladder(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

NetSchedule schedule_for(const Fixture& fx, const Options& opt) {
    NetSchedule sched = fx.system->as_subshift() ? NetSchedule::shifts(opt.nmax)
                                                 : NetSchedule::metric_coarse(opt.nmax);
    sched.n_max = opt.nmax;
    if (!opt.eps_ladder.empty()) sched.eps_ladder = parse_ladder(opt.eps_ladder);
    return sched;
}

json config_json(const Options& opt, const std::string& task) {
    return {{"task", task},       {"fixture", opt.fixture},
            {"nmax", opt.nmax},   {"depth", opt.depth},
            {"eps_ladder", opt.eps_ladder}, {"seed", opt.seed},
            {"strict", opt.strict}};
}

std::string out_path(const Options& opt, const std::string& stem,
                     const std::string& ext) {
    std::string dir = opt.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("TFKIT_OUT_DIR");
        dir = env ? env : ".";
    }
    return dir + "/" + stem + "." + ext;
}

void emit(const Options& opt, const std::string& task, const json& payload,
          const std::string& csv) {
    const json bundle = report_bundle(config_json(opt, task), payload);
    const std::string stem = task + "_" + opt.fixture;
    write_text_file(out_path(opt, stem, "json"), bundle.dump(2) + "\n");
    if (!csv.empty()) write_text_file(out_path(opt, stem, "csv"), csv);
}

InvariantMeasure uniform_markov(const SystemPtr& S) {
    const Subshift* sh = S->as_subshift();
    if (!sh)
        throw std::invalid_argument(
            "this task needs a symbolic fixture (no default measure family on "
            "metric hosts)");
    const int A = sh->alphabet();
    std::vector<std::vector<double>> P(A, std::vector<double>(A, 0.0));
    for (int i = 0; i < A; ++i) {
        int deg = 0;
        for (int j = 0; j < A; ++j) deg += sh->transitions()[i][j];
        for (int j = 0; j < A; ++j)
            if (sh->transitions()[i][j]) P[i][j] = 1.0 / deg;
    }
    return markov_measure(S, P);
}

std::vector<InvariantMeasure> measure_family(const SystemPtr& S, unsigned seed) {
    std::vector<InvariantMeasure> fam{uniform_markov(S)};
    const Subshift* sh = S->as_subshift();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    for (int t = 0; t < 3; ++t) {
        const int A = sh->alphabet();
        std::vector<std::vector<double>> P(A, std::vector<double>(A, 0.0));
        for (int i = 0; i < A; ++i) {
            double total = 0.0;
            for (int j = 0; j < A; ++j)
                if (sh->transitions()[i][j]) {
                    P[i][j] = unif(rng);
                    total += P[i][j];
                }
            for (int j = 0; j < A; ++j) P[i][j] /= total;
        }
        fam.push_back(markov_measure(S, P));
    }
    return fam;
}

int run_task(const std::string& task, const Options& opt) {
    if (task == "list") {
        json cat = json::array();
        for (const auto& fx : fixture_catalog()) cat.push_back(fx.to_json());
        std::cout << cat.dump(2) << "\n";
        return 0;
    }

    const Fixture& fx = fixture_by_id(opt.fixture);
    const SystemPtr& S = fx.system;

    if (task == "entropy" || task == "pressure") {
        const LadderEstimate est =
            task == "entropy" ? topological_entropy(*S, schedule_for(fx, opt))
                              : topological_pressure(*S, fx.rho, schedule_for(fx, opt));
        std::cout << task << "(" << fx.id << ") headline=" << format_number(est.headline())
                  << " accelerated=" << format_number(est.best()) << "\n";
        emit(opt, task, est.to_json(), ladder_csv(est));
        return 0;
    }
    if (task == "lambda") {
        const TransferOperator T = perron_frobenius(S, fx.rho);
        const EstimateTrace est = spectral_potential(T, opt.nmax);
        std::cout << "lambda(" << fx.id << ") headline=" << format_number(est.headline())
                  << " accelerated=" << format_number(est.best()) << "\n";
        emit(opt, task, est.to_json(), trace_csv(est));
        return 0;
    }
    if (task == "omega") {
        const EstimateTrace est = inverse_rami_rate(*S, opt.nmax);
        std::cout << "omega(" << fx.id << ") = " << format_number(est.best()) << "\n";
        emit(opt, task, est.to_json(), trace_csv(est));
        return 0;
    }
    if (task == "gamma") {
        const LadderEstimate est = forward_entropy(*S, schedule_for(fx, opt));
        std::cout << "gamma(" << fx.id << ") = " << format_number(est.best())
                  << " (upper estimate)\n";
        emit(opt, task, est.to_json(), ladder_csv(est));
        return 0;
    }
    if (task == "ell") {
        const EstimateTrace est = essential_spectral_potential(*S, fx.rho, opt.nmax);
        std::cout << "ell(" << fx.id << ") = " << format_number(est.best()) << "\n";
        emit(opt, task, est.to_json(), trace_csv(est));
        return 0;
    }
    if (task == "tau") {
        const InvariantMeasure mu = uniform_markov(S);
        const TransferOperator T = perron_frobenius(S, fx.rho);
        const TEntropyEstimate part =
            t_entropy_partition(T, mu, opt.depth + 2, std::min(opt.nmax, 6));
        const TEntropyEstimate radon = t_entropy_radon(T, mu, std::min(opt.nmax, 6));
        std::cout << "tau(" << fx.id << ", uniform Markov): partition="
                  << format_number(part.headline())
                  << " radon=" << format_number(radon.headline()) << "\n";
        emit(opt, task, {{"partition", part.to_json()}, {"radon", radon.to_json()}},
             "");
        return 0;
    }
    if (task == "essential") {
        const int res = 1024;
        const double radius = 0.5 / res;
        const auto pts = essential_set(*S, radius, 4096, res);
        json arr = json::array();
        for (const auto& p : pts) arr.push_back(point_str(p));
        std::cout << "essential_set(" << fx.id << ") = " << arr.dump() << "\n";
        emit(opt, task, {{"points", arr}, {"radius", radius}}, "");
        return 0;
    }
    if (task == "compat") {
        const TransferOperator T = perron_frobenius(S, fx.rho);
        const Subset Y = Subset::interval_union({{0.0, 0.8}});
        const auto verdict = check_compatibility(T, Y, 1024);
        std::cout << "compat(" << fx.id << ", Y=[0,0.8]) = " << verdict.str() << "\n";
        emit(opt, task,
             {{"compatible", verdict.compatible},
              {"jump", verdict.jump},
              {"note", verdict.note}},
             "");
        return verdict.compatible || !opt.strict ? 0 : 1;
    }
    if (task == "vp") {
        const TransferOperator T = perron_frobenius(S, fx.rho);
        const auto rows =
            verify_variational_principle(T, fx.psi_samples, measure_family(S, opt.seed));
        json arr = json::array();
        bool all_pass = true;
        for (const auto& r : rows) {
            std::cout << "vp(" << fx.id << ", " << r.psi_name
                      << "): lambda=" << format_number(r.lambda)
                      << " gap=" << format_number(r.gap)
                      << (r.pass ? " PASS" : " FAIL") << "\n";
            all_pass = all_pass && r.pass;
            arr.push_back({{"psi", r.psi_name},
                           {"lambda", r.lambda},
                           {"family_max", r.family_max},
                           {"optimizer_value", r.optimizer_value},
                           {"gap", r.gap},
                           {"pass", r.pass}});
        }
        emit(opt, task, arr, "");
        return all_pass || !opt.strict ? 0 : 1;
    }
    if (task == "identities") {
        const auto rows = cross_check_identities(fx);
        json arr = json::array();
        bool any_fail = false;
        for (const auto& r : rows) {
            std::cout << r.fixture << " " << r.identity << " [" << r.psi_name
                      << "] lhs=" << format_number(r.lhs)
                      << " rhs=" << format_number(r.rhs) << " " << r.status << "\n";
            any_fail = any_fail || r.status == "FAIL";
            arr.push_back({{"identity", r.identity},
                           {"psi", r.psi_name},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"gap", r.gap},
                           {"status", r.status},
                           {"note", r.note}});
        }
        emit(opt, task, arr, identity_csv(rows));
        return !any_fail || !opt.strict ? 0 : 1;
    }
    std::cerr << "unknown task: " << task << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for transfer-operator growth rates"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::string> tasks = {"entropy", "pressure", "lambda", "tau",
                                            "omega",   "gamma",    "ell",    "essential",
                                            "compat",  "vp",       "identities", "list"};
    std::vector<CLI::App*> subs;
    for (const auto& t : tasks) {
        CLI::App* sub = app.add_subcommand(t);
        sub->add_option("--fixture", opt.fixture, "fixture id (see `list`)");
        sub->add_option("--config", opt.config_path, "JSON config file");
        sub->add_option("--nmax", opt.nmax, "iteration depth");
        sub->add_option("--depth", opt.depth, "cylinder/potential depth");
        sub->add_option("--eps-ladder", opt.eps_ladder,
                        "comma-separated metric resolutions");
        sub->add_option("--out", opt.out_dir,
                        "output directory (default $TFKIT_OUT_DIR or .)");
        sub->add_option("--seed", opt.seed, "seed for randomized families");
        sub->add_flag("--strict", opt.strict, "nonzero exit on any FAIL row");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (!opt.config_path.empty()) {
            std::ifstream f(opt.config_path);
            if (!f) throw std::runtime_error("cannot read config: " + opt.config_path);
            json cfg = json::parse(f);
            if (cfg.contains("fixture")) opt.fixture = cfg["fixture"];
            if (cfg.contains("nmax")) opt.nmax = cfg["nmax"];
            if (cfg.contains("depth")) opt.depth = cfg["depth"];
            if (cfg.contains("eps_ladder")) opt.eps_ladder = cfg["eps_ladder"];
            if (cfg.contains("out")) opt.out_dir = cfg["out"];
            if (cfg.contains("seed")) opt.seed = cfg["seed"];
            if (cfg.contains("strict")) opt.strict = cfg["strict"];
        }
        for (std::size_t i = 0; i < tasks.size(); ++i)
            if (subs[i]->parsed()) return run_task(tasks[i], opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
