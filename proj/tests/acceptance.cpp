// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [--threads N] [--trials K] [--out-dir DIR]
//
// --trials lowers K for quick local runs; the reported verdicts only count
// at the default K = 500.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vws/coarray.hpp"
#include "vws/config.hpp"
#include "vws/estimators.hpp"
#include "vws/io.hpp"
#include "vws/montecarlo.hpp"
#include "vws/numerics.hpp"

using namespace vws;

namespace {

struct Options {
    int threads = 0;  // 0: hardware concurrency
    int trials = 500;
    std::filesystem::path out_dir;
};

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kThetas3{-0.8, 0.0, 0.8};
const std::vector<double> kThetas5{-0.8, -0.4, 0.0, 0.4, 0.8};
const std::vector<double> kNoiseVars{0.1, 1.0, 10.0};
const std::vector<int> kShrinkages{0, 1, 3, 5, 16};

double max_abs_error(std::vector<double> got, const std::vector<double>& want)
{
    std::sort(got.begin(), got.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - want[i]));
    return worst;
}

Verdict decomposition_identity()
{
    const auto t0 = std::chrono::steady_clock::now();
    const ArrayGeometry g = build_nested(4, 4);
    const Coarray ca = difference_coarray(g);
    const SourceScene sc(kThetas3);
    double worst = 0.0;
    for (double s2 : kNoiseVars) {
        const CoarraySignal x = coarray_signal(exact_covariance(sc, g, s2), g);
        for (int a : kShrinkages) {
            const CMatrix lhs = vws_smooth(x, a).values;
            const CMatrix rhs = decompose_oracle(sc, ca, a, s2).smoothed();
            worst = std::max(worst, (lhs - rhs).norm() / rhs.norm());
        }
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-10 && t < 1.0,
            "max relative error " + sci(worst) + " (<= 1e-10), " + sci(t) + " s (< 1 s)"};
}

Verdict subspace_preservation()
{
    const ArrayGeometry g = build_nested(4, 4);
    const Coarray ca = difference_coarray(g);
    const SourceScene sc(kThetas3);
    double worst = 0.0;
    for (double s2 : kNoiseVars) {
        const CoarraySignal x = coarray_signal(exact_covariance(sc, g, s2), g);
        for (int a : kShrinkages) {
            const SubspacePair sp = noise_subspace(vws_smooth(x, a), 3);
            const CMatrix steer = decompose_oracle(sc, ca, a, s2).reference;
            for (Eigen::Index k = 0; k < steer.cols(); ++k)
                worst = std::max(worst,
                                 (sp.noise.adjoint() * steer.col(k)).norm() / steer.col(k).norm());
        }
    }
    return {worst < 1e-8, "max normalized projection " + sci(worst) + " (< 1e-8)"};
}

Verdict population_exactness()
{
    const auto t0 = std::chrono::steady_clock::now();
    const ArrayGeometry g = build_nested(4, 4);
    double root_worst = 0.0, music_worst = 0.0;
    for (double s2 : kNoiseVars) {
        const CMatrix r = exact_covariance(SourceScene(kThetas3), g, s2);
        for (int a : kShrinkages) {
            root_worst = std::max(
                root_worst, max_abs_error(estimate(r, g, 3, a, Method::RootMusic).thetas, kThetas3));
            music_worst = std::max(
                music_worst, max_abs_error(estimate(r, g, 3, a, Method::Music, 2000).thetas, kThetas3));
        }
    }
    const double t = seconds_since(t0);
    return {root_worst < 1e-6 && music_worst <= 1e-3 && t < 10.0,
            "root-MUSIC max error " + sci(root_worst) + " (< 1e-6), MUSIC max error " +
                sci(music_worst) + " (<= 1e-3, grid 2000), " + sci(t) + " s (< 10 s)"};
}

Verdict identifiability_bound()
{
    const int b39 = max_shrinkage(39, 3);
    const int b47 = max_shrinkage(47, 5);
    bool rejected = false;
    std::string message;
    try {
        std::istringstream cfg("geometry = nested 4 4\nthetas = [-0.8, 0, 0.8]\na = 17\n");
        estimate_from_keys(parse_key_values(cfg));
    } catch (const ConfigError& e) {
        rejected = e.field() == "a";
        message = e.what();
    }
    ExperimentConfig sweep;
    sweep.geometries = {build_nested(4, 4)};
    sweep.thetas = kThetas3;
    sweep.variants = {{Method::Music, 17}};
    sweep.snr_db = {10.0};
    sweep.snapshots = {100};
    bool sweep_rejected = false;
    try {
        rmse_sweep(sweep);
    } catch (const Infeasible&) {
        sweep_rejected = true;
    }
    return {b39 == 16 && b47 == 18 && rejected && sweep_rejected,
            "max_shrinkage(39,3)=" + std::to_string(b39) + ", max_shrinkage(47,5)=" +
                std::to_string(b47) + ", a=17 rejected: " + (rejected ? "yes" : "no") + " [" +
                message + "], sweep rejected: " + (sweep_rejected ? "yes" : "no")};
}

Verdict more_sources_than_sensors()
{
    const ArrayGeometry g = build_nested(4, 4);
    std::vector<double> thetas;
    for (int k = 0; k < 9; ++k)
        thetas.push_back(-0.8 + 0.2 * k);
    const CMatrix r = exact_covariance(SourceScene(thetas), g, 1.0);
    const EstimationResult est = estimate(r, g, 9, 0, Method::RootMusic);
    const double err = max_abs_error(est.thetas, thetas);
    return {err < 1e-6 && est.thetas.size() == 9,
            "8 sensors, 9 sources, max error " + sci(err) + " (< 1e-6)"};
}

ExperimentConfig base_experiment(const Options& opt)
{
    ExperimentConfig cfg;
    cfg.trials = opt.trials;
    cfg.seed = 1;
    cfg.grid = 2000;
    cfg.threads = opt.threads;
    return cfg;
}

ExperimentConfig shrinkage_snr_experiment(const Options& opt)
{
    ExperimentConfig cfg = base_experiment(opt);
    cfg.geometries = {build_nested(4, 4), build_super_nested(4, 4)};
    cfg.thetas = kThetas3;
    cfg.variants = {{Method::Music, 0}, {Method::Music, 3}, {Method::RootMusic, 0},
                    {Method::RootMusic, 3}};
    cfg.axis = SweepAxis::Snr;
    cfg.snr_db = {0.0, 5.0, 10.0};
    cfg.snapshots = {1000};
    return cfg;
}

ExperimentConfig geometry_experiment(const Options& opt)
{
    ExperimentConfig cfg = base_experiment(opt);
    cfg.geometries = {build_nested(4, 4), build_super_nested(4, 4), build_mra(8)};
    cfg.thetas = kThetas5;
    cfg.variants = {{Method::Music, 3}};
    cfg.axis = SweepAxis::Snr;
    cfg.snr_db = {10.0, 15.0, 20.0};
    cfg.snapshots = {1000};
    return cfg;
}

std::vector<ExperimentConfig> snapshot_experiments(const Options& opt)
{
    std::vector<ExperimentConfig> out;
    for (const auto& [geom, method] : {std::pair{build_super_nested(4, 4), Method::Music},
                                       std::pair{build_nested(4, 4), Method::RootMusic}}) {
        ExperimentConfig cfg = base_experiment(opt);
        cfg.geometries = {geom};
        cfg.thetas = kThetas3;
        for (int a : {0, 1, 3, 5})
            cfg.variants.push_back({method, a});
        cfg.axis = SweepAxis::Snapshots;
        cfg.snr_db = {10.0};
        cfg.snapshots = {100, 300, 1000, 3000};
        out.push_back(cfg);
    }
    return out;
}

std::string csv_of(const SweepResult& r)
{
    std::ostringstream s;
    write_sweep_csv(s, r);
    return s.str();
}

struct StatisticalRuns {
    SweepResult shrinkage_snr;
    SweepResult geometries;
    std::vector<SweepResult> snapshots;

    std::string csv() const
    {
        std::string all = csv_of(shrinkage_snr) + csv_of(geometries);
        for (const auto& r : snapshots)
            all += csv_of(r);
        return all;
    }
};

StatisticalRuns run_statistical(const Options& opt)
{
    StatisticalRuns runs;
    runs.shrinkage_snr = rmse_sweep(shrinkage_snr_experiment(opt));
    runs.geometries = rmse_sweep(geometry_experiment(opt));
    for (const auto& cfg : snapshot_experiments(opt))
        runs.snapshots.push_back(rmse_sweep(cfg));
    return runs;
}

Verdict shrinkage_improves_rmse(const SweepResult& r)
{
    bool ok = true;
    std::ostringstream d;
    for (const std::string geom : {"nested(4,4)", "super_nested(4,4)"})
        for (Method m : {Method::Music, Method::RootMusic}) {
            const SweepCurve* c0 = r.find(geom, m, 0);
            const SweepCurve* c3 = r.find(geom, m, 3);
            d << "\n    " << geom << ' ' << method_name(m) << ':';
            for (std::size_t i = 0; i < c0->rmse.size(); ++i) {
                const bool here = c3->rmse[i] <= c0->rmse[i];
                ok = ok && here;
                d << "  " << c0->axis_values[i] << " dB a=0 " << sci(c0->rmse[i]) << " a=3 "
                  << sci(c3->rmse[i]) << (here ? "" : " <-- violated");
            }
        }
    return {ok, "RMSE(a=3) <= RMSE(a=0), K=" + std::to_string(r.config.trials) + d.str()};
}

Verdict mra_lowest_rmse(const SweepResult& r)
{
    const SweepCurve* mra = r.find("mra(8)", Method::Music, 3);
    const SweepCurve* snaq = r.find("super_nested(4,4)", Method::Music, 3);
    const SweepCurve* naq = r.find("nested(4,4)", Method::Music, 3);
    bool ok = true;
    std::ostringstream d;
    for (std::size_t i = 0; i < mra->rmse.size(); ++i) {
        const bool here = mra->rmse[i] <= snaq->rmse[i] && mra->rmse[i] <= naq->rmse[i];
        ok = ok && here;
        d << "\n    " << mra->axis_values[i] << " dB: MRA " << sci(mra->rmse[i]) << " SNAQ2 "
          << sci(snaq->rmse[i]) << " NAQ2 " << sci(naq->rmse[i]) << (here ? "" : " <-- violated");
    }
    return {ok, "D=5, a=3, MUSIC, K=" + std::to_string(r.config.trials) + d.str()};
}

Verdict rmse_falls_with_snapshots(const std::vector<SweepResult>& runs)
{
    bool ok = true;
    std::ostringstream d;
    for (const SweepResult& r : runs)
        for (const SweepCurve& c : r.curves) {
            d << "\n    " << c.geometry << ' ' << method_name(c.variant.method) << " a="
              << c.variant.a << ':';
            for (std::size_t i = 0; i < c.rmse.size(); ++i) {
                const bool here = i == 0 || c.rmse[i] < 1.05 * c.rmse[i - 1];
                ok = ok && here;
                d << ' ' << "T=" << c.axis_values[i] << ' ' << sci(c.rmse[i])
                  << (here ? "" : " <-- violated");
            }
        }
    return {ok, "RMSE[k+1] < 1.05 RMSE[k] for T in {100,300,1000,3000}" + d.str()};
}

Verdict evd_cost_shrinks(const Options& opt)
{
    ExperimentConfig cfg = base_experiment(opt);
    cfg.geometries = {build_nested(4, 4)};
    cfg.thetas = kThetas3;
    cfg.variants = {{Method::RootMusic, 0}, {Method::RootMusic, 16}};
    cfg.snr_db = {10.0};
    cfg.snapshots = {1000};
    cfg.threads = 1;  // keep wall-clock timings free of contention
    cfg.timing = true;
    const SweepResult r = rmse_sweep(cfg);
    const double t0 = r.curves[0].mean_evd_seconds[0];
    const double t16 = r.curves[1].mean_evd_seconds[0];
    return {t16 < t0, "mean EVD time a=0 (M=20) " + sci(t0) + " s, a=16 (M=4) " + sci(t16) +
                          " s, ratio " + sci(t0 / t16)};
}

void write_artifacts(const std::filesystem::path& dir, const StatisticalRuns& runs)
{
    std::filesystem::create_directories(dir);
    auto dump = [&](const std::string& name, const SweepResult& r) {
        std::ofstream(dir / (name + ".csv")) << csv_of(r);
        std::ofstream(dir / (name + ".json")) << sweep_json(r) << '\n';
    };
    dump("shrinkage_snr", runs.shrinkage_snr);
    dump("geometries_snr", runs.geometries);
    dump("snapshots_snaq2_music", runs.snapshots.at(0));
    dump("snapshots_naq2_rmusic", runs.snapshots.at(1));
}

Options parse_options(int argc, char** argv)
{
    Options opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (i + 1 >= argc)
            throw std::invalid_argument("missing value for " + arg);
        const std::string value = argv[++i];
        if (arg == "--threads")
            opt.threads = std::stoi(value);
        else if (arg == "--trials")
            opt.trials = std::stoi(value);
        else if (arg == "--out-dir")
            opt.out_dir = value;
        else
            throw std::invalid_argument("unknown option " + arg);
    }
    if (opt.threads <= 0)
        opt.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return opt;
}

}  // namespace

int main(int argc, char** argv)
{
    Options opt;
    try {
        opt = parse_options(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    int failures = 0;
    auto report = [&](int id, const std::string& name, const std::function<Verdict()>& check) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass)
            ++failures;
        std::cout << (v.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << v.detail
                  << "  (" << sci(seconds_since(t0)) << " s)" << std::endl;
    };

    std::cout << "# threads " << opt.threads << ", trials " << opt.trials << ", seed 1\n";
    report(1, "decomposition identity", decomposition_identity);
    report(2, "subspace preservation", subspace_preservation);
    report(3, "population exactness", population_exactness);
    report(4, "identifiability bound", identifiability_bound);
    report(5, "more sources than sensors", more_sources_than_sensors);

    StatisticalRuns first;
    bool have_runs = false;
    const auto stats_t0 = std::chrono::steady_clock::now();
    try {
        first = run_statistical(opt);
        have_runs = true;
    } catch (const std::exception& e) {
        std::cout << "# statistical runs failed: " << e.what() << '\n';
    }
    std::cout << "# statistical runs (criteria 6-8): " << sci(seconds_since(stats_t0)) << " s\n";
    auto need_runs = [&](auto f) {
        return [&, f]() -> Verdict {
            if (!have_runs)
                return {false, "statistical runs did not complete"};
            return f();
        };
    };
    report(6, "shrinkage lowers RMSE (SNR sweep)",
           need_runs([&] { return shrinkage_improves_rmse(first.shrinkage_snr); }));
    report(7, "MRA has the lowest RMSE",
           need_runs([&] { return mra_lowest_rmse(first.geometries); }));
    report(8, "RMSE falls with snapshots",
           need_runs([&] { return rmse_falls_with_snapshots(first.snapshots); }));
    report(9, "EVD cost falls with shrinkage", [&] { return evd_cost_shrinks(opt); });
    report(10, "determinism across thread counts", need_runs([&] {
               Options other = opt;
               other.threads = opt.threads == 1 ? 3 : 1;
               const std::string a = first.csv();
               const std::string b = run_statistical(other).csv();
               return Verdict{a == b, "threads " + std::to_string(opt.threads) + " vs " +
                                          std::to_string(other.threads) + ", " +
                                          std::to_string(a.size()) + " CSV bytes, " +
                                          (a == b ? "identical" : "different")};
           }));

    if (have_runs && !opt.out_dir.empty())
        write_artifacts(opt.out_dir, first);
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}
