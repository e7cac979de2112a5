#include "vws/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "vws/coarray.hpp"

namespace vws {

std::string axis_name(SweepAxis axis)
{
    return axis == SweepAxis::Snr ? "snr_db" : "snapshots";
}

SourceScene ExperimentConfig::scene() const
{
    if (powers.empty())
        return SourceScene(thetas);
    return SourceScene(thetas, powers);
}

std::size_t ExperimentConfig::axis_size() const
{
    return axis == SweepAxis::Snr ? snr_db.size() : snapshots.size();
}

double ExperimentConfig::axis_value(std::size_t index) const
{
    return axis == SweepAxis::Snr ? snr_db.at(index) : static_cast<double>(snapshots.at(index));
}

double ExperimentConfig::noise_var_at(std::size_t index) const
{
    return noise_var_from_snr_db(axis == SweepAxis::Snr ? snr_db.at(index) : snr_db.at(0));
}

int ExperimentConfig::snapshots_at(std::size_t index) const
{
    return axis == SweepAxis::Snapshots ? snapshots.at(index) : snapshots.at(0);
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.geometries.empty())
        throw InvalidArgument("no geometry given");
    if (cfg.variants.empty())
        throw InvalidArgument("no method/shrinkage variant given");
    (void)cfg.scene();
    if (cfg.axis_size() == 0)
        throw InvalidArgument("sweep axis '" + axis_name(cfg.axis) + "' is empty");
    if (cfg.snr_db.empty())
        throw InvalidArgument("snr_db is empty");
    if (cfg.snapshots.empty())
        throw InvalidArgument("snapshots is empty");
    for (int t : cfg.snapshots)
        if (t < 1)
            throw InvalidArgument("snapshot counts must be >= 1");
    for (double snr : cfg.snr_db)
        if (std::isnan(snr) || snr == -std::numeric_limits<double>::infinity())
            throw InvalidArgument("snr_db values must be numbers or +inf");
    for (const Variant& v : cfg.variants)
        if (v.a < 0)
            throw InvalidArgument("shrinkage a must be >= 0");
    if (cfg.trials < 1)
        throw InvalidArgument("trials must be >= 1");
    if (cfg.grid < 1)
        throw InvalidArgument("grid must be >= 1");
    if (cfg.threads < 1)
        throw InvalidArgument("threads must be >= 1");
}

std::string geometry_feasibility(const ExperimentConfig& cfg, const ArrayGeometry& geom)
{
    const Coarray ca = difference_coarray(geom);
    const int d = static_cast<int>(cfg.thetas.size());
    int limit = 0;
    try {
        limit = max_shrinkage(ca.udof, d);
    } catch (const Infeasible& e) {
        return geom.name() + ": " + e.what();
    }
    for (const Variant& v : cfg.variants)
        if (v.a > limit)
            return geom.name() + ": a=" + std::to_string(v.a) + " exceeds the maximum a=" +
                   std::to_string(limit) + " for udof=" + std::to_string(ca.udof) +
                   " and " + std::to_string(d) + " sources";
    return {};
}

std::vector<TrialOutcome> run_trial(const ExperimentConfig& cfg, const ArrayGeometry& geom,
                                    std::size_t axis_index, std::size_t trial_index)
{
    const SourceScene scene = cfg.scene();
    const auto d = static_cast<int>(scene.size());
    Rng rng = Rng::stream(cfg.seed, axis_index, trial_index);
    const SnapshotSet x = simulate_snapshots(scene, geom, cfg.snapshots_at(axis_index),
                                             cfg.noise_var_at(axis_index), rng);
    const CoarraySignal xd = coarray_signal(sample_covariance(x), geom);

    std::vector<TrialOutcome> out;
    out.reserve(cfg.variants.size());
    for (const Variant& v : cfg.variants) {
        const SmoothedMatrix r = vws_smooth(xd, v.a);

        const auto t0 = std::chrono::steady_clock::now();
        const SubspacePair sub = noise_subspace(r, d);
        const auto t1 = std::chrono::steady_clock::now();

        const EstimationResult est =
            v.method == Method::RootMusic
                ? root_music(sub.noise, d)
                : pick_peaks(music_spectrum(sub.noise, uniform_grid(cfg.grid)), d);

        TrialOutcome o;
        o.squared_errors.resize(static_cast<std::size_t>(d));
        for (std::size_t k = 0; k < o.squared_errors.size(); ++k) {
            const double e = est.thetas[k] - scene.thetas()[k];
            o.squared_errors[k] = e * e;
        }
        o.failed = est.fill_count > 0 || est.used_outer_roots;
        if (cfg.timing)
            o.evd_seconds = std::chrono::duration<double>(t1 - t0).count();
        out.push_back(std::move(o));
    }
    return out;
}

const SweepCurve* SweepResult::find(const std::string& geometry, Method method, int a) const
{
    for (const SweepCurve& c : curves)
        if (c.geometry == geometry && c.variant.method == method && c.variant.a == a)
            return &c;
    return nullptr;
}

namespace {

// Outcomes indexed [axis][trial][variant]; trials run on a worker pool but the
// reduction below always walks them in index order.
std::vector<std::vector<std::vector<TrialOutcome>>> run_all_trials(const ExperimentConfig& cfg,
                                                                   const ArrayGeometry& geom)
{
    const std::size_t n_axis = cfg.axis_size();
    const auto n_trials = static_cast<std::size_t>(cfg.trials);
    std::vector<std::vector<std::vector<TrialOutcome>>> outcomes(
        n_axis, std::vector<std::vector<TrialOutcome>>(n_trials));

    const std::size_t total = n_axis * n_trials;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < total; job = next++) {
            const std::size_t ai = job / n_trials;
            const std::size_t ti = job % n_trials;
            outcomes[ai][ti] = run_trial(cfg, geom, ai, ti);
        }
    };

    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), total);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
    }
    return outcomes;
}

}  // namespace

SweepResult rmse_sweep(const ExperimentConfig& cfg)
{
    validate(cfg);
    SweepResult result;
    result.config = cfg;
    const double d = static_cast<double>(cfg.thetas.size());

    for (const ArrayGeometry& geom : cfg.geometries) {
        if (std::string why = geometry_feasibility(cfg, geom); !why.empty()) {
            result.warnings.push_back(std::move(why));
            continue;
        }
        const auto outcomes = run_all_trials(cfg, geom);

        for (std::size_t vi = 0; vi < cfg.variants.size(); ++vi) {
            SweepCurve curve;
            curve.geometry = geom.name();
            curve.variant = cfg.variants[vi];
            for (std::size_t ai = 0; ai < outcomes.size(); ++ai) {
                double sum_sq = 0.0;
                double sum_time = 0.0;
                int fills = 0;
                for (const auto& trial : outcomes[ai]) {
                    const TrialOutcome& o = trial[vi];
                    for (double e : o.squared_errors)
                        sum_sq += e;
                    sum_time += o.evd_seconds;
                    fills += o.failed ? 1 : 0;
                }
                curve.axis_values.push_back(cfg.axis_value(ai));
                curve.rmse.push_back(std::sqrt(sum_sq / (cfg.trials * d)));
                curve.fills.push_back(fills);
                curve.mean_evd_seconds.push_back(cfg.timing
                                                     ? sum_time / cfg.trials
                                                     : std::numeric_limits<double>::quiet_NaN());
            }
            result.curves.push_back(std::move(curve));
        }
    }
    if (result.curves.empty())
        throw Infeasible("no feasible geometry in the experiment");
    return result;
}

SweepResult compare_geometries(ExperimentConfig templ, std::vector<ArrayGeometry> geometries)
{
    templ.geometries = std::move(geometries);
    return rmse_sweep(templ);
}

}  // namespace vws
