#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vws/estimators.hpp"
#include "vws/geometry.hpp"
#include "vws/signal_model.hpp"

namespace vws {

enum class SweepAxis { Snr, Snapshots };

std::string axis_name(SweepAxis axis);

/// One estimator setting evaluated on every trial.
struct Variant {
    Method method = Method::Music;
    int a = 0;
};

/// A Monte Carlo experiment. Every (geometry, variant) pair is evaluated on the
/// same snapshot draws, so curves for different a, methods, and geometries with
/// the same sensor count are paired trial by trial.
struct ExperimentConfig {
    std::vector<ArrayGeometry> geometries;
    std::vector<double> thetas;
    std::vector<double> powers;        // empty = unit powers
    std::vector<Variant> variants;
    SweepAxis axis = SweepAxis::Snr;
    std::vector<double> snr_db;        // axis values, or a single fixed SNR
    std::vector<int> snapshots;        // axis values, or a single fixed T
    int trials = 500;
    std::uint64_t seed = 1;
    int grid = kDefaultGridSize;
    int threads = 1;
    bool timing = false;               // record EVD wall time per trial

    SourceScene scene() const;
    std::size_t axis_size() const;
    double axis_value(std::size_t index) const;
    double noise_var_at(std::size_t index) const;
    int snapshots_at(std::size_t index) const;
};

/// Throws InvalidArgument for malformed settings. Geometry feasibility is
/// checked separately by geometry_feasibility.
void validate(const ExperimentConfig& cfg);

/// Empty when every variant's a is within max_shrinkage for this geometry,
/// otherwise a message naming the bound.
std::string geometry_feasibility(const ExperimentConfig& cfg, const ArrayGeometry& geom);

struct TrialOutcome {
    std::vector<double> squared_errors;  // per source, sine units
    bool failed = false;                 // MUSIC fill or root-MUSIC outer-root fallback
    double evd_seconds = 0.0;
};

/// Simulates one snapshot set from stream (seed, axis_index, trial_index) and
/// runs every variant on it. Estimates are matched to the true thetas by
/// ascending order.
std::vector<TrialOutcome> run_trial(const ExperimentConfig& cfg, const ArrayGeometry& geom,
                                    std::size_t axis_index, std::size_t trial_index);

struct SweepCurve {
    std::string geometry;
    Variant variant;
    std::vector<double> axis_values;
    std::vector<double> rmse;
    std::vector<int> fills;
    std::vector<double> mean_evd_seconds;  // NaN unless timing is enabled
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepCurve> curves;      // geometry-major, then variant order
    std::vector<std::string> warnings;   // infeasible geometries that were skipped

    const SweepCurve* find(const std::string& geometry, Method method, int a) const;
};

/// RMSE(axis) = sqrt(sum of squared errors / (trials * D)) for every geometry and
/// variant. Infeasible geometries are skipped with a warning; if none is
/// feasible Infeasible is thrown.
SweepResult rmse_sweep(const ExperimentConfig& cfg);

/// rmse_sweep over `geometries` with the remaining settings from `templ`.
SweepResult compare_geometries(ExperimentConfig templ, std::vector<ArrayGeometry> geometries);

}  // namespace vws
