#include "vws/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vws/coarray.hpp"
#include "vws/config.hpp"
#include "vws/estimators.hpp"
#include "vws/io.hpp"
#include "vws/montecarlo.hpp"

namespace vws {

namespace {

std::string fixed6(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string geom_line(const ArrayGeometry& g)
{
    std::ostringstream line;
    write_geometry(line, g);
    return line.str();
}

double to_display(double theta, bool degrees)
{
    return degrees ? std::asin(theta) * 180.0 / kPi : theta;
}

struct GeometryArgs {
    std::vector<std::string> description;
    int sources = 1;
    std::string out;
};

int cmd_geometry(const GeometryArgs& args, std::ostream& out, std::ostream& err)
{
    std::string desc;
    for (const auto& tok : args.description)
        desc += (desc.empty() ? "" : " ") + tok;

    ArrayGeometry geom = build_ula(2);
    try {
        geom = parse_geometry_entry(desc, {});
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: invalid 'geometry': " << e.what() << '\n';
        return kExitValidation;
    }
    if (args.sources < 1) {
        err << "error: invalid 'sources': must be >= 1\n";
        return kExitValidation;
    }

    const Coarray ca = difference_coarray(geom);
    out << "geometry: " << geom.name() << '\n';
    out << "positions:";
    for (int p : geom.positions())
        out << ' ' << p;
    out << "\nsensors: " << geom.size() << "\naperture: " << geom.aperture() << '\n';
    out << "lags:";
    for (int l : ca.lags)
        out << ' ' << l;
    out << "\nweights (lag: count, non-negative lags; w(-l) = w(l)):\n";
    for (int l : ca.lags)
        if (l >= 0)
            out << "  " << l << ": " << ca.weight(l) << '\n';
    out << "UDOF: " << ca.udof << "\nG: " << ca.g << '\n';
    out << "sources: " << args.sources << '\n';
    try {
        out << "max a: " << max_shrinkage(ca.udof, args.sources) << '\n';
    } catch (const Infeasible& e) {
        out << "max a: infeasible (" << e.what() << ")\n";
    }

    if (!args.out.empty()) {
        std::ofstream f(args.out);
        write_geometry(f, geom);
        if (!f) {
            err << "error: cannot write '" << args.out << "'\n";
            return kExitRuntime;
        }
    }
    return kExitOk;
}

struct EstimateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::string out;
    std::string format;
    std::string spectrum;
    bool degrees = false;
};

CMatrix load_snapshots(const std::filesystem::path& path)
{
    const bool csv = path.extension() == ".csv";
    std::ifstream in(path, csv ? std::ios::in : std::ios::binary);
    if (!in)
        throw IoError("cannot open snapshot file '" + path.string() + "'");
    return csv ? read_snapshots_csv(in) : read_snapshots_binary(in);
}

int cmd_estimate(const EstimateArgs& args, std::ostream& out, std::ostream& err)
{
    EstimateSettings s;
    try {
        s = estimate_from_keys(load_key_values(args.config));
        if (args.seed)
            s.seed = *args.seed;
        if (args.grid) {
            if (*args.grid < 1)
                throw ConfigError("grid", "must be >= 1");
            s.grid = *args.grid;
        }
        if (!args.out.empty())
            s.output.out = args.out;
        if (!args.format.empty())
            s.output.format = args.format;
        if (args.degrees)
            s.output.degrees = true;
        if (!args.spectrum.empty())
            s.spectrum_out = args.spectrum;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    CMatrix cov;
    try {
        if (s.snapshot_file) {
            SnapshotSet x{s.geometry, load_snapshots(*s.snapshot_file)};
            if (x.data.rows() != static_cast<Eigen::Index>(s.geometry.size())) {
                err << "error: invalid 'snapshot_file': " << x.data.rows()
                    << " rows but the geometry has " << s.geometry.size() << " sensors\n";
                return kExitValidation;
            }
            cov = sample_covariance(x);
        } else {
            const SourceScene scene =
                s.powers.empty() ? SourceScene(s.thetas) : SourceScene(s.thetas, s.powers);
            cov = sample_covariance(
                simulate_snapshots(scene, s.geometry, s.snapshots, s.noise_var, s.seed));
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    const CoarraySignal xd = coarray_signal(cov, s.geometry);
    const SmoothedMatrix r = vws_smooth(xd, s.a);
    const SubspacePair sub = noise_subspace(r, s.sources);
    EstimationResult est;
    std::optional<Spectrum> spectrum;
    if (s.method == Method::RootMusic) {
        est = root_music(sub.noise, s.sources);
    } else {
        spectrum = music_spectrum(sub.noise, uniform_grid(s.grid));
        est = pick_peaks(*spectrum, s.sources);
    }

    out << "# geometry: " << geom_line(s.geometry);
    out << "# method: " << method_name(s.method) << '\n';
    out << "# a: " << s.a << "  M: " << r.plan.m << "  P: " << r.plan.p << '\n';
    out << "# sources: " << s.sources << '\n';
    if (s.snapshot_file) {
        out << "# snapshot_file: " << s.snapshot_file->string() << '\n';
    } else {
        out << "# snapshots: " << s.snapshots << '\n';
        char nv[32];
        const auto end = std::to_chars(nv, nv + sizeof nv, s.noise_var).ptr;
        out << "# noise_var: " << std::string(nv, end) << '\n';
        out << "# seed: " << s.seed << '\n';
    }
    if (s.method == Method::Music)
        out << "# grid: " << s.grid << '\n';
    out << "theta" << (s.output.degrees ? " (deg)" : "") << ":";
    for (double t : est.thetas)
        out << ' ' << fixed6(to_display(t, s.output.degrees));
    out << '\n';
    if (s.method == Method::Music) {
        out << "peaks_found: " << est.peaks_found << "\nfill_count: " << est.fill_count << '\n';
    } else {
        out << "root_moduli:";
        for (double m : est.root_moduli)
            out << ' ' << fixed6(m);
        out << "\nouter_roots_used: " << (est.used_outer_roots ? "yes" : "no") << '\n';
    }

    if (s.spectrum_out) {
        if (!spectrum) {
            err << "warning: spectrum output ignored for root-MUSIC\n";
        } else {
            std::ofstream f(*s.spectrum_out);
            write_spectrum_csv(f, *spectrum);
            if (!f) {
                err << "error: cannot write '" << s.spectrum_out->string() << "'\n";
                return kExitRuntime;
            }
        }
    }
    if (s.output.out) {
        std::ofstream f(*s.output.out);
        if (s.output.format == "json") {
            std::vector<double> shown;
            for (double t : est.thetas)
                shown.push_back(to_display(t, s.output.degrees));
            nlohmann::json doc = {
                {"geometry", {{"name", s.geometry.name()}, {"positions", s.geometry.positions()}}},
                {"method", method_name(s.method)},
                {"a", s.a},
                {"sources", s.sources},
                {"snapshots", s.snapshots},
                {"noise_var", s.noise_var},
                {"seed", s.seed},
                {"grid", s.grid},
                {"degrees", s.output.degrees},
                {"thetas", shown},
                {"fill_count", est.fill_count},
                {"outer_roots_used", est.used_outer_roots}};
            if (s.snapshot_file)
                doc["snapshot_file"] = s.snapshot_file->string();
            f << doc.dump(2) << '\n';
        } else {
            f << "index,theta\n";
            for (std::size_t i = 0; i < est.thetas.size(); ++i)
                f << i << ',' << std::setprecision(17) << to_display(est.thetas[i], s.output.degrees)
                  << '\n';
        }
        if (!f) {
            err << "error: cannot write '" << s.output.out->string() << "'\n";
            return kExitRuntime;
        }
    }
    return kExitOk;
}

struct SweepArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> grid;
    std::optional<int> threads;
    std::string out;
    std::string format;
    bool timing = false;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err)
{
    SweepSettings s;
    try {
        s = sweep_from_keys(load_key_values(args.config));
        ExperimentConfig& cfg = s.experiment;
        if (args.seed)
            cfg.seed = *args.seed;
        if (args.trials) {
            if (*args.trials < 1)
                throw ConfigError("trials", "must be >= 1");
            cfg.trials = *args.trials;
        }
        if (args.grid) {
            if (*args.grid < 1)
                throw ConfigError("grid", "must be >= 1");
            cfg.grid = *args.grid;
        }
        if (args.threads) {
            if (*args.threads < 1)
                throw ConfigError("threads", "must be >= 1");
            cfg.threads = *args.threads;
        }
        if (args.timing)
            cfg.timing = true;
        if (!args.out.empty())
            s.output.out = args.out;
        if (!args.format.empty())
            s.output.format = args.format;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    // Check the output location before spending time on trials.
    if (s.output.out) {
        std::ofstream probe(*s.output.out);
        if (!probe) {
            err << "error: cannot write '" << s.output.out->string() << "'\n";
            return kExitRuntime;
        }
    }

    SweepResult result;
    try {
        result = rmse_sweep(s.experiment);
    } catch (const Infeasible& e) {
        for (const ArrayGeometry& g : s.experiment.geometries)
            if (auto why = geometry_feasibility(s.experiment, g); !why.empty())
                err << "error: invalid 'a': " << why << '\n';
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    for (const auto& w : result.warnings)
        err << "warning: skipped " << w << '\n';

    out << "# seed: " << result.config.seed << "  trials: " << result.config.trials
        << "  axis: " << axis_name(result.config.axis) << '\n';
    out << std::left << std::setw(20) << "geometry" << std::setw(15) << "method" << std::setw(4)
        << "a" << std::setw(12) << axis_name(result.config.axis) << std::setw(14) << "rmse"
        << "fills\n";
    for (const SweepCurve& c : result.curves)
        for (std::size_t i = 0; i < c.axis_values.size(); ++i) {
            char rmse[32];
            std::snprintf(rmse, sizeof rmse, "%.6e", c.rmse[i]);
            std::ostringstream axis;
            axis << c.axis_values[i];
            out << std::setw(20) << c.geometry << std::setw(15) << method_name(c.variant.method)
                << std::setw(4) << c.variant.a << std::setw(12) << axis.str() << std::setw(14)
                << rmse << c.fills[i] << '\n';
        }

    if (s.output.out) {
        const auto& path = *s.output.out;
        std::ofstream f(path);
        if (s.output.format == "json") {
            f << sweep_json(result) << '\n';
        } else {
            write_sweep_csv(f, result);
            std::ofstream side(path.string() + ".json");
            side << sweep_json(result) << '\n';
            if (!side) {
                err << "error: cannot write '" << path.string() << ".json'\n";
                return kExitRuntime;
            }
        }
        if (!f) {
            err << "error: cannot write '" << path.string() << "'\n";
            return kExitRuntime;
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sparse-array DOA estimation with variable-window-size coarray smoothing",
                 "vws_doa"};
    app.require_subcommand(1);

    GeometryArgs geo;
    auto* geometry = app.add_subcommand("geometry", "Inspect an array geometry and its coarray");
    geometry->add_option("description", geo.description,
                         "ula N | nested N1 N2 | super_nested N1 N2 | mra N | file PATH")
        ->required()
        ->expected(1, 3);
    geometry->add_option("--sources", geo.sources, "Source count for the shrinkage bound");
    geometry->add_option("--out", geo.out, "Export the geometry as 'name: p0 p1 ...'");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Estimate DOAs for one snapshot set");
    estimate->add_option("config", est.config, "Config file")->required();
    estimate->add_option("--seed", est.seed, "Master seed");
    estimate->add_option("--grid", est.grid, "MUSIC grid size");
    estimate->add_option("--out", est.out, "Write estimates to this file");
    estimate->add_option("--format", est.format, "Output file format")
        ->check(CLI::IsMember({"csv", "json"}));
    estimate->add_option("--spectrum", est.spectrum, "Write the MUSIC spectrum as CSV");
    estimate->add_flag("--degrees", est.degrees, "Print angles in degrees");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo RMSE sweep");
    sweep->add_option("config", sw.config, "Config file")->required();
    sweep->add_option("--seed", sw.seed, "Master seed");
    sweep->add_option("--trials", sw.trials, "Trials per axis value");
    sweep->add_option("--grid", sw.grid, "MUSIC grid size");
    sweep->add_option("--threads", sw.threads, "Worker threads");
    sweep->add_option("--out", sw.out, "Result file (CSV gets a .json sidecar)");
    sweep->add_option("--format", sw.format, "Result format")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--timing", sw.timing, "Record EVD wall time");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (*geometry)
            return cmd_geometry(geo, out, err);
        if (*estimate)
            return cmd_estimate(est, out, err);
        return cmd_sweep(sw, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace vws
