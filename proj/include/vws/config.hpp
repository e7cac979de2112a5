#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vws/montecarlo.hpp"

namespace vws {

/// Validation failure tied to one configuration field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("invalid '" + field + "': " + message), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Flat "key = value" text. '#' starts a comment, blank lines are ignored.
/// List values are comma separated, optionally wrapped in [ ].
struct KeyValueFile {
    std::map<std::string, std::string> entries;
    std::filesystem::path base_dir;  // for resolving relative paths

    bool has(const std::string& key) const { return entries.count(key) != 0; }
};

KeyValueFile parse_key_values(std::istream& in, std::filesystem::path base_dir = {});
KeyValueFile load_key_values(const std::filesystem::path& path);

/// Splits a list value: "[a, b, c]" or "a, b, c". "[]" gives an empty list.
std::vector<std::string> split_list(const std::string& value);

/// Output settings shared by the commands.
struct OutputOptions {
    std::optional<std::filesystem::path> out;
    std::string format = "csv";  // csv | json
    bool degrees = false;
};

struct SweepSettings {
    ExperimentConfig experiment;
    OutputOptions output;
};

/// Keys: geometry/geometries, thetas, powers, method/methods, a, axis, snr_db,
/// snapshots, trials, seed, grid, threads, timing, out, format.
/// Geometry list entries are descriptions ("nested 4 4") or "file <path>".
SweepSettings sweep_from_keys(const KeyValueFile& kv);

struct EstimateSettings {
    ArrayGeometry geometry = build_ula(2);
    std::vector<double> thetas;
    std::vector<double> powers;
    int sources = 0;
    Method method = Method::Music;
    int a = 0;
    int snapshots = 1000;
    double noise_var = 0.1;
    std::uint64_t seed = 1;
    int grid = kDefaultGridSize;
    std::optional<std::filesystem::path> snapshot_file;
    std::optional<std::filesystem::path> spectrum_out;
    OutputOptions output;
};

/// Keys: geometry, thetas, powers, sources, method, a, snapshots, snr_db or
/// noise_var, seed, grid, snapshot_file, spectrum_out, out, format, degrees.
/// Either thetas (simulation) or snapshot_file plus sources must be present.
EstimateSettings estimate_from_keys(const KeyValueFile& kv);

ArrayGeometry parse_geometry_entry(const std::string& entry, const std::filesystem::path& base_dir);

}  // namespace vws
