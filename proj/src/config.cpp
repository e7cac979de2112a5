#include "vws/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "vws/coarray.hpp"
#include "vws/io.hpp"

namespace vws {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& field, const std::string& tok)
{
    if (tok == "inf" || tok == "+inf")
        return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != tok.size())
        throw ConfigError(field, "'" + tok + "' is not a number");
    return v;
}

long long to_integer(const std::string& field, const std::string& tok)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != tok.size())
        throw ConfigError(field, "'" + tok + "' is not an integer");
    return v;
}

int to_int(const std::string& field, const std::string& tok)
{
    const long long v = to_integer(field, tok);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(field, "'" + tok + "' is out of range");
    return static_cast<int>(v);
}

bool to_bool(const std::string& field, const std::string& tok)
{
    if (tok == "true" || tok == "yes" || tok == "1")
        return true;
    if (tok == "false" || tok == "no" || tok == "0")
        return false;
    throw ConfigError(field, "'" + tok + "' is not a boolean");
}

class Reader {
public:
    explicit Reader(const KeyValueFile& kv, std::set<std::string> allowed) : kv_(kv)
    {
        for (const auto& [key, value] : kv.entries)
            if (allowed.count(key) == 0)
                throw ConfigError(key, "unknown key");
    }

    // First of `keys` that is present.
    std::optional<std::pair<std::string, std::string>> get(std::initializer_list<const char*> keys) const
    {
        for (const char* k : keys)
            if (auto it = kv_.entries.find(k); it != kv_.entries.end())
                return std::make_pair(it->first, it->second);
        return std::nullopt;
    }

    std::vector<double> doubles(std::initializer_list<const char*> keys, std::vector<double> def) const
    {
        auto e = get(keys);
        if (!e)
            return def;
        std::vector<double> out;
        for (const auto& tok : split_list(e->second))
            out.push_back(to_double(e->first, tok));
        return out;
    }

    std::vector<int> ints(std::initializer_list<const char*> keys, std::vector<int> def) const
    {
        auto e = get(keys);
        if (!e)
            return def;
        std::vector<int> out;
        for (const auto& tok : split_list(e->second))
            out.push_back(to_int(e->first, tok));
        return out;
    }

    int integer(const char* key, int def) const
    {
        auto e = get({key});
        return e ? to_int(key, trim(e->second)) : def;
    }

    std::optional<std::string> text(const char* key) const
    {
        auto e = get({key});
        if (!e)
            return std::nullopt;
        return trim(e->second);
    }

private:
    const KeyValueFile& kv_;
};

std::uint64_t parse_seed(const std::string& tok)
{
    const long long v = to_integer("seed", tok);
    if (v < 0)
        throw ConfigError("seed", "must be non-negative");
    return static_cast<std::uint64_t>(v);
}

OutputOptions read_output(const Reader& r)
{
    OutputOptions o;
    if (auto out = r.text("out"))
        o.out = *out;
    if (auto fmt = r.text("format")) {
        if (*fmt != "csv" && *fmt != "json")
            throw ConfigError("format", "must be csv or json");
        o.format = *fmt;
    }
    if (auto deg = r.text("degrees"))
        o.degrees = to_bool("degrees", *deg);
    return o;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

KeyValueFile parse_key_values(std::istream& in, std::filesystem::path base_dir)
{
    KeyValueFile kv;
    kv.base_dir = std::move(base_dir);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno), "empty key");
        if (kv.entries.count(key) != 0)
            throw ConfigError(key, "given more than once");
        kv.entries[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValueFile load_key_values(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path.string() + "'");
    return parse_key_values(in, path.parent_path());
}

std::vector<std::string> split_list(const std::string& value)
{
    std::string v = trim(value);
    if (v.size() >= 2 && v.front() == '[' && v.back() == ']')
        v = v.substr(1, v.size() - 2);
    std::vector<std::string> out;
    if (trim(v).empty())
        return out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(trim(item));
    return out;
}

ArrayGeometry parse_geometry_entry(const std::string& entry, const std::filesystem::path& base_dir)
{
    const std::string e = trim(entry);
    if (e.rfind("file ", 0) == 0) {
        const auto path = resolve(base_dir, trim(e.substr(5)));
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open geometry file '" + path.string() + "'");
        return read_geometry(in);
    }
    return geometry_from_description(e);
}

SweepSettings sweep_from_keys(const KeyValueFile& kv)
{
    const Reader r(kv, {"geometry", "geometries", "thetas", "powers", "method", "methods", "a",
                        "axis", "snr_db", "snapshots", "trials", "seed", "grid", "threads",
                        "timing", "out", "format"});
    SweepSettings s;
    ExperimentConfig& cfg = s.experiment;

    auto geoms = r.get({"geometries", "geometry"});
    if (!geoms)
        throw ConfigError("geometries", "missing");
    for (const auto& entry : split_list(geoms->second)) {
        try {
            cfg.geometries.push_back(parse_geometry_entry(entry, kv.base_dir));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(geoms->first, e.what());
        } catch (const std::out_of_range& e) {
            throw ConfigError(geoms->first, e.what());
        }
    }
    if (cfg.geometries.empty())
        throw ConfigError(geoms->first, "empty list");

    cfg.thetas = r.doubles({"thetas"}, {});
    if (cfg.thetas.empty())
        throw ConfigError("thetas", "missing or empty");
    cfg.powers = r.doubles({"powers"}, {});
    try {
        (void)cfg.scene();
    } catch (const InvalidArgument& e) {
        throw ConfigError(r.get({"powers"}) ? "thetas/powers" : "thetas", e.what());
    }

    std::vector<Method> methods;
    auto mentry = r.get({"methods", "method"});
    for (const auto& tok : split_list(mentry ? mentry->second : "music")) {
        try {
            methods.push_back(parse_method(tok));
        } catch (const InvalidArgument& e) {
            throw ConfigError(mentry->first, e.what());
        }
    }
    if (methods.empty())
        throw ConfigError(mentry->first, "empty list");
    const std::vector<int> shrinkages = r.ints({"a"}, {0});
    if (shrinkages.empty())
        throw ConfigError("a", "empty list");
    for (int a : shrinkages)
        if (a < 0)
            throw ConfigError("a", "must be >= 0");
    for (Method m : methods)
        for (int a : shrinkages)
            cfg.variants.push_back({m, a});

    cfg.snr_db = r.doubles({"snr_db"}, {10.0});
    cfg.snapshots = r.ints({"snapshots"}, {1000});
    if (cfg.snr_db.empty())
        throw ConfigError("snr_db", "empty list");
    if (cfg.snapshots.empty())
        throw ConfigError("snapshots", "empty list");
    for (double v : cfg.snr_db)
        if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
            throw ConfigError("snr_db", "values must be numbers or inf");
    for (int t : cfg.snapshots)
        if (t < 1)
            throw ConfigError("snapshots", "must be >= 1");

    if (auto axis = r.text("axis")) {
        if (*axis == "snr" || *axis == "snr_db")
            cfg.axis = SweepAxis::Snr;
        else if (*axis == "snapshots")
            cfg.axis = SweepAxis::Snapshots;
        else
            throw ConfigError("axis", "must be snr or snapshots");
    } else {
        cfg.axis = cfg.snapshots.size() > 1 && cfg.snr_db.size() == 1 ? SweepAxis::Snapshots
                                                                       : SweepAxis::Snr;
    }
    if (cfg.axis == SweepAxis::Snr && cfg.snapshots.size() != 1)
        throw ConfigError("snapshots", "must be a single value when sweeping snr");
    if (cfg.axis == SweepAxis::Snapshots && cfg.snr_db.size() != 1)
        throw ConfigError("snr_db", "must be a single value when sweeping snapshots");

    cfg.trials = r.integer("trials", cfg.trials);
    if (cfg.trials < 1)
        throw ConfigError("trials", "must be >= 1");
    if (auto seed = r.text("seed"))
        cfg.seed = parse_seed(*seed);
    cfg.grid = r.integer("grid", cfg.grid);
    if (cfg.grid < 1)
        throw ConfigError("grid", "must be >= 1");
    cfg.threads = r.integer("threads", cfg.threads);
    if (cfg.threads < 1)
        throw ConfigError("threads", "must be >= 1");
    if (auto timing = r.text("timing"))
        cfg.timing = to_bool("timing", *timing);

    s.output = read_output(r);
    return s;
}

EstimateSettings estimate_from_keys(const KeyValueFile& kv)
{
    const Reader r(kv, {"geometry", "thetas", "powers", "sources", "method", "a", "snapshots",
                        "snr_db", "noise_var", "seed", "grid", "snapshot_file", "spectrum_out",
                        "out", "format", "degrees"});
    EstimateSettings s;

    auto geom = r.text("geometry");
    if (!geom)
        throw ConfigError("geometry", "missing");
    try {
        s.geometry = parse_geometry_entry(*geom, kv.base_dir);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("geometry", e.what());
    } catch (const std::out_of_range& e) {
        throw ConfigError("geometry", e.what());
    }

    s.thetas = r.doubles({"thetas"}, {});
    s.powers = r.doubles({"powers"}, {});
    if (auto file = r.text("snapshot_file"))
        s.snapshot_file = resolve(kv.base_dir, *file);
    if (auto spec = r.text("spectrum_out"))
        s.spectrum_out = *spec;

    if (!s.thetas.empty()) {
        try {
            (void)(s.powers.empty() ? SourceScene(s.thetas) : SourceScene(s.thetas, s.powers));
        } catch (const InvalidArgument& e) {
            throw ConfigError("thetas", e.what());
        }
    }
    s.sources = r.integer("sources", static_cast<int>(s.thetas.size()));
    if (s.sources < 1)
        throw ConfigError(s.thetas.empty() ? "sources" : "thetas",
                          "need thetas to simulate or sources with a snapshot_file");
    if (!s.thetas.empty() && s.sources != static_cast<int>(s.thetas.size()))
        throw ConfigError("sources", "disagrees with the number of thetas");
    if (!s.snapshot_file && s.thetas.empty())
        throw ConfigError("thetas", "missing (required unless snapshot_file is given)");

    if (auto m = r.text("method")) {
        try {
            s.method = parse_method(*m);
        } catch (const InvalidArgument& e) {
            throw ConfigError("method", e.what());
        }
    }
    s.a = r.integer("a", 0);
    if (s.a < 0)
        throw ConfigError("a", "must be >= 0");
    const Coarray ca = difference_coarray(s.geometry);
    int limit = 0;
    try {
        limit = max_shrinkage(ca.udof, s.sources);
    } catch (const Infeasible& e) {
        throw ConfigError(s.thetas.empty() ? "sources" : "thetas", e.what());
    }
    if (s.a > limit)
        throw ConfigError("a", std::to_string(s.a) + " exceeds the maximum a=" +
                                   std::to_string(limit) + " (udof=" + std::to_string(ca.udof) +
                                   ", " + std::to_string(s.sources) + " sources)");

    s.snapshots = r.integer("snapshots", s.snapshots);
    if (s.snapshots < 1)
        throw ConfigError("snapshots", "must be >= 1");
    if (r.get({"noise_var"}) && r.get({"snr_db"}))
        throw ConfigError("noise_var", "give either noise_var or snr_db, not both");
    if (auto nv = r.text("noise_var")) {
        s.noise_var = to_double("noise_var", *nv);
        if (!(s.noise_var >= 0.0) || !std::isfinite(s.noise_var))
            throw ConfigError("noise_var", "must be finite and >= 0");
    } else if (auto snr = r.text("snr_db")) {
        const double v = to_double("snr_db", *snr);
        if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
            throw ConfigError("snr_db", "must be a number or inf");
        s.noise_var = noise_var_from_snr_db(v);
    }
    if (auto seed = r.text("seed"))
        s.seed = parse_seed(*seed);
    s.grid = r.integer("grid", s.grid);
    if (s.grid < 1)
        throw ConfigError("grid", "must be >= 1");
    s.output = read_output(r);
    return s;
}

}  // namespace vws
