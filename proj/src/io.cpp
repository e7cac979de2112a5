#include "vws/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace vws {

namespace {

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& tok)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw IoError("not a number: '" + tok + "'");
    }
    if (used != tok.size())
        throw IoError("not a number: '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

// Quotes a CSV cell that holds a separator, quote, or line break.
std::string csv_cell(const std::string& v)
{
    if (v.find_first_of(",\"\n") == std::string::npos)
        return v;
    std::string q = "\"";
    for (char c : v) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + '"';
}

void put_u64(std::ostream& out, std::uint64_t v)
{
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in)
{
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
        throw IoError("truncated binary snapshot file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

nlohmann::json variant_json(const Variant& v)
{
    return {{"method", method_name(v.method)}, {"a", v.a}};
}

}  // namespace

void write_geometry(std::ostream& out, const ArrayGeometry& geom)
{
    out << geom.name() << ":";
    for (int p : geom.positions())
        out << ' ' << p;
    out << '\n';
}

ArrayGeometry read_geometry(std::istream& in)
{
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw IoError("geometry line lacks 'name:' prefix");
        std::string name = line.substr(0, colon);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        std::istringstream rest(line.substr(colon + 1));
        std::vector<int> pos;
        std::string tok;
        while (rest >> tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw IoError("bad sensor position '" + tok + "'");
            pos.push_back(v);
        }
        try {
            return ArrayGeometry(name, std::move(pos));
        } catch (const InvalidArgument& e) {
            throw IoError(std::string("invalid geometry: ") + e.what());
        }
    }
    throw IoError("no geometry line found");
}

void write_snapshots_csv(std::ostream& out, const CMatrix& data)
{
    out << data.rows() << ',' << data.cols() << '\n';
    for (Eigen::Index k = 0; k < data.rows(); ++k) {
        for (Eigen::Index t = 0; t < data.cols(); ++t) {
            if (t > 0)
                out << ',';
            out << num(data(k, t).real()) << ',' << num(data(k, t).imag());
        }
        out << '\n';
    }
}

CMatrix read_snapshots_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw IoError("empty snapshot file");
    const auto header = split(line, ',');
    if (header.size() != 2)
        throw IoError("snapshot header must be 'N,T'");
    const double nd = parse_double(header[0]), td = parse_double(header[1]);
    if (nd < 1 || td < 1 || nd != std::floor(nd) || td != std::floor(td))
        throw IoError("snapshot header has invalid sizes");
    const auto n = static_cast<Eigen::Index>(nd), t = static_cast<Eigen::Index>(td);

    CMatrix data(n, t);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (!std::getline(in, line))
            throw IoError("snapshot file has fewer than N rows");
        const auto cells = split(line, ',');
        if (cells.size() != static_cast<std::size_t>(2 * t))
            throw IoError("snapshot row " + std::to_string(k) + " does not hold 2T values");
        for (Eigen::Index c = 0; c < t; ++c)
            data(k, c) = {parse_double(cells[static_cast<std::size_t>(2 * c)]),
                          parse_double(cells[static_cast<std::size_t>(2 * c + 1)])};
    }
    return data;
}

void write_snapshots_binary(std::ostream& out, const CMatrix& data)
{
    put_u64(out, static_cast<std::uint64_t>(data.rows()));
    put_u64(out, static_cast<std::uint64_t>(data.cols()));
    for (Eigen::Index k = 0; k < data.rows(); ++k)
        for (Eigen::Index t = 0; t < data.cols(); ++t) {
            put_u64(out, std::bit_cast<std::uint64_t>(data(k, t).real()));
            put_u64(out, std::bit_cast<std::uint64_t>(data(k, t).imag()));
        }
}

CMatrix read_snapshots_binary(std::istream& in)
{
    const auto n = get_u64(in), t = get_u64(in);
    if (n < 1 || t < 1 || n > (1u << 20) || t > (1u << 30))
        throw IoError("binary snapshot header has invalid sizes");
    CMatrix data(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(t));
    for (Eigen::Index k = 0; k < data.rows(); ++k)
        for (Eigen::Index c = 0; c < data.cols(); ++c) {
            const double re = std::bit_cast<double>(get_u64(in));
            const double im = std::bit_cast<double>(get_u64(in));
            data(k, c) = {re, im};
        }
    return data;
}

void write_coarray_csv(std::ostream& out, const CoarraySignal& x)
{
    out << "lag,real,imag\n";
    for (int lag = -(x.g - 1); lag <= x.g - 1; ++lag)
        out << lag << ',' << num(x.at_lag(lag).real()) << ',' << num(x.at_lag(lag).imag()) << '\n';
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s)
{
    out << "theta,value\n";
    for (std::size_t i = 0; i < s.grid.size(); ++i)
        out << num(s.grid[i]) << ',' << num(s.values[i]) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepResult& r)
{
    out << "geometry,method,a,axis_value,rmse,trials,fills,mean_evd_time\n";
    for (const SweepCurve& c : r.curves)
        for (std::size_t i = 0; i < c.axis_values.size(); ++i)
            out << csv_cell(c.geometry) << ',' << method_name(c.variant.method) << ',' << c.variant.a << ','
                << num(c.axis_values[i]) << ',' << num(c.rmse[i]) << ',' << r.config.trials << ','
                << c.fills[i] << ',' << num(c.mean_evd_seconds[i]) << '\n';
}

namespace {

nlohmann::json config_to_json(const ExperimentConfig& cfg)
{
    nlohmann::json geoms = nlohmann::json::array();
    for (const ArrayGeometry& g : cfg.geometries)
        geoms.push_back({{"name", g.name()}, {"positions", g.positions()}});
    nlohmann::json variants = nlohmann::json::array();
    for (const Variant& v : cfg.variants)
        variants.push_back(variant_json(v));
    nlohmann::json snr = nlohmann::json::array();
    for (double s : cfg.snr_db)
        snr.push_back(std::isfinite(s) ? nlohmann::json(s) : nlohmann::json("inf"));
    const SourceScene scene = cfg.scene();
    return {
        {"geometries", geoms},
        {"thetas", scene.thetas()},
        {"powers", scene.powers()},
        {"variants", variants},
        {"axis", axis_name(cfg.axis)},
        {"snr_db", snr},
        {"snapshots", cfg.snapshots},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
        {"grid", cfg.grid},
        {"timing", cfg.timing},
    };
}

}  // namespace

std::string config_json(const ExperimentConfig& cfg, int indent)
{
    return config_to_json(cfg).dump(indent);
}

std::string sweep_json(const SweepResult& r, int indent)
{
    nlohmann::json curves = nlohmann::json::array();
    for (const SweepCurve& c : r.curves) {
        nlohmann::json times = nlohmann::json::array();
        for (double t : c.mean_evd_seconds)
            times.push_back(std::isnan(t) ? nlohmann::json(nullptr) : nlohmann::json(t));
        curves.push_back({{"geometry", c.geometry},
                          {"method", method_name(c.variant.method)},
                          {"a", c.variant.a},
                          {"axis_values", c.axis_values},
                          {"rmse", c.rmse},
                          {"fills", c.fills},
                          {"mean_evd_time", times}});
    }
    nlohmann::json doc = {{"config", config_to_json(r.config)},
                          {"warnings", r.warnings},
                          {"curves", curves}};
    return doc.dump(indent);
}

}  // namespace vws
