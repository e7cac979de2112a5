#pragma once

#include <iosfwd>
#include <string>

#include "vws/coarray.hpp"
#include "vws/estimators.hpp"
#include "vws/geometry.hpp"
#include "vws/montecarlo.hpp"
#include "vws/signal_model.hpp"

namespace vws {

/// Raised for unreadable or malformed files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Geometry: one line "name: p0 p1 p2 ...".
void write_geometry(std::ostream& out, const ArrayGeometry& geom);
ArrayGeometry read_geometry(std::istream& in);

// Snapshot matrices.
//
// CSV: first line "N,T"; then N rows of 2T values re0,im0,re1,im1,... (row-major).
// Binary: little-endian int64 N, int64 T, then N*T (re, im) float64 pairs in
// row-major order.
void write_snapshots_csv(std::ostream& out, const CMatrix& data);
CMatrix read_snapshots_csv(std::istream& in);
void write_snapshots_binary(std::ostream& out, const CMatrix& data);
CMatrix read_snapshots_binary(std::istream& in);

// "lag,real,imag" rows.
void write_coarray_csv(std::ostream& out, const CoarraySignal& x);

// "theta,value" rows.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

/// Columns: geometry,method,a,axis_value,rmse,trials,fills,mean_evd_time.
/// Cells holding a comma (geometry names such as "nested(4,4)") are quoted.
/// mean_evd_time is in seconds and "nan" when timing was disabled.
void write_sweep_csv(std::ostream& out, const SweepResult& r);

/// Resolved configuration including the master seed.
std::string config_json(const ExperimentConfig& cfg, int indent = 2);

/// Config echo, warnings and all curves.
std::string sweep_json(const SweepResult& r, int indent = 2);

}  // namespace vws
