#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace vws {

/// Linear array layout. Positions are integer multiples of half the carrier
/// wavelength, strictly increasing, and normalized so the first sensor sits at 0.
class ArrayGeometry {
public:
    /// Sorts and normalizes `positions`. Throws InvalidArgument on duplicates,
    /// fewer than two sensors, or negative input positions.
    ArrayGeometry(std::string name, std::vector<int> positions);

    const std::string& name() const { return name_; }
    const std::vector<int>& positions() const { return positions_; }
    std::size_t size() const { return positions_.size(); }
    int aperture() const { return positions_.back(); }

    friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;

private:
    std::string name_;
    std::vector<int> positions_;
};

/// Difference coarray of a geometry.
struct Coarray {
    std::vector<int> lags;          // ascending, symmetric about 0
    std::map<int, int> weights;     // lag -> number of ordered sensor pairs
    int udof = 0;                   // length of the hole-free run centered at 0
    int g = 0;                      // (udof + 1) / 2

    int weight(int lag) const;
    /// Largest lag of the contiguous segment, i.e. g - 1.
    int max_contiguous_lag() const { return g - 1; }
};

ArrayGeometry build_ula(int n);

/// Two-level nested array: inner ULA {1..n1}, outer {m(n1+1) : m = 1..n2},
/// shifted to start at 0.
ArrayGeometry build_nested(int n1, int n2);

/// Second-order super nested array. Same coarray as build_nested(n1, n2)
/// with the dense inner ULA split up to lower the small-lag weights.
/// Requires n1 >= 4 and n2 >= 2.
ArrayGeometry build_super_nested(int n1, int n2);

/// Minimum redundancy (hole-free) array from an embedded table, n = 3..10.
ArrayGeometry build_mra(int n);

Coarray difference_coarray(const ArrayGeometry& geom);

/// Builds a geometry from a textual description such as "nested 4 4",
/// "super_nested 4 4", "ula 8" or "mra 8".
ArrayGeometry geometry_from_description(const std::string& description);

}  // namespace vws
