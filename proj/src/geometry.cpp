#include "vws/geometry.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "vws/types.hpp"

namespace vws {

ArrayGeometry::ArrayGeometry(std::string name, std::vector<int> positions)
    : name_(std::move(name)), positions_(std::move(positions))
{
    if (positions_.size() < 2)
        throw InvalidArgument("geometry needs at least two sensors");
    std::sort(positions_.begin(), positions_.end());
    if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end())
        throw InvalidArgument("geometry has duplicate sensor positions");
    if (positions_.front() < 0)
        throw InvalidArgument("sensor positions must be non-negative");
    const int origin = positions_.front();
    for (int& p : positions_)
        p -= origin;
}

int Coarray::weight(int lag) const
{
    auto it = weights.find(lag);
    return it == weights.end() ? 0 : it->second;
}

ArrayGeometry build_ula(int n)
{
    if (n < 2)
        throw InvalidArgument("ULA needs n >= 2");
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pos[static_cast<std::size_t>(i)] = i;
    return ArrayGeometry("ula(" + std::to_string(n) + ")", std::move(pos));
}

ArrayGeometry build_nested(int n1, int n2)
{
    if (n1 < 1 || n2 < 1 || n1 + n2 < 2)
        throw InvalidArgument("nested array needs n1 >= 1 and n2 >= 1");
    std::vector<int> pos;
    for (int i = 1; i <= n1; ++i)
        pos.push_back(i);
    for (int m = 1; m <= n2; ++m)
        pos.push_back(m * (n1 + 1));
    return ArrayGeometry("nested(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
                         std::move(pos));
}

ArrayGeometry build_super_nested(int n1, int n2)
{
    if (n1 < 4 || n2 < 2)
        throw InvalidArgument("super nested array needs n1 >= 4 and n2 >= 2");

    // Sizes of the four dense sub-blocks depend on n1 mod 4.
    const int r = n1 / 4;
    int a1 = 0, b1 = 0, a2 = 0, b2 = 0;
    switch (n1 % 4) {
    case 0: a1 = r;     b1 = r - 1; a2 = r - 1; b2 = r - 2; break;
    case 1: a1 = r;     b1 = r - 1; a2 = r;     b2 = r - 2; break;
    case 2: a1 = r + 1; b1 = r - 1; a2 = r;     b2 = r - 2; break;
    default: a1 = r;    b1 = r;     a2 = r;     b2 = r - 1; break;
    }

    const int step = n1 + 1;
    std::set<int> pos;
    for (int l = 0; l <= a1; ++l) pos.insert(1 + 2 * l);
    for (int l = 0; l <= b1; ++l) pos.insert(step - (1 + 2 * l));
    for (int l = 0; l <= a2; ++l) pos.insert(step + (2 + 2 * l));
    for (int l = 0; l <= b2; ++l) pos.insert(2 * step - (2 + 2 * l));
    for (int l = 2; l <= n2; ++l) pos.insert(l * step);
    pos.insert(n2 * step - 1);

    if (pos.size() != static_cast<std::size_t>(n1 + n2))
        throw InvalidArgument("super nested construction produced colliding sensors");
    return ArrayGeometry(
        "super_nested(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
        std::vector<int>(pos.begin(), pos.end()));
}

ArrayGeometry build_mra(int n)
{
    // Hole-free minimum redundancy layouts; each entry is checked against a
    // brute-force difference enumeration in the tests.
    static const std::array<std::vector<int>, 8> table = {{
        {0, 1, 3},
        {0, 1, 4, 6},
        {0, 1, 4, 7, 9},
        {0, 1, 6, 9, 11, 13},
        {0, 1, 4, 10, 12, 15, 17},
        {0, 1, 4, 10, 16, 18, 21, 23},
        {0, 1, 2, 14, 18, 21, 24, 27, 29},
        {0, 1, 3, 6, 13, 20, 27, 31, 35, 36},
    }};
    if (n < 3 || n > 10)
        throw UnsupportedSize("MRA table covers 3..10 sensors, got " + std::to_string(n));
    return ArrayGeometry("mra(" + std::to_string(n) + ")",
                         table[static_cast<std::size_t>(n - 3)]);
}

Coarray difference_coarray(const ArrayGeometry& geom)
{
    Coarray ca;
    const auto& pos = geom.positions();
    for (int pi : pos)
        for (int pj : pos)
            ++ca.weights[pj - pi];
    ca.lags.reserve(ca.weights.size());
    for (const auto& [lag, count] : ca.weights)
        ca.lags.push_back(lag);

    int run = 0;
    while (ca.weights.count(run + 1) != 0)
        ++run;
    ca.udof = 2 * run + 1;
    ca.g = run + 1;
    return ca;
}

ArrayGeometry geometry_from_description(const std::string& description)
{
    std::istringstream in(description);
    std::string kind;
    in >> kind;
    std::vector<int> args;
    int v = 0;
    while (in >> v)
        args.push_back(v);
    if (!in.eof())
        throw InvalidArgument("malformed geometry description '" + description + "'");

    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw InvalidArgument("geometry '" + kind + "' takes " + std::to_string(n) +
                                  " integer argument(s)");
    };
    if (kind == "ula") {
        need(1);
        return build_ula(args[0]);
    }
    if (kind == "nested" || kind == "naq2") {
        need(2);
        return build_nested(args[0], args[1]);
    }
    if (kind == "super_nested" || kind == "snaq2") {
        need(2);
        return build_super_nested(args[0], args[1]);
    }
    if (kind == "mra") {
        need(1);
        return build_mra(args[0]);
    }
    throw InvalidArgument("unknown geometry '" + kind + "'");
}

}  // namespace vws
