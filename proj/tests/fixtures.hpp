#pragma once

// Hand-built small complexes used as independent oracles across the test
// suites. These are constructed from first principles (explicit vertex and
// facet lists), not through the generator modules they help check.

#include <vector>

#include "hemilab/complex.hpp"

namespace fixtures {

using hemilab::Simplex;
using hemilab::SimplicialComplex;
using hemilab::VertexInfo;

/// 6-cycle v0..v5, all vertices of one type.
inline SimplicialComplex hexagon()
{
    std::vector<VertexInfo> vs;
    for (int i = 0; i < 6; ++i) vs.push_back({i, 1, "v" + std::to_string(i)});
    std::vector<Simplex> fs;
    for (int i = 0; i < 6; ++i) fs.push_back(Simplex{i, (i + 1) % 6});
    return SimplicialComplex(vs, fs);
}

/// The 7 lines of the smallest projective plane as point triples.
inline const std::vector<std::vector<int>>& fano_lines()
{
    static const std::vector<std::vector<int>> lines = {
        {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
    return lines;
}

/// Incidence (flag) complex of the smallest projective plane: vertices are
/// 7 points (ids 0..6, type 1) and 7 lines (ids 7..13, type 2); facets are
/// the 21 incident point-line pairs.
inline SimplicialComplex fano_flag_complex()
{
    std::vector<VertexInfo> vs;
    for (int i = 0; i < 7; ++i) vs.push_back({i, 1, "p" + std::to_string(i)});
    for (int i = 0; i < 7; ++i) vs.push_back({7 + i, 2, "L" + std::to_string(i)});
    std::vector<Simplex> fs;
    const auto& lines = fano_lines();
    for (int li = 0; li < 7; ++li)
        for (int p : lines[static_cast<std::size_t>(li)]) fs.push_back(Simplex{p, 7 + li});
    return SimplicialComplex(vs, fs);
}

/// Two-point complex of one type (a 0-sphere).
inline SimplicialComplex zero_sphere(int id0, int id1, int vtype)
{
    std::vector<VertexInfo> vs = {{id0, vtype, "a"}, {id1, vtype, "b"}};
    return SimplicialComplex(vs, {Simplex{id0}, Simplex{id1}});
}

}  // namespace fixtures
