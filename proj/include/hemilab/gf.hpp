#pragma once

#include <string>
#include <vector>

#include "hemilab/util.hpp"

namespace hemilab {

/// Row space over the prime field F_q in canonical reduced row-echelon form.
/// Equality of subspaces is equality of the echelon basis.
struct Subspace {
    int q = 2;
    int width = 0;                     // ambient dimension
    std::vector<std::vector<int>> rows;  // RREF, no zero rows

    int dim() const { return static_cast<int>(rows.size()); }
    bool operator==(const Subspace& o) const
    {
        return q == o.q && width == o.width && rows == o.rows;
    }
    bool operator<(const Subspace& o) const
    {
        if (dim() != o.dim()) return dim() < o.dim();
        return rows < o.rows;
    }
    std::string label() const;
};

bool is_prime(int q);
int fq_inv(int a, int q);

/// Canonical RREF of a list of row vectors; zero rows dropped.
Subspace row_space(int q, int width, std::vector<std::vector<int>> rows);

bool in_span(const std::vector<int>& v, const Subspace& s);
bool subspace_leq(const Subspace& u, const Subspace& v);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersection(const Subspace& u, const Subspace& v);
inline int meet_dim(const Subspace& u, const Subspace& v)
{
    return subspace_intersection(u, v).dim();
}

/// All k-dimensional subspaces of F_q^width, enumerated by pivot-column
/// pattern then free entries; the order is deterministic.
std::vector<Subspace> all_subspaces(int q, int width, int k);

}  // namespace hemilab
