#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hemilab/simplex.hpp"
#include "hemilab/util.hpp"

namespace hemilab {

struct VertexInfo {
    VertexId id = 0;
    int vtype = 0;
    std::string label;
};

/// A finite abstract simplicial complex with typed vertices, stored by its
/// maximal simplices. Membership of an arbitrary simplex is decided against
/// a per-vertex facet index. Instances are immutable after construction;
/// concurrent reads are safe.
///
/// Two degenerate states are distinguished:
///   - the empty complex: facets == {∅}; it has dimension -1 and is the
///     neutral element of the join;
///   - the void complex: no simplices at all (facets == {}), dimension -2.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /// Builds a complex from generators: non-maximal generators are dropped,
    /// duplicates removed. Vertex infos are restricted to vertices that occur.
    SimplicialComplex(std::vector<VertexInfo> verts, std::vector<Simplex> generators);

    static SimplicialComplex empty_complex()
    {
        return SimplicialComplex({}, {Simplex{}});
    }
    static SimplicialComplex void_complex() { return SimplicialComplex({}, {}); }

    bool is_void() const { return facets_.empty(); }
    bool is_empty_complex() const
    {
        return facets_.size() == 1 && facets_[0].empty();
    }

    /// -1 for the empty complex, -2 for the void complex.
    int dim() const;

    const std::vector<Simplex>& facets() const { return facets_; }
    const std::vector<VertexInfo>& vertex_infos() const { return verts_; }
    const std::vector<int>& typeset() const { return typeset_; }

    std::vector<VertexId> vertex_ids() const;
    bool has_vertex(VertexId v) const { return vtype_.count(v) != 0; }
    int vtype(VertexId v) const;
    const std::string& label(VertexId v) const;

    bool contains(const Simplex& s) const;

    /// Indices into facets() of the facets containing s. s = ∅ yields all.
    std::vector<int> facets_containing(const Simplex& s) const;

    /// Closed star: the subcomplex generated by all facets containing s.
    SimplicialComplex star(const Simplex& s) const;

    /// Open star: the member simplices having s as a face.
    std::vector<Simplex> open_star(const Simplex& s) const;

    /// Link: simplices t disjoint from s with s ∪ t a member.
    SimplicialComplex link(const Simplex& s) const;

    /// Closed star minus open star.
    SimplicialComplex boundary_of_star(const Simplex& s) const;

    /// Maximal subcomplex with vertices inside `keep`.
    SimplicialComplex full_subcomplex(const std::vector<VertexId>& keep) const;

    SimplicialComplex skeleton(int k) const;

    /// Number of connected components of the 1-skeleton (isolated vertices
    /// count; the empty and void complexes have 0).
    int components() const;

    /// f[k] = number of k-simplices, k = 0..dim.
    std::vector<long long> f_vector() const;

    /// All member simplices including ∅ (for nonvoid complexes), sorted by
    /// (dim, lex). Throws SizeBoundError past max_cells.
    std::vector<Simplex> all_simplices(std::size_t max_cells = 0) const;

    std::size_t count_simplices() const;

    /// Join with disjoint vertex ids and disjoint type sets.
    static SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);

    /// Equality as complexes: same vertex set and same facet set.
    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.facets_ == b.facets_ && a.verts_sorted_ids_ == b.verts_sorted_ids_;
    }
    friend bool operator!=(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return !(a == b);
    }

  private:
    std::vector<VertexInfo> verts_;             // sorted by id
    std::vector<VertexId> verts_sorted_ids_;
    std::vector<int> typeset_;                  // sorted distinct vtypes
    std::vector<Simplex> facets_;               // sorted, maximal, deduped
    std::map<VertexId, int> vtype_;
    std::map<VertexId, std::string> label_;
    std::map<VertexId, std::vector<int>> facet_index_;  // vertex -> facet positions

    SimplicialComplex restrict_infos(std::vector<Simplex> generators) const;
};

/// Drops duplicates and strict subsets; result sorted by (dim, lex).
std::vector<Simplex> maximalize(std::vector<Simplex> gens);

/// Finest partition of the typeset such that the complex is the join of its
/// full subcomplexes on the blocks. Two types share a block when some vertex
/// pair of those types is non-adjacent (fails to span an edge). The join
/// factorization is verified on the facet level; a failure throws.
std::vector<std::vector<int>> join_type_blocks(const SimplicialComplex& x);

/// Union and intersection as simplex sets (vertex infos merged / restricted).
SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex complex_intersection(const SimplicialComplex& a, const SimplicialComplex& b);

/// Every simplex of a is a simplex of b.
bool is_subcomplex(const SimplicialComplex& a, const SimplicialComplex& b);

}  // namespace hemilab
