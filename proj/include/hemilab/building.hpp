#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hemilab/complex.hpp"
#include "hemilab/coxeter.hpp"
#include "hemilab/gf.hpp"
#include "hemilab/util.hpp"

namespace hemilab {

/// Relative position of two chambers: one permutation per irreducible factor
/// (one-line notation, 1-based).
struct WeylDistance {
    std::vector<std::vector<int>> perms;

    bool is_identity() const;
    WeylDistance inverse() const;
    /// Word length = total inversion count; equals the gallery distance.
    int length() const;
    bool operator==(const WeylDistance& o) const { return perms == o.perms; }
};

/// One irreducible factor of a building of type A_n: either the thin model
/// (vertices are proper nonempty subsets of {1..n+1}) or the flag model
/// (vertices are proper nontrivial subspaces of F_q^{n+1}, q prime).
class BuildingFactor {
  public:
    static BuildingFactor thin(int n);
    static BuildingFactor flag(int n, int q, std::size_t max_vertices = 200000);

    bool thick_model() const { return q_ > 0; }
    int rank() const { return n_; }
    int field_order() const { return q_; }
    int num_vertices() const { return static_cast<int>(vdim_.size()); }
    int vdim(int lv) const { return vdim_[static_cast<std::size_t>(lv)]; }
    const std::string& vlabel(int lv) const { return vlabel_[static_cast<std::size_t>(lv)]; }

    /// Chambers as complete flags: lvids indexed by dimension-1.
    const std::vector<std::vector<int>>& chambers() const { return chambers_; }

    bool leq(int u, int v) const;      // strict inclusion of distinct dims
    int meet_dim(int u, int v) const;  // dim of the intersection

    /// Local vertex of a subspace in canonical form; -1 when absent.
    int find_subspace(const Subspace& s) const;

    /// Deterministic completion of a partial flag to a complete flag.
    std::vector<int> complete_flag(std::vector<int> partial) const;

    /// An ordered frame inducing a chart: mask -> local vertex.
    struct Chart {
        std::vector<int> frame;       // thick: line lvids in chart order
        std::vector<int> mask_to_lv;  // indexed by subset mask
    };

    Chart identity_chart() const;  // thin model
    Chart chart_from_frame(const std::vector<int>& ordered_lines) const;

    /// A chart adapted to two complete flags: the flags' members are spans
    /// of frame lines (second flag along initial segments).
    Chart common_chart(const std::vector<int>& flag_a, const std::vector<int>& flag_b) const;

    /// All apartments (unordered frames with canonical ordering); exhaustive
    /// for rank <= 3 and q <= 3, sampled deterministically beyond.
    std::vector<Chart> enumerate_charts(std::size_t max_count, std::uint64_t seed) const;

    std::vector<int> weyl(const std::vector<int>& flag_c, const std::vector<int>& flag_d) const;

    int opposite_in_chart(const Chart& chart, int lv) const;

  private:
    BuildingFactor() = default;

    int n_ = 0;
    int q_ = 0;  // 0 = thin
    // thin model data
    std::vector<unsigned> masks_;
    std::vector<int> lv_by_mask_;
    // flag model data
    std::vector<Subspace> subs_;
    std::map<Subspace, int> sub_index_;
    std::vector<std::vector<int>> by_dim_;   // lvids per dimension 1..n
    std::vector<std::vector<int>> meets_;    // meet_dim table
    std::vector<std::vector<bool>> leq_;
    // shared
    std::vector<int> vdim_;
    std::vector<std::string> vlabel_;
    std::vector<std::vector<int>> chambers_;
};

/// A spherical building assembled as a join of irreducible A_n factors, with
/// a joint exact Coxeter model, apartment charts over frames, retractions,
/// opposition, and combinatorial projection. Immutable after construction;
/// the apartment list is cached lazily under a mutex.
class Building {
  public:
    static Building flag(int n, int q, std::size_t max_vertices = 200000);
    static Building thin(int n);
    static Building join(std::vector<Building> parts);

    int num_factors() const { return static_cast<int>(factors_.size()); }
    const BuildingFactor& factor(int f) const { return factors_[static_cast<std::size_t>(f)]; }
    const CoxeterComplex& model() const { return *model_; }
    const SimplicialComplex& complex() const { return complex_; }

    int global_id(int f, int lv) const { return vert_offset_[static_cast<std::size_t>(f)] + lv; }
    int factor_of(int gv) const;
    int local_of(int gv) const;

    int dim() const { return complex_.dim(); }
    bool is_thick_model() const;  // all factors carry a field

    /// Thickness as a property: every panel lies in at least 3 chambers.
    bool is_thick() const;

    struct Chart {
        std::vector<BuildingFactor::Chart> parts;
        std::vector<int> cox_to_bld;          // joint model vid -> global building vid
        std::map<int, int> bld_to_cox;
        std::vector<VertexId> image_vertices; // sorted global ids
        bool contains_vertex(int gv) const { return bld_to_cox.count(gv) != 0; }
    };

    Chart make_chart(std::vector<BuildingFactor::Chart> parts) const;
    bool chart_contains(const Chart& c, const Simplex& s) const;
    Simplex chart_image(const Chart& c, const Simplex& cox_simplex) const;
    Simplex chart_preimage(const Chart& c, const Simplex& bld_simplex) const;
    /// The chart image as a subcomplex of the building.
    SimplicialComplex chart_complex(const Chart& c) const;

    /// A chart whose image contains both simplices, built from flags refined
    /// through both subspace chains.
    Chart common_apartment(const Simplex& a, const Simplex& b) const;

    /// Complete apartment list at desk scale (cached; deterministic).
    const std::vector<Chart>& apartments() const;

    /// Apartments whose image contains all the given simplices.
    std::vector<int> apartments_containing(const std::vector<Simplex>& ss) const;

    Simplex complete_to_facet(const Simplex& s) const;
    WeylDistance weyl_distance(const Simplex& c, const Simplex& d) const;

    /// Image of s under the retraction onto the chart centered at the chart
    /// facet `center`: facets map to the chart facet at equal Weyl distance
    /// from the center, faces to the face of matching types.
    Simplex retraction(const Chart& chart, const Simplex& center, const Simplex& s) const;

    /// Same, with the completing chamber d ⊇ s supplied by the caller (the
    /// image does not depend on it; the audit machinery varies it).
    Simplex retraction_with_completion(const Chart& chart, const Simplex& center,
                                       const Simplex& s, const Simplex& d) const;

    bool opposite(const Simplex& a, const Simplex& b) const;
    std::vector<Simplex> opposites_of(const Simplex& s) const;
    Simplex opposite_in_chart(const Chart& chart, const Simplex& s) const;

    /// Convex hull of two simplices, computed in a common apartment.
    SimplicialComplex conv(const Simplex& a, const Simplex& b) const;

    /// The gate of st(sigma) toward tau: maximal simplex of st σ ∩ conv(σ,τ).
    Simplex proj(const Simplex& sigma, const Simplex& tau) const;

    /// Gallery distance between facets (test oracle).
    int gallery_distance(const Simplex& c, const Simplex& d) const;

    /// An apartment meeting the given one exactly in K (a convex chamber
    /// subcomplex of the chart image). Searches apartments through K's
    /// chambers first, then all; nullopt when none matches.
    std::optional<Chart> find_apartment_with_intersection(const Chart& sigma,
                                                          const SimplicialComplex& k) const;

    std::size_t max_apartments = 200000;
    std::uint64_t apartment_seed = 1;

  private:
    Building() = default;
    void assemble();

    std::vector<BuildingFactor> factors_;
    std::vector<int> vert_offset_;
    std::shared_ptr<CoxeterComplex> model_;
    SimplicialComplex complex_;

    struct ApartmentCache {
        std::mutex mutex;
        bool ready = false;
        std::vector<Chart> apartments;
        std::map<Simplex, std::vector<int>> by_chamber;
    };
    std::shared_ptr<ApartmentCache> apt_cache_;
};

}  // namespace hemilab
