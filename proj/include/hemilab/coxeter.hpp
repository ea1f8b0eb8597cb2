#pragma once

#include <random>
#include <string>
#include <vector>

#include "hemilab/complex.hpp"
#include "hemilab/util.hpp"

namespace hemilab {

/// The finite Coxeter complex of type A_{n_1} * ... * A_{n_r} with an exact
/// integer spherical realization. Vertices of the factor A_n are the proper
/// nonempty subsets S of {1..n+1} (as bitmasks), realized by the vector
/// (n+1)·e_S − |S|·1 placed in that factor's coordinate block; vectors of
/// different blocks are orthogonal, so points of different factors sit at
/// distance π/2 and the complement map S ↦ Sᶜ is exact negation. Every
/// π/2-comparison is the sign of an integer.
class CoxeterComplex {
  public:
    explicit CoxeterComplex(std::vector<int> ranks, std::size_t max_facets = 200000);

    const std::vector<int>& ranks() const { return ranks_; }
    int num_factors() const { return static_cast<int>(ranks_.size()); }
    int ambient_dim() const { return ambient_dim_; }
    /// Number of vertices of a chamber (= dim + 1).
    int rank_total() const;

    const SimplicialComplex& complex() const { return complex_; }
    const std::vector<Simplex>& chambers() const { return complex_.facets(); }

    int num_vertices() const { return static_cast<int>(verts_.size()); }
    bool valid_mask(int factor, unsigned mask) const;
    int vertex_id(int factor, unsigned mask) const;
    int factor_of(int vid) const { return verts_[check(vid)].factor; }
    unsigned mask_of(int vid) const { return verts_[check(vid)].mask; }
    const std::vector<long long>& coords(int vid) const { return verts_[check(vid)].coords; }
    unsigned full_mask(int factor) const
    {
        return (1u << (ranks_[static_cast<std::size_t>(factor)] + 1)) - 1u;
    }

    /// One-line permutations (1-based), one per factor, recovered from the
    /// subset chain of a chamber.
    std::vector<std::vector<int>> perms_of_chamber(const Simplex& c) const;
    Simplex chamber_of_perms(const std::vector<std::vector<int>>& perms) const;

    /// Per-factor relative position δ(c, d) = π_c^{-1} ∘ π_d.
    std::vector<std::vector<int>> weyl(const Simplex& c, const Simplex& d) const;

    /// Deterministic completion of a simplex to a chamber containing it.
    Simplex complete_to_chamber(const Simplex& s) const;

    struct Root {
        int factor;
        int i, j;  // 1-based positions; membership: i ∈ S or j ∉ S
    };
    const std::vector<Root>& roots() const { return roots_; }
    bool root_contains(const Root& r, int vid) const;
    bool root_strict(const Root& r, int vid) const;
    bool on_wall(const Root& r, int vid) const;

    /// Intersection of all roots containing every simplex of gens, as a full
    /// subcomplex. gens must be member simplices.
    SimplicialComplex conv(const std::vector<Simplex>& gens) const;

    int opposite_vertex(int vid) const;
    Simplex opposition(const Simplex& s) const;

  private:
    struct VertexData {
        int factor;
        unsigned mask;
        int vtype;
        std::vector<long long> coords;
    };

    int check(int vid) const
    {
        if (vid < 0 || vid >= static_cast<int>(verts_.size()))
            throw MembershipError("coxeter vertex out of range: " + std::to_string(vid));
        return vid;
    }

    std::vector<int> ranks_;
    std::vector<int> block_offset_;
    std::vector<int> vert_offset_;
    std::vector<int> type_offset_;
    int ambient_dim_ = 0;
    std::vector<VertexData> verts_;
    std::vector<std::vector<int>> vid_by_mask_;  // [factor][mask] -> vid or -1
    std::vector<Root> roots_;
    SimplicialComplex complex_;
};

/// The irreducible complex of rank n, guarded by the configured bound.
CoxeterComplex generate_coxeter(int n, int bound = 5);

/// A point with rational barycentric weights over the vertices of a carrier
/// simplex; coordinates are exact rationals in the ambient realization.
class RationalPoint {
  public:
    RationalPoint(const CoxeterComplex& cx, Simplex carrier, std::vector<Rat> weights);

    static RationalPoint at_vertex(const CoxeterComplex& cx, int vid);
    static RationalPoint barycenter(const CoxeterComplex& cx, const Simplex& s);

    const CoxeterComplex& complex() const { return *cx_; }
    const Simplex& carrier() const { return carrier_; }
    const std::vector<Rat>& weights() const { return weights_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool same_point(const RationalPoint& other) const;

  private:
    const CoxeterComplex* cx_;
    Simplex carrier_;
    std::vector<Rat> weights_;
    std::vector<Rat> coords_;
};

Rat inner(const std::vector<Rat>& a, const std::vector<Rat>& b);

/// Sign of ⟨p,q⟩: POS ⇔ d(p,q) < π/2, ZERO ⇔ = π/2, NEG ⇔ > π/2.
Sign cos_sign(const RationalPoint& p, const RationalPoint& q);
Sign cos_sign_vertex(const RationalPoint& p, const CoxeterComplex& cx, int vid);

/// Exact comparison of cos d(p,q) with a rational threshold t ∈ (−1,1),
/// by sign cases and squaring. LT means cos d < t.
Tri cmp_cos_threshold(const RationalPoint& p, const RationalPoint& q, const Rat& t);

/// Exact comparison of a/√n2 with t (n2 > 0).
Tri cmp_cos_value(const Rat& a, const Rat& n2, const Rat& t);

/// q is the antipode of p: its vector is a negative rational multiple.
bool antipodal_test(const RationalPoint& p, const RationalPoint& q);

struct AngleOracle {
    double d_xy;
    double d_xz;
    double angle_x;
};

/// Floating-point distances and vertex angle from the exact inner products;
/// test oracle only, never used for decisions.
AngleOracle apartment_angle_oracle(const RationalPoint& x, const RationalPoint& y,
                                   const RationalPoint& z);

double point_distance(const RationalPoint& p, const RationalPoint& q);

/// A rational point with carrier a random nonempty face of a random chamber
/// and small random positive weights; deterministic given the generator state.
RationalPoint random_rational_point(const CoxeterComplex& cx, std::mt19937_64& rng);

}  // namespace hemilab
