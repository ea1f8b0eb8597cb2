#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hemilab/supports.hpp"

namespace hemilab {

/// The restriction of a simplex against an equator classification, computed
/// inside an arbitrary ambient chamber complex: keep the equator vertices v
/// of s for which some chamber over the equator face has a panel completion
/// off the equator.
Simplex restriction_generic(const SimplicialComplex& ambient,
                            const std::function<Tri(VertexId)>& cls, const Simplex& s);

/// The height filtration of a closed hemisphere complex: restriction map,
/// partial order on its image, heights by longest chains, stages F_k with
/// their relative-star decomposition. Immutable after construction.
class Filtration {
  public:
    Filtration(const Building& b, const Pole& x, std::size_t max_cells = 200000);

    const Building& building() const { return *b_; }
    const Pole& pole() const { return x_; }
    const VertexClassification& classification() const { return cls_; }

    const SimplicialComplex& open_hemisphere() const { return open_; }
    const SimplicialComplex& closed_hemisphere() const { return closed_; }
    const SimplicialComplex& equator() const { return equator_; }
    const HorVerSplit& split() const { return split_; }

    /// Maximal face of s inside the equator.
    Simplex equator_face(const Simplex& s) const;

    /// The restriction of a simplex of the closed hemisphere complex.
    const Simplex& restriction(const Simplex& s) const;

    /// Image simplices (sorted), always including the empty simplex.
    const std::vector<Simplex>& image() const { return image_; }
    bool in_image(const Simplex& s) const;

    /// Order on image simplices: a ⪯ b iff a ∪ b is a simplex restricting
    /// to b. Throws when either argument is not an image simplex.
    bool preceq(const Simplex& a, const Simplex& b) const;

    int height(const Simplex& s) const;  // via the restriction
    int num_stages() const { return num_stages_; }
    int max_height() const { return max_height_; }

    const SimplicialComplex& stage(int k) const;
    std::vector<Simplex> image_at_height(int k) const;

    /// Preimage of an image simplex under the restriction (its open relative
    /// star in the stage at its height).
    const std::vector<Simplex>& relative_star(const Simplex& s) const;

    /// Link of an image simplex in the stage at its height.
    SimplicialComplex relative_link(const Simplex& s) const;

    /// The same link predicted from the ambient link: the join of the open
    /// hemisphere complex and the horizontal part against the induced pole.
    SimplicialComplex relative_link_predicted(const Simplex& s) const;

    const std::vector<Simplex>& simplices() const { return simplices_; }

  private:
    const Building* b_;
    Pole x_;
    VertexClassification cls_;
    SimplicialComplex open_, closed_, equator_;
    HorVerSplit split_;
    std::vector<Simplex> simplices_;  // of the closed hemisphere complex
    std::map<Simplex, Simplex> restr_;
    std::vector<Simplex> image_;
    std::map<Simplex, std::vector<Simplex>> preimages_;
    std::map<Simplex, int> height_;
    int num_stages_ = 0;
    int max_height_ = 0;
    std::vector<SimplicialComplex> stages_;
};

enum class ConeVariant { FULL, REMOVE_SOURCE, REMOVE_BOTH };

/// The geodesic cone complex over a simplex theta of the closed star of
/// sigma toward an opposite tau: the convex hull of sigma ∪ theta and its
/// projection to the star of tau; variants remove the open star of sigma
/// (and of tau).
SimplicialComplex cone_complex(const Building& b, const Simplex& sigma, const Simplex& theta,
                               const Simplex& tau, ConeVariant variant);

/// Union of the cones over all simplices of a subcomplex L of the closed
/// star of sigma (the empty simplex included).
SimplicialComplex cone_complex_union(const Building& b, const Simplex& sigma,
                                     const SimplicialComplex& l, const Simplex& tau,
                                     ConeVariant variant);

struct GoodOpposite {
    Simplex tau;
    std::string route;  // "apartment-intersection" or "scan"
};

/// An opposite tau of sigma such that the cone union over L meets the
/// equator complex only inside the closed star of sigma. The constructive
/// route intersects an apartment through the pole and sigma in the closed
/// star; the fallback scans all opposites. Throws SearchError when none
/// passes (expected only off the thick hypothesis). A hint chart overrides
/// the apartment used by the constructive route.
GoodOpposite find_good_opposite(const Filtration& filt, const Simplex& sigma,
                                const SimplicialComplex& l,
                                const Building::Chart* hint = nullptr);

/// Whether the cone union over L meets the equator only inside the closed
/// star of sigma (the exact containment test behind the choice of tau).
bool cone_equator_in_star(const Filtration& filt, const Simplex& sigma,
                          const SimplicialComplex& k_full);

/// The cone cover attached to a nonempty image simplex in the sphericity
/// argument: a single cone over the relative link when the link has no
/// horizontal part, otherwise one cone per apartment of the horizontal part
/// through a fixed chamber, each joined with the open hemisphere part.
struct ConeCover {
    Simplex sigma;
    std::vector<std::pair<SimplicialComplex, Simplex>> pieces;  // (L_i, tau_i)
    SimplicialComplex k_full;   // union of the closed cones
    SimplicialComplex k_lower;  // union with the open star of sigma removed
    std::vector<std::string> routes;
};
ConeCover build_cone_cover(const Filtration& filt, const Simplex& sigma);

}  // namespace hemilab
