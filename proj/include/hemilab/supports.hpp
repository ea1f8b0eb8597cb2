#pragma once

#include <string>
#include <vector>

#include "hemilab/metric.hpp"

namespace hemilab {

enum class HemisphereKind { OPEN, CLOSED, EQUATOR };

/// A supported subcomplex: the maximal subcomplex whose vertices satisfy the
/// support predicate, extracted as a full subcomplex. `full_exact` records
/// whether closed simplices are known to lie in the support pointwise (true
/// for right-angle supports; caps carry an audit). `theorem_eligible` drops
/// to false when the removed set is not guaranteed convex (cap thresholds
/// below zero); such instances are verified in advisory mode only.
struct SupportedSubcomplex {
    SimplicialComplex complex;
    std::string provenance;
    bool full_exact = true;
    bool theorem_eligible = true;
};

SupportedSubcomplex hemisphere(const Building& b, const VertexClassification& cls,
                               HemisphereKind kind);
SupportedSubcomplex hemisphere(const Building& b, const Pole& x, HemisphereKind kind);

/// Complement of the ball of angular radius arccos(t): keep_boundary keeps
/// the sphere cos d = t (complement of the open ball), otherwise it is
/// dropped (complement of the closed ball). t >= 0 keeps the removed ball
/// inside a hemisphere; t < 0 removes more and the result is advisory.
SupportedSubcomplex cap_complement(const Building& b, const Pole& x, const Rat& t,
                                   bool keep_boundary);

/// Thin-model supports bounded by one root: the closed root itself, or its
/// strictly positive side (the complement of the opposite closed root).
SupportedSubcomplex root_complement(const Building& b, const Building::Chart& chart,
                                    const CoxeterComplex::Root& root, bool closed_side);

/// Partition of the building's irreducible factors against the equator: a
/// factor is horizontal when all of its vertices classify EQ. The building
/// complex equals the join of the two parts (checked).
struct HorVerSplit {
    SimplicialComplex hor;  // empty complex when no factor is horizontal
    SimplicialComplex ver;
    std::vector<int> hor_factors;
};
HorVerSplit hor_ver(const Building& b, const VertexClassification& cls);

/// The classification of the link of an equator simplex with respect to the
/// induced pole is the restriction of the ambient classification; no
/// coordinates of the induced pole are computed. Antipodal flags within the
/// link are not tracked.
VertexClassification induced_link_classification(const Building& b,
                                                 const VertexClassification& cls,
                                                 const Simplex& sigma);

/// The link of sigma split along its join blocks against the induced pole.
struct LinkSplit {
    SimplicialComplex link;
    SimplicialComplex hor;        // join of all-equator blocks
    SimplicialComplex ver;        // the remaining blocks
    SimplicialComplex open_hemi;  // full subcomplex of the link on far vertices
};
LinkSplit link_split(const Building& b, const VertexClassification& cls, const Simplex& sigma);

struct CapFullnessReport {
    long long charts = 0;
    long long simplices_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Exact per-chart audit that every simplex with all vertices in the cap
/// support has its closed realization inside the support: the maximum of the
/// cosine over a closed cell is attained at a vertex or at the normalized
/// projection of the pole onto a face span, all checked in rational
/// arithmetic.
CapFullnessReport audit_cap_fullness(const Building& b, const Pole& x, const Rat& t,
                                     bool keep_boundary, std::size_t max_charts = 64);

}  // namespace hemilab
