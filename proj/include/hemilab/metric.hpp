#pragma once

#include <set>
#include <string>
#include <vector>

#include "hemilab/building.hpp"
#include "hemilab/coxeter.hpp"

namespace hemilab {

/// A rational point of the building: an apartment chart, a carrier simplex,
/// and positive rational weights over the carrier's vertices (aligned with
/// the sorted building ids of the carrier). The realized point lives in the
/// chart's Coxeter model; distances from it are computed exactly through the
/// retraction centered at a chamber over the carrier.
struct Pole {
    const Building* building = nullptr;
    Building::Chart chart;
    Simplex carrier_bld;
    Simplex carrier_cox;
    std::vector<Rat> weights;  // by carrier_bld vertex order

    static Pole at_vertex(const Building& b, VertexId v);
    static Pole at_barycenter(const Building& b, const Simplex& s);
    static Pole from_weights(const Building& b, const Simplex& carrier, std::vector<Rat> weights);
    static Pole with_chart(const Building& b, Building::Chart chart, const Simplex& carrier,
                           std::vector<Rat> weights);

    /// The same point expressed in another chart containing the carrier.
    Pole recharted(const Building::Chart& new_chart) const;

    /// The realized point in the joint Coxeter model of the chart.
    RationalPoint point() const;

    /// Whether the pole has weight mass in the given factor.
    bool touches_factor(int f) const;

    std::string describe() const;
};

/// The exact trichotomy of every vertex against the π/2 sphere around a pole
/// (or against a rational-cosine cap), plus antipodal flags.
struct VertexClassification {
    std::vector<VertexId> ids;    // sorted building vertex ids
    std::vector<Tri> cls;         // aligned with ids; distance vs threshold
    std::vector<bool> antipodal;  // aligned with ids

    Tri of(VertexId v) const;
    bool is_antipodal(VertexId v) const;
    std::vector<VertexId> of_class(Tri t) const;
    std::vector<VertexId> of_classes(Tri a, Tri b) const;
    long long count(Tri t) const;
};

/// d(x, v) versus π/2 for every vertex v, via retraction onto the pole's
/// chart centered over the carrier; every comparison is an integer sign.
VertexClassification classify(const Building& b, const Pole& x);

/// d(x, v) versus arccos(t) for a rational t in (-1, 1): LT means the vertex
/// is strictly closer than the threshold angle. t = 0 agrees with classify.
VertexClassification classify_cap(const Building& b, const Pole& x, const Rat& t);

struct AuditReport {
    long long combinations = 0;
    long long vertices = 0;
    std::vector<std::string> disagreements;
    bool ok() const { return disagreements.empty(); }
};

/// Recomputes the classification of each vertex under every admissible
/// choice of completing chamber D ∋ v and chart center C over the carrier;
/// any disagreement is an invariant violation. max_vertices = 0 audits all,
/// otherwise a seeded sample.
AuditReport wellposedness_audit(const Building& b, const Pole& x, std::size_t max_vertices = 0,
                                std::uint64_t seed = 1);

}  // namespace hemilab
