#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "hemilab/filtration.hpp"
#include "hemilab/homology.hpp"

using namespace hemilab;

namespace {

const Building& fano()
{
    static Building b = Building::flag(2, 2);
    return b;
}

// the standing example: pole at the midpoint of a chamber edge
const Filtration& fano_midpoint_filtration()
{
    static Filtration f(fano(), Pole::at_barycenter(fano(), fano().complex().facets()[0]));
    return f;
}

}  // namespace

TEST_CASE("equator faces and restrictions on the standing example")
{
    const auto& f = fano_midpoint_filtration();
    const auto& cls = f.classification();

    auto eq = cls.of_class(Tri::EQ);
    REQUIRE(eq.size() == 4);

    // all-far simplices restrict to the empty simplex
    for (const auto& s : f.simplices()) {
        bool any_eq = false;
        for (VertexId v : s.vertices())
            if (cls.of(v) == Tri::EQ) any_eq = true;
        if (!any_eq) {
            CHECK(f.equator_face(s).empty());
            CHECK(f.restriction(s).empty());
        }
    }

    // every equator vertex survives its own restriction (irreducible case)
    for (VertexId q : eq) CHECK(f.restriction(Simplex{q}) == Simplex{q});

    // a far-equator edge restricts to its equator endpoint
    for (const auto& s : f.simplices()) {
        if (s.dim() != 1) continue;
        VertexId a = s.vertices()[0], b2 = s.vertices()[1];
        if (cls.of(a) == Tri::EQ && cls.of(b2) == Tri::GT)
            CHECK(f.restriction(s) == Simplex{a});
        if (cls.of(a) == Tri::GT && cls.of(b2) == Tri::EQ)
            CHECK(f.restriction(s) == Simplex{b2});
    }
}

TEST_CASE("restriction is idempotent and its image is a subcomplex of the vertical part")
{
    const auto& f = fano_midpoint_filtration();
    for (const auto& s : f.simplices()) {
        const auto& r = f.restriction(s);
        CHECK(f.restriction(r) == r);
    }
    for (const auto& r : f.image()) {
        for (const auto& face : r.all_faces()) CHECK(f.in_image(face));
        for (VertexId v : r.vertices()) CHECK(f.split().ver.has_vertex(v));
    }
}

TEST_CASE("restriction agrees with the link-factor criterion")
{
    // for tau in the closed hemisphere complex and sigma a face of its
    // equator face: restr(tau) ⊆ sigma iff the rest of the equator face
    // lies in the horizontal part of the link of sigma, iff the restrictions
    // agree
    const auto& f = fano_midpoint_filtration();
    const auto& b = fano();
    const auto& cls = f.classification();

    for (const auto& tau : f.simplices()) {
        Simplex eq_face = f.equator_face(tau);
        for (const auto& sigma : eq_face.all_faces()) {
            if (sigma.empty()) continue;
            auto split = link_split(b, cls, sigma);
            Simplex rest = eq_face.set_minus(sigma);
            bool in_hor = rest.empty() || split.hor.contains(rest);
            bool restr_below = f.restriction(tau).face_of(sigma);
            bool equal_restr = f.restriction(tau) == f.restriction(sigma);
            CHECK(in_hor == restr_below);
            CHECK(restr_below == equal_restr);
        }
    }
}

TEST_CASE("restriction commutes with passing to links")
{
    const auto& f = fano_midpoint_filtration();
    const auto& b = fano();
    const auto& cls = f.classification();
    auto cls_fn = [&](VertexId v) { return cls.of(v); };

    for (const auto& tau : f.simplices()) {
        if (!f.equator().contains(tau) || tau.empty()) continue;
        for (const auto& sigma : tau.all_faces()) {
            if (sigma.empty() || sigma == tau) continue;
            auto lk = b.complex().link(sigma);
            Simplex inner = restriction_generic(lk, cls_fn, tau.set_minus(sigma));
            CHECK(inner == f.restriction(tau).set_minus(sigma));
        }
    }
}

TEST_CASE("partial order and heights")
{
    const auto& f = fano_midpoint_filtration();

    // the poset axioms on the image, with unique minimal element ∅
    for (const auto& a : f.image()) {
        CHECK(f.preceq(a, a));
        CHECK(f.preceq(Simplex{}, a));
        if (!a.empty()) CHECK_FALSE(f.preceq(a, Simplex{}));
        for (const auto& b2 : f.image()) {
            if (f.preceq(a, b2) && f.preceq(b2, a)) CHECK(a == b2);
            for (const auto& c : f.image())
                if (f.preceq(a, b2) && f.preceq(b2, c)) CHECK(f.preceq(a, c));
        }
    }

    CHECK(f.height(Simplex{}) == 0);
    CHECK(f.max_height() == 1);
    CHECK(f.num_stages() == 1);
    CHECK(f.image_at_height(1).size() == 4);  // the four equator vertices
}

TEST_CASE("height is monotone along faces with the equal-restriction criterion")
{
    const auto& f = fano_midpoint_filtration();
    for (const auto& tau : f.simplices()) {
        for (const auto& sigma : tau.all_faces()) {
            CHECK(f.height(sigma) <= f.height(tau));
            bool equal_height = f.height(sigma) == f.height(tau);
            bool equal_restr = f.restriction(sigma) == f.restriction(tau);
            CHECK(equal_height == equal_restr);
        }
    }
}

TEST_CASE("stages and the relative-star decomposition")
{
    const auto& f = fano_midpoint_filtration();

    // F_0 is the open hemisphere complex joined with the horizontal part
    CHECK(f.stage(0) == SimplicialComplex::join(f.open_hemisphere(), f.split().hor));
    // the final stage is the closed hemisphere complex
    CHECK(f.stage(f.num_stages()) == f.closed_hemisphere());

    // the difference F_1 \ F_0 is the disjoint union of the open relative
    // stars of the height-1 image simplices
    std::set<Simplex> diff;
    for (const auto& s : f.simplices())
        if (f.height(s) == 1) diff.insert(s);
    std::set<Simplex> star_union;
    for (const auto& sigma : f.image_at_height(1)) {
        for (const auto& s : f.relative_star(sigma)) {
            CHECK(star_union.insert(s).second);  // pairwise disjoint
        }
    }
    CHECK(diff == star_union);

    // relative stars agree with open stars in the stage
    for (const auto& sigma : f.image_at_height(1)) {
        auto open_star = f.stage(1).open_star(sigma);
        std::set<Simplex> a(open_star.begin(), open_star.end());
        const auto& pre = f.relative_star(sigma);
        std::set<Simplex> b2(pre.begin(), pre.end());
        CHECK(a == b2);
    }
}

TEST_CASE("relative links match the induced-pole prediction")
{
    const auto& f = fano_midpoint_filtration();
    for (int k = 1; k <= f.max_height(); ++k)
        for (const auto& sigma : f.image_at_height(k))
            CHECK(f.relative_link(sigma) == f.relative_link_predicted(sigma));
}

TEST_CASE("vertex-pole filtrations collapse to a single stage")
{
    const auto& b = fano();
    Filtration f(b, Pole::at_vertex(b, 0));
    CHECK(f.equator().is_empty_complex());
    CHECK(f.image() == std::vector<Simplex>{Simplex{}});
    CHECK(f.num_stages() == 0);
    CHECK(f.stage(0) == f.closed_hemisphere());
    CHECK(f.open_hemisphere() == f.closed_hemisphere());
}

TEST_CASE("cone complexes")
{
    const auto& b = fano();
    const auto& f = fano_midpoint_filtration();

    // theta = ∅: the closed cone is the convex hull of sigma and tau
    auto eq = f.classification().of_class(Tri::EQ);
    Simplex sigma{eq[0]};
    auto taus = b.opposites_of(sigma);
    REQUIRE_FALSE(taus.empty());
    const Simplex& tau = taus[0];
    auto hull = b.conv(sigma, tau);
    auto cone0 = cone_complex(b, sigma, Simplex{}, tau, ConeVariant::FULL);
    CHECK(cone0 == hull);

    // boundary law: each cone variant meets the boundary of the star of
    // sigma in the faces of sigma ∪ theta away from sigma; exhaustive over
    // opposite pairs of vertices and chambers with all theta
    auto boundary_check = [&](const Simplex& sg, const Simplex& th, const Simplex& ta) {
        Simplex lam = sg.set_union(th);
        auto bd_star = b.complex().boundary_of_star(sg);
        std::vector<Simplex> expect_gens;
        for (const auto& face : lam.all_faces())
            if (!sg.face_of(face) || sg.empty()) expect_gens.push_back(face);
        SimplicialComplex expect =
            expect_gens.empty()
                ? SimplicialComplex::void_complex()
                : SimplicialComplex(b.complex().vertex_infos(), maximalize(expect_gens));
        for (auto variant :
             {ConeVariant::FULL, ConeVariant::REMOVE_SOURCE, ConeVariant::REMOVE_BOTH}) {
            auto cone = cone_complex(b, sg, th, ta, variant);
            auto inter = complex_intersection(cone, bd_star);
            CHECK(inter == expect);
        }
    };

    int checked = 0;
    for (VertexId v : b.complex().vertex_ids()) {
        Simplex sg{v};
        auto star_closure = b.complex().star(sg);
        for (const auto& ta : b.opposites_of(sg))
            for (const auto& th : star_closure.all_simplices()) {
                boundary_check(sg, th, ta);
                ++checked;
            }
    }
    for (const auto& ch : b.complex().facets()) {
        for (const auto& ta : b.opposites_of(ch))
            for (const auto& th : ch.all_faces()) {
                boundary_check(ch, th, ta);
                ++checked;
            }
    }
    CHECK(checked > 1000);
}

TEST_CASE("cone unions over a subcomplex are contractible of the right dimension")
{
    const auto& b = fano();
    const auto& f = fano_midpoint_filtration();
    auto eq = f.classification().of_class(Tri::EQ);

    for (VertexId q : eq) {
        Simplex sigma{q};
        auto lk = b.complex().link(sigma);
        // L = the far part of the link
        std::vector<VertexId> gt;
        for (VertexId w : lk.vertex_ids())
            if (f.classification().of(w) == Tri::GT) gt.push_back(w);
        auto l = lk.full_subcomplex(gt);
        REQUIRE_FALSE(l.is_empty_complex());

        for (const auto& tau : b.opposites_of(sigma)) {
            auto kp = cone_complex_union(b, sigma, l, tau, ConeVariant::REMOVE_SOURCE);
            CHECK(kp.dim() == sigma.dim() + l.dim() + 1);
            CHECK(reduced_homology(kp).trivial());
        }
    }
}

TEST_CASE("cones over equator simplices stay in the closed hemisphere complex")
{
    const auto& b = fano();
    const auto& f = fano_midpoint_filtration();
    auto eq = f.classification().of_class(Tri::EQ);

    for (VertexId q : eq) {
        Simplex sigma{q};
        auto bd = f.closed_hemisphere().boundary_of_star(sigma);
        for (const auto& tau : b.opposites_of(sigma)) {
            auto k_full = cone_complex_union(b, sigma, bd, tau, ConeVariant::FULL);
            CHECK(is_subcomplex(k_full, f.closed_hemisphere()));
        }
    }
}

TEST_CASE("good opposites on the standing example")
{
    const auto& b = fano();
    const auto& f = fano_midpoint_filtration();

    for (const auto& sigma : f.image_at_height(1)) {
        auto l = f.relative_link(sigma);
        auto good = find_good_opposite(f, sigma, l);
        CHECK(b.opposite(sigma, good.tau));
        // every vertex of the good opposite lies strictly beyond the equator
        for (VertexId v : good.tau.vertices()) CHECK(f.classification().of(v) == Tri::GT);

        auto k_full = cone_complex_union(b, sigma, l, good.tau, ConeVariant::FULL);
        auto k_lower = cone_complex_union(b, sigma, l, good.tau, ConeVariant::REMOVE_SOURCE);
        int h = f.height(sigma);
        CHECK(is_subcomplex(k_full, f.stage(h)));
        CHECK(k_lower == complex_intersection(k_full, f.stage(h - 1)));

        // the cone over the full relative link covers the relative star
        std::set<Simplex> star_and_lower;
        for (const auto& s : f.relative_star(sigma)) star_and_lower.insert(s);
        for (const auto& s : k_lower.all_simplices()) star_and_lower.insert(s);
        auto all_kf = k_full.all_simplices();
        CHECK(star_and_lower == std::set<Simplex>(all_kf.begin(), all_kf.end()));
    }
}

TEST_CASE("projection criterion witnesses containment failures")
{
    // whenever the equator part of a cone union escapes the closed star,
    // some equator simplex of the cone boundary projects tau into the
    // equator complex
    const auto& b = fano();
    const auto& f = fano_midpoint_filtration();

    for (const auto& sigma : f.image_at_height(1)) {
        auto l = f.relative_link(sigma);
        for (const auto& tau : b.opposites_of(sigma)) {
            auto k_full = cone_complex_union(b, sigma, l, tau, ConeVariant::FULL);
            if (cone_equator_in_star(f, sigma, k_full)) continue;
            // find the witness
            bool witness = false;
            for (const auto& theta : k_full.all_simplices()) {
                if (theta.empty() || sigma.face_of(theta)) continue;
                if (!f.equator().contains(theta)) continue;
                auto gate = b.proj(theta, tau);
                if (f.equator().contains(gate)) {
                    witness = true;
                    break;
                }
            }
            CHECK(witness);
        }
    }
}

TEST_CASE("cone covers certify the gluing step")
{
    const auto& f = fano_midpoint_filtration();
    for (const auto& sigma : f.image_at_height(1)) {
        auto cover = build_cone_cover(f, sigma);
        int h = f.height(sigma);
        CHECK(is_subcomplex(cover.k_full, f.stage(h)));
        CHECK(cover.k_lower == complex_intersection(cover.k_full, f.stage(h - 1)));

        // condition 1: the union is the relative star together with the rest
        std::set<Simplex> a;
        for (const auto& s : f.relative_star(sigma)) a.insert(s);
        for (const auto& s : cover.k_lower.all_simplices()) a.insert(s);
        auto kf = cover.k_full.all_simplices();
        CHECK(a == std::set<Simplex>(kf.begin(), kf.end()));

        // condition 2 (homological form): the lower part is spherical of the
        // building dimension
        CHECK(is_homology_spherical(cover.k_lower, f.building().complex().dim()));
    }
}

TEST_CASE("rank-3 filtration has two nontrivial stages")
{
    static Building big = Building::flag(3, 2);
    // pole at the midpoint of a point-hyperplane edge
    VertexId p = -1, h = -1;
    for (VertexId v : big.complex().vertex_ids())
        if (big.complex().vtype(v) == 1) {
            p = v;
            break;
        }
    for (VertexId v : big.complex().vertex_ids())
        if (big.complex().vtype(v) == 3 && big.complex().contains(Simplex{p, v})) {
            h = v;
            break;
        }
    Filtration filt(big, Pole::at_barycenter(big, Simplex{p, h}));

    CHECK(filt.equator().f_vector() == std::vector<long long>{20, 36});
    CHECK(filt.num_stages() == 2);
    CHECK(filt.max_height() == 2);
    CHECK(filt.stage(0) == filt.open_hemisphere());
    CHECK(filt.stage(2) == filt.closed_hemisphere());

    // disjoint relative stars at both heights
    for (int k = 1; k <= 2; ++k) {
        std::set<Simplex> diff;
        for (const auto& s : filt.simplices())
            if (filt.height(s) == k) diff.insert(s);
        std::set<Simplex> star_union;
        for (const auto& sigma : filt.image_at_height(k))
            for (const auto& s : filt.relative_star(sigma))
                CHECK(star_union.insert(s).second);
        CHECK(diff == star_union);
    }

    // relative links match the induced prediction at height 2 as well
    for (const auto& sigma : filt.image_at_height(2))
        CHECK(filt.relative_link(sigma) == filt.relative_link_predicted(sigma));

    // cone covers at both heights: one vertex and one edge representative
    for (int k : {1, 2}) {
        const auto& at_k = filt.image_at_height(k);
        REQUIRE_FALSE(at_k.empty());
        const Simplex& sigma = at_k.front();
        auto cover = build_cone_cover(filt, sigma);
        CHECK(is_subcomplex(cover.k_full, filt.stage(k)));
        CHECK(cover.k_lower == complex_intersection(cover.k_full, filt.stage(k - 1)));
        CHECK(is_homology_spherical(cover.k_lower, big.complex().dim()));
    }
}

TEST_CASE("cone covers through a horizontal link factor")
{
    // a reducible building: the link of an equator vertex of the thick factor
    // picks up the whole thin factor as a horizontal join factor
    std::vector<Building> parts;
    parts.push_back(Building::thin(1));
    parts.push_back(Building::flag(2, 2));
    static Building j = Building::join(std::move(parts));

    // pole at the midpoint of a chamber edge of the thick factor
    Simplex edge;
    for (const auto& s : j.complex().all_simplices()) {
        if (s.dim() != 1) continue;
        if (j.factor_of(s.vertices()[0]) == 1 && j.factor_of(s.vertices()[1]) == 1) {
            edge = s;
            break;
        }
    }
    REQUIRE(edge.dim() == 1);
    Filtration filt(j, Pole::at_barycenter(j, edge));

    // the thin factor sits on the equator
    for (int lv = 0; lv < j.factor(0).num_vertices(); ++lv)
        CHECK(filt.classification().of(j.global_id(0, lv)) == Tri::EQ);

    // equator vertices of the thick factor have a horizontal link factor
    auto image1 = filt.image_at_height(1);
    bool exercised = false;
    for (const auto& sigma : image1) {
        if (sigma.size() != 1 || j.factor_of(sigma.vertices()[0]) != 1) continue;
        auto split = link_split(j, filt.classification(), sigma);
        if (split.hor.is_empty_complex()) continue;
        exercised = true;
        auto cover = build_cone_cover(filt, sigma);
        CHECK(cover.pieces.size() >= 1);
        int h = filt.height(sigma);
        CHECK(is_subcomplex(cover.k_full, filt.stage(h)));
        CHECK(cover.k_lower == complex_intersection(cover.k_full, filt.stage(h - 1)));
        std::set<Simplex> a;
        for (const auto& s : filt.relative_star(sigma)) a.insert(s);
        for (const auto& s : cover.k_lower.all_simplices()) a.insert(s);
        auto kf = cover.k_full.all_simplices();
        CHECK(a == std::set<Simplex>(kf.begin(), kf.end()));
        CHECK(is_homology_spherical(cover.k_lower, j.complex().dim()));
    }
    CHECK(exercised);
}
