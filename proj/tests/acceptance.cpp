// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here; homology checks are exact.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>

#include "hemilab/filtration.hpp"
#include "hemilab/homology.hpp"
#include "hemilab/verify.hpp"

using namespace hemilab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& what, double elapsed, double budget)
{
    bool in_budget = budget <= 0 || elapsed < budget;
    if (ok && in_budget) {
        std::printf("[PASS] criterion %d: %s (%.2fs)\n", criterion, what.c_str(), elapsed);
    } else {
        std::printf("[FAIL] criterion %d: %s (%.2fs%s)\n", criterion, what.c_str(), elapsed,
                    in_budget ? "" : ", over budget");
        ++failures;
    }
}

std::vector<VertexId> of_type(const Building& b, int t)
{
    std::vector<VertexId> out;
    for (VertexId v : b.complex().vertex_ids())
        if (b.complex().vtype(v) == t) out.push_back(v);
    return out;
}

void criterion_1_wedge_count(const Building& fano)
{
    auto t0 = Clock::now();
    auto hp = reduced_homology(fano.complex());
    bool ok = hp.betti_of(0) == 0 && hp.betti_of(1) == 8 && hp.torsion_of(0).empty() &&
              hp.torsion_of(1).empty();
    report(1, ok, "flag complex of PG(2,2) has reduced homology (0, 8)", seconds_since(t0), 5.0);
}

void criterion_2_open_hemispheres(const Building& fano)
{
    auto t0 = Clock::now();
    bool ok = true;

    for (VertexId v : fano.complex().vertex_ids()) {
        Filtration filt(fano, Pole::at_vertex(fano, v));
        auto verdict = homotopy_cm_verdict(filt.open_hemisphere());
        ok = ok && verdict.homology_spherical && verdict.homotopy_cm &&
             filt.open_hemisphere().dim() == 1 && verdict.profile.betti_of(1) == 3;
    }

    for (const auto& edge : fano.complex().facets()) {
        Filtration filt(fano, Pole::at_barycenter(fano, edge));
        auto verdict = homotopy_cm_verdict(filt.open_hemisphere());
        ok = ok && verdict.homology_spherical && verdict.homotopy_cm &&
             verdict.profile.betti_of(1) == 1;

        // equator: four isolated vertices
        ok = ok && filt.equator().f_vector() == std::vector<long long>{4};

        // one nontrivial stage with a disjoint star decomposition
        ok = ok && filt.num_stages() == 1 && filt.max_height() == 1;
        ok = ok && filt.stage(0) == filt.open_hemisphere() &&
             filt.stage(1) == filt.closed_hemisphere();
        std::set<Simplex> star_union;
        std::set<Simplex> diff;
        for (const auto& s : filt.simplices())
            if (filt.height(s) == 1) diff.insert(s);
        bool disjoint = true;
        for (const auto& sigma : filt.image_at_height(1))
            for (const auto& s : filt.relative_star(sigma))
                if (!star_union.insert(s).second) disjoint = false;
        ok = ok && disjoint && star_union == diff;

        // each equator vertex has at least two opposite vertices beyond the
        // equator
        for (VertexId q : filt.classification().of_class(Tri::EQ)) {
            long long far = 0;
            for (const auto& opp : fano.opposites_of(Simplex{q}))
                if (filt.classification().of(opp.vertices()[0]) == Tri::GT) ++far;
            ok = ok && far >= 2;
        }
    }
    report(2, ok,
           "open hemisphere complexes of PG(2,2): vertex poles wedge-rank 3, midpoint poles "
           "rank 1 with four-point equators and disjoint relative stars",
           seconds_since(t0), 30.0);
}

void criterion_3_closed_hemispheres(const Building& fano)
{
    auto t0 = Clock::now();
    bool ok = true;
    std::vector<Pole> poles;
    for (VertexId v : fano.complex().vertex_ids()) poles.push_back(Pole::at_vertex(fano, v));
    for (const auto& edge : fano.complex().facets())
        poles.push_back(Pole::at_barycenter(fano, edge));
    for (const auto& x : poles) {
        auto closed = hemisphere(fano, x, HemisphereKind::CLOSED);
        auto verdict = homotopy_cm_verdict(closed.complex);
        ok = ok && verdict.homotopy_cm && verdict.noncontractible &&
             closed.complex.dim() == fano.complex().dim();
    }
    report(3, ok, "closed hemisphere complexes are homotopy CM with nonzero top homology",
           seconds_since(t0), 0.0);
}

void criterion_4_rank_three(const Building& big)
{
    auto t0 = Clock::now();
    bool ok = true;

    std::vector<std::pair<std::string, Pole>> poles;
    for (int t : big.complex().typeset())
        poles.emplace_back("vertex-type-" + std::to_string(t),
                           Pole::at_vertex(big, of_type(big, t)[0]));
    // a point-hyperplane edge midpoint
    {
        VertexId p = of_type(big, 1)[0];
        VertexId h = -1;
        for (VertexId w : of_type(big, 3))
            if (big.complex().contains(Simplex{p, w})) {
                h = w;
                break;
            }
        poles.emplace_back("mid(point,hyperplane)", Pole::at_barycenter(big, Simplex{p, h}));
    }

    for (const auto& [name, x] : poles) {
        auto cls = classify(big, x);
        auto open = hemisphere(big, cls, HemisphereKind::OPEN);
        auto verdict = homotopy_cm_verdict(open.complex, 4);
        bool this_ok = open.complex.dim() == 2 && verdict.profile.betti_of(0) == 0 &&
                       verdict.profile.betti_of(1) == 0 && verdict.profile.betti_of(2) > 0 &&
                       verdict.profile.torsion_of(2).empty() && verdict.homotopy_cm;
        if (!this_ok) std::printf("  criterion 4 detail: pole %s failed\n", name.c_str());
        ok = ok && this_ok;
    }
    report(4, ok,
           "open hemisphere complexes of PG(3,2) are 2-spherical with free nonzero top homology "
           "and pass the CM link suite",
           seconds_since(t0), 600.0);
}

void criterion_5_lemma_suites(const Building& fano)
{
    auto t0 = Clock::now();
    bool ok = true;
    auto thin = Building::thin(2);
    auto big = Building::flag(3, 2);

    // edge lengths and chamber diameters across all generated buildings
    for (const Building* bp : std::initializer_list<const Building*>{&fano, &thin, &big}) {
        const Building& b = *bp;
        for (const auto& s : b.complex().all_simplices()) {
            if (s.dim() != 1) continue;
            auto chart = b.common_apartment(s, s);
            const auto& cu = b.model().coords(chart.bld_to_cox.at(s.vertices()[0]));
            const auto& cv = b.model().coords(chart.bld_to_cox.at(s.vertices()[1]));
            long long ip = 0;
            for (std::size_t i = 0; i < cu.size(); ++i) ip += cu[i] * cv[i];
            ok = ok && ip > 0;  // irreducible type: strictly acute
        }
        for (const auto& f : b.complex().facets()) {
            auto chart = b.common_apartment(f, f);
            const auto& vs = f.vertices();
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j) {
                    const auto& cu = b.model().coords(chart.bld_to_cox.at(vs[i]));
                    const auto& cv = b.model().coords(chart.bld_to_cox.at(vs[j]));
                    long long ip = 0;
                    for (std::size_t k = 0; k < cu.size(); ++k) ip += cu[k] * cv[k];
                    ok = ok && ip >= 0;
                }
        }
    }
    if (!ok) std::printf("  criterion 5 detail: edge/diameter suite failed\n");

    // retraction well-posedness: exhaustive on the plane for both pole kinds
    std::vector<Pole> fano_poles;
    for (VertexId v : fano.complex().vertex_ids()) fano_poles.push_back(Pole::at_vertex(fano, v));
    for (const auto& e : fano.complex().facets())
        fano_poles.push_back(Pole::at_barycenter(fano, e));
    for (const auto& x : fano_poles) {
        auto audit = wellposedness_audit(fano, x);
        if (!audit.ok()) {
            ok = false;
            std::printf("  criterion 5 detail: audit disagreement\n");
        }
    }

    // filtration laws on every midpoint pole
    for (const auto& e : fano.complex().facets()) {
        Filtration filt(fano, Pole::at_barycenter(fano, e));
        for (const auto& s : filt.simplices()) {
            if (!(filt.restriction(filt.restriction(s)) == filt.restriction(s))) ok = false;
            for (const auto& face : s.all_faces()) {
                if (filt.height(face) > filt.height(s)) ok = false;
                if ((filt.height(face) == filt.height(s)) !=
                    (filt.restriction(face) == filt.restriction(s)))
                    ok = false;
            }
        }
        for (const auto& a : filt.image()) {
            if (!filt.preceq(Simplex{}, a)) ok = false;
            if (!a.empty() && filt.preceq(a, Simplex{})) ok = false;
        }
        if (!(filt.stage(0) ==
              SimplicialComplex::join(filt.open_hemisphere(), filt.split().hor)))
            ok = false;
        if (!(filt.stage(filt.num_stages()) == filt.closed_hemisphere())) ok = false;
        for (const auto& sigma : filt.image()) {
            if (sigma.empty()) continue;
            if (!(filt.relative_link(sigma) == filt.relative_link_predicted(sigma))) ok = false;
        }
    }
    if (!ok) std::printf("  criterion 5 detail: filtration suite failed\n");

    // cone boundary law, exhaustive over opposite pairs and star simplices
    long long cones = 0;
    for (const auto& sigma : fano.complex().all_simplices()) {
        if (sigma.empty()) continue;
        auto star_closure = fano.complex().star(sigma);
        auto bd_star = fano.complex().boundary_of_star(sigma);
        for (const auto& tau : fano.opposites_of(sigma)) {
            for (const auto& theta : star_closure.all_simplices()) {
                Simplex lam = sigma.set_union(theta);
                std::vector<Simplex> expect_gens;
                for (const auto& face : lam.all_faces())
                    if (!sigma.face_of(face)) expect_gens.push_back(face);
                SimplicialComplex expect =
                    expect_gens.empty()
                        ? SimplicialComplex::void_complex()
                        : SimplicialComplex(fano.complex().vertex_infos(),
                                            maximalize(expect_gens));
                for (auto variant : {ConeVariant::FULL, ConeVariant::REMOVE_SOURCE,
                                      ConeVariant::REMOVE_BOTH}) {
                    auto cone = cone_complex(fano, sigma, theta, tau, variant);
                    ++cones;
                    if (!(complex_intersection(cone, bd_star) == expect)) ok = false;
                }
            }
        }
    }
    if (cones < 3000) ok = false;

    // removed-star cones have point homology
    for (const auto& e : {fano.complex().facets()[0], fano.complex().facets()[5]}) {
        Filtration filt(fano, Pole::at_barycenter(fano, e));
        for (const auto& sigma : filt.image_at_height(1)) {
            auto l = filt.relative_link(sigma);
            auto good = find_good_opposite(filt, sigma, l);
            auto kp = cone_complex_union(fano, sigma, l, good.tau, ConeVariant::REMOVE_SOURCE);
            if (!reduced_homology(kp).trivial()) ok = false;
            if (kp.dim() != sigma.dim() + l.dim() + 1) ok = false;
        }
    }

    report(5, ok, "exact lemma suites (lengths, diameters, audits, filtration, cones)",
           seconds_since(t0), 0.0);
}

void criterion_6_apartment_intersections(const Building& fano)
{
    auto t0 = Clock::now();
    bool ok = true;
    const auto& apartments = fano.apartments();
    ok = ok && apartments.size() == 28;
    long long searched = 0;
    for (const auto& sigma : apartments) {
        auto scx = fano.chart_complex(sigma);
        std::vector<SimplicialComplex> targets;
        for (const auto& ch : scx.facets())
            targets.push_back(SimplicialComplex(fano.complex().vertex_infos(), {ch}));
        for (VertexId v : scx.vertex_ids()) targets.push_back(scx.star(Simplex{v}));
        for (const auto& k : targets) {
            auto found = fano.find_apartment_with_intersection(sigma, k);
            ++searched;
            if (!found) {
                ok = false;
                continue;
            }
            // verify the equality independently
            std::vector<VertexId> common;
            std::set_intersection(sigma.image_vertices.begin(), sigma.image_vertices.end(),
                                  found->image_vertices.begin(), found->image_vertices.end(),
                                  std::back_inserter(common));
            if (!(fano.complex().full_subcomplex(common) == k)) ok = false;
        }
    }
    ok = ok && searched == 28 * 12;
    report(6, ok, "apartment intersections realize every closed chamber and vertex star",
           seconds_since(t0), 0.0);
}

void criterion_7_law_of_cosines()
{
    auto t0 = Clock::now();
    bool ok = true;
    double worst = 0;
    for (int rank : {2, 3}) {
        auto cx = generate_coxeter(rank);
        std::mt19937_64 rng(20240902 + static_cast<std::uint64_t>(rank));
        int done = 0;
        while (done < 5000) {
            auto x = random_rational_point(cx, rng);
            auto y = random_rational_point(cx, rng);
            auto z = random_rational_point(cx, rng);
            try {
                auto o = apartment_angle_oracle(x, y, z);
                double lhs = std::cos(point_distance(y, z));
                double rhs = std::cos(o.d_xy) * std::cos(o.d_xz) +
                             std::sin(o.d_xy) * std::sin(o.d_xz) * std::cos(o.angle_x);
                worst = std::max(worst, std::abs(lhs - rhs));
                ++done;
            } catch (const DomainError&) {
                continue;
            }
        }
    }
    ok = worst < 1e-9;
    std::printf("  criterion 7 detail: max residual %.3e over 10000 samples\n", worst);
    report(7, ok, "spherical law of cosines holds to 1e-9 on sampled rational triples",
           seconds_since(t0), 0.0);
}

void criterion_8_determinism()
{
    auto t0 = Clock::now();
    VerificationJob job;
    job.building_spec = Json{{"family", "A"}, {"n", 2}, {"q", 2}};
    job.poles = "representative";
    job.checks = {"solomon-tits", "theorem-a", "theorem-b", "lemmas-metric"};
    job.samples = 300;
    job.seed = 20240902;
    auto a = run_verification(job).to_string();
    auto b = run_verification(job).to_string();
    bool ok = (a == b) && !a.empty();
    report(8, ok, "verification reports are byte-identical across reruns", seconds_since(t0),
           0.0);
}

}  // namespace

int main()
{
    auto fano = Building::flag(2, 2);
    auto big = Building::flag(3, 2);

    criterion_1_wedge_count(fano);
    criterion_2_open_hemispheres(fano);
    criterion_3_closed_hemispheres(fano);
    criterion_4_rank_three(big);
    criterion_5_lemma_suites(fano);
    criterion_6_apartment_intersections(fano);
    criterion_7_law_of_cosines();
    criterion_8_determinism();

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
