#include "hemilab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace hemilab {

const char* const kSchemaTag = "hemilab/v1";

VerificationJob VerificationJob::from_json(const Json& j)
{
    if (j.value("schema", kSchemaTag) != kSchemaTag)
        throw InputError("job: unsupported schema");
    VerificationJob job;
    job.building_spec = j.at("building");
    if (j.contains("poles")) {
        if (j.at("poles").is_string()) {
            job.poles = j.at("poles").get<std::string>();
        } else {
            job.poles = "explicit";
            for (const auto& p : j.at("poles")) job.pole_specs.push_back(p);
        }
    }
    if (j.contains("checks")) job.checks = j.at("checks").get<std::vector<std::string>>();
    job.seed = j.value("seed", 1ull);
    if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        job.max_cells = b.value("max_cells", job.max_cells);
        job.samples = b.value("samples", job.samples);
        job.jobs = b.value("jobs", job.jobs);
    }
    return job;
}

Json VerificationJob::to_json() const
{
    Json j;
    j["schema"] = kSchemaTag;
    j["building"] = building_spec;
    if (poles == "explicit") {
        Json arr = Json::array();
        for (const auto& p : pole_specs) arr.push_back(p);
        j["poles"] = arr;
    } else {
        j["poles"] = poles;
    }
    j["checks"] = checks;
    j["seed"] = seed;
    j["bounds"] = Json{{"max_cells", max_cells}, {"samples", samples}, {"jobs", jobs}};
    return j;
}

bool VerdictReport::all_ok() const
{
    for (const auto& e : entries)
        if (e.status == "fail") return false;
    return true;
}

OrderedJson VerdictReport::to_json() const
{
    OrderedJson j;
    j["schema"] = kSchemaTag;
    j["job"] = OrderedJson::parse(job_echo.dump());
    j["checks"] = OrderedJson::array();
    long long pass = 0, fail = 0, advisory = 0, skipped = 0;
    for (const auto& e : entries) {
        OrderedJson c;
        c["name"] = e.name;
        c["status"] = e.status;
        c["instances"] = e.instances;
        c["evidence"] = e.evidence;
        j["checks"].push_back(c);
        if (e.status == "pass") ++pass;
        if (e.status == "fail") ++fail;
        if (e.status == "advisory") ++advisory;
        if (e.status == "skipped") ++skipped;
    }
    j["summary"] =
        OrderedJson{{"pass", pass}, {"fail", fail}, {"advisory", advisory}, {"skipped", skipped}};
    return j;
}

std::string VerdictReport::to_string() const { return to_json().dump(2) + "\n"; }

std::vector<std::pair<std::string, Pole>> poles_for_job(const VerificationJob& job,
                                                        const Building& b)
{
    std::vector<std::pair<std::string, Pole>> out;
    if (job.poles == "explicit") {
        for (std::size_t i = 0; i < job.pole_specs.size(); ++i)
            out.emplace_back("pole" + std::to_string(i),
                             pole_from_spec(b, job.pole_specs[i]));
        return out;
    }
    if (job.poles == "representative") {
        std::set<int> seen;
        for (VertexId v : b.complex().vertex_ids()) {
            int t = b.complex().vtype(v);
            if (seen.insert(t).second)
                out.emplace_back("vertex:" + std::to_string(v), Pole::at_vertex(b, v));
        }
        // one edge joining the extreme types
        const auto& types = b.complex().typeset();
        int lo = types.front(), hi = types.back();
        for (const auto& s : b.complex().all_simplices()) {
            if (s.dim() != 1) continue;
            int ta = b.complex().vtype(s.vertices()[0]);
            int tb = b.complex().vtype(s.vertices()[1]);
            if ((ta == lo && tb == hi) || (ta == hi && tb == lo)) {
                out.emplace_back("mid:" + s.to_string(), Pole::at_barycenter(b, s));
                break;
            }
        }
        return out;
    }
    // all vertices and all edge midpoints
    for (VertexId v : b.complex().vertex_ids())
        out.emplace_back("vertex:" + std::to_string(v), Pole::at_vertex(b, v));
    for (const auto& s : b.complex().all_simplices())
        if (s.dim() == 1) out.emplace_back("mid:" + s.to_string(), Pole::at_barycenter(b, s));
    return out;
}

namespace {

struct Ctx {
    const VerificationJob& job;
    const Building& b;
    const std::vector<std::pair<std::string, Pole>>& poles;
};

std::string status_from(bool any_fail, bool any_advisory, long long instances)
{
    if (any_fail) return "fail";
    if (instances == 0) return "skipped";
    if (any_advisory) return "advisory";
    return "pass";
}

// exact inner product of two building vertices inside a chart
long long chart_inner(const Building& b, const Building::Chart& chart, VertexId u, VertexId v)
{
    const auto& cu = b.model().coords(chart.bld_to_cox.at(u));
    const auto& cv = b.model().coords(chart.bld_to_cox.at(v));
    long long s = 0;
    for (std::size_t i = 0; i < cu.size(); ++i) s += cu[i] * cv[i];
    return s;
}

CheckEntry check_solomon_tits(const Ctx& ctx)
{
    CheckEntry e;
    e.name = "solomon-tits";
    auto profile = reduced_homology(ctx.b.complex(), ctx.job.max_cells);
    int d = ctx.b.complex().dim();
    bool spherical = is_homology_spherical(ctx.b.complex(), d, ctx.job.max_cells);
    bool noncontractible = profile.betti_of(d) > 0;
    e.instances = 1;
    e.evidence["dim"] = d;
    e.evidence["profile"] = homology_to_json(profile);
    e.evidence["homology_spherical"] = spherical;
    e.evidence["top_betti"] = profile.betti_of(d);
    e.status = status_from(!(spherical && noncontractible), false, 1);
    return e;
}

CheckEntry check_theorem_a(const Ctx& ctx)
{
    CheckEntry e;
    e.name = "theorem-a";
    bool any_fail = false, any_advisory = false;
    bool thick = ctx.b.is_thick();
    int dim = ctx.b.complex().dim();
    e.evidence["instances"] = OrderedJson::array();

    auto run_instance = [&](const std::string& name, const SupportedSubcomplex& sub) {
        OrderedJson inst;
        inst["name"] = name;
        if (sub.complex.is_empty_complex() || sub.complex.is_void()) {
            inst["status"] = "skipped-empty";
            e.evidence["instances"].push_back(inst);
            return;
        }
        ++e.instances;
        auto verdict = homotopy_cm_verdict(sub.complex, ctx.job.jobs, ctx.job.max_cells);
        bool dim_ok = sub.complex.dim() == dim;
        bool cm_ok = verdict.homotopy_cm;
        inst["dim"] = sub.complex.dim();
        inst["homotopy_cm"] = cm_ok;
        inst["top_betti"] = verdict.profile.betti_of(sub.complex.dim());
        inst["pi1"] = verdict.pi1 == Pi1Status::TRIVIAL
                          ? "trivial"
                          : (verdict.pi1 == Pi1Status::UNKNOWN ? "unknown" : "skipped");
        bool ok = dim_ok && cm_ok;
        if (thick && dim >= 1) {
            bool nc = verdict.noncontractible;
            inst["noncontractible"] = nc;
            ok = ok && nc;
        } else {
            inst["noncontractible"] = "skipped (thin or dimension 0)";
        }
        if (!sub.full_exact) {
            inst["support"] = "vertex-hull approximation";
            any_advisory = true;
        }
        if (!verdict.cm_failures.empty()) {
            OrderedJson witnesses = OrderedJson::array();
            for (std::size_t i = 0; i < verdict.cm_failures.size() && i < 4; ++i)
                witnesses.push_back(verdict.cm_failures[i].second);
            inst["witnesses"] = witnesses;
        }
        if (!sub.theorem_eligible && !ok) {
            inst["status"] = "advisory";
            any_advisory = true;
        } else {
            inst["status"] = ok ? "pass" : "fail";
            if (!ok) any_fail = true;
        }
        e.evidence["instances"].push_back(inst);
    };

    for (const auto& [name, x] : ctx.poles) {
        auto cls = classify(ctx.b, x);
        run_instance(name + "/closed-hemisphere", hemisphere(ctx.b, cls, HemisphereKind::CLOSED));
        run_instance(name + "/cap(1/2)", cap_complement(ctx.b, x, Rat(1, 2), true));
    }
    if (!ctx.b.is_thick_model() && ctx.b.num_factors() == 1) {
        // thin model: root supports through the identity chart
        const auto& chart = ctx.b.apartments()[0];
        const auto& roots = ctx.b.model().roots();
        for (std::size_t i = 0; i < roots.size() && i < 2; ++i) {
            run_instance("root" + std::to_string(i) + "/closed",
                         root_complement(ctx.b, chart, roots[i], true));
            run_instance("root" + std::to_string(i) + "/strict",
                         root_complement(ctx.b, chart, roots[i], false));
        }
    }
    e.status = status_from(any_fail, any_advisory, e.instances);
    return e;
}

CheckEntry check_theorem_b(const Ctx& ctx)
{
    CheckEntry e;
    e.name = "theorem-b";
    if (!ctx.b.is_thick()) {
        e.status = "skipped";
        e.evidence["reason"] = "building is not thick";
        return e;
    }
    bool any_fail = false;
    e.evidence["poles"] = OrderedJson::array();

    for (const auto& [name, x] : ctx.poles) {
        ++e.instances;
        OrderedJson inst;
        inst["pole"] = name;
        Filtration filt(ctx.b, x, ctx.job.max_cells);

        const auto& open = filt.open_hemisphere();
        int want_dim = filt.split().ver.dim();
        auto verdict = homotopy_cm_verdict(open, ctx.job.jobs, ctx.job.max_cells);
        bool ok = verdict.homotopy_cm && verdict.homology_spherical && open.dim() == want_dim &&
                  verdict.noncontractible;
        inst["open_dim"] = open.dim();
        inst["expected_dim"] = want_dim;
        inst["homotopy_cm"] = verdict.homotopy_cm;
        inst["top_betti"] = verdict.profile.betti_of(open.dim());
        inst["pi1"] = verdict.pi1 == Pi1Status::TRIVIAL
                          ? "trivial"
                          : (verdict.pi1 == Pi1Status::UNKNOWN ? "unknown" : "skipped");
        if (!verdict.cm_failures.empty()) {
            OrderedJson witnesses = OrderedJson::array();
            for (std::size_t i = 0; i < verdict.cm_failures.size() && i < 4; ++i)
                witnesses.push_back(verdict.cm_failures[i].second);
            inst["witnesses"] = witnesses;
        }

        // filtration pipeline
        bool stages_ok =
            filt.stage(0) == SimplicialComplex::join(filt.open_hemisphere(), filt.split().hor) &&
            filt.stage(filt.num_stages()) == filt.closed_hemisphere();
        bool stars_ok = true;
        for (int k = 1; k <= filt.max_height() && stars_ok; ++k) {
            std::set<Simplex> diff;
            for (const auto& s : filt.simplices())
                if (filt.height(s) == k) diff.insert(s);
            std::set<Simplex> star_union;
            for (const auto& sigma : filt.image_at_height(k))
                for (const auto& s : filt.relative_star(sigma))
                    if (!star_union.insert(s).second) stars_ok = false;
            if (star_union != diff) stars_ok = false;
        }
        bool links_ok = true;
        for (const auto& sigma : filt.image()) {
            if (sigma.empty()) continue;
            if (!(filt.relative_link(sigma) == filt.relative_link_predicted(sigma)))
                links_ok = false;
        }
        inst["stages"] = stages_ok;
        inst["relative_stars_disjoint"] = stars_ok;
        inst["relative_links"] = links_ok;
        ok = ok && stages_ok && stars_ok && links_ok;

        // good opposites for every nonempty image simplex, through the cone
        // cover (links with a horizontal factor need one opposite per
        // apartment of that factor; a single opposite cannot exist there)
        OrderedJson routes = OrderedJson::array();
        bool opposites_ok = true;
        for (const auto& sigma : filt.image()) {
            if (sigma.empty()) continue;
            try {
                auto cover = build_cone_cover(filt, sigma);
                int h = filt.height(sigma);
                bool contained = is_subcomplex(cover.k_full, filt.stage(h)) &&
                                 is_subcomplex(cover.k_lower, filt.stage(h - 1));
                if (!contained) opposites_ok = false;
                routes.push_back(OrderedJson{{"sigma", sigma.to_string()},
                                             {"pieces", cover.pieces.size()},
                                             {"routes", cover.routes},
                                             {"contained", contained}});
            } catch (const SearchError&) {
                opposites_ok = false;
                routes.push_back(OrderedJson{{"sigma", sigma.to_string()}, {"route", "none"}});
            }
        }
        inst["good_opposites"] = routes;
        ok = ok && opposites_ok;

        // two antipodes strictly beyond the equator for height-1 vertices
        long long pairs_checked = 0;
        bool antipodes_ok = true;
        for (const auto& sigma : filt.image_at_height(1)) {
            if (sigma.size() != 1) continue;
            long long far_opposites = 0;
            for (const auto& opp : ctx.b.opposites_of(sigma))
                if (filt.classification().of(opp.vertices()[0]) == Tri::GT) ++far_opposites;
            ++pairs_checked;
            if (far_opposites < 2) antipodes_ok = false;
        }
        inst["height1_vertices_with_two_far_opposites"] =
            antipodes_ok ? pairs_checked : -1;
        ok = ok && antipodes_ok;

        inst["status"] = ok ? "pass" : "fail";
        if (!ok) any_fail = true;
        e.evidence["poles"].push_back(inst);
    }
    e.status = status_from(any_fail, false, e.instances);
    return e;
}

CheckEntry check_lemmas_metric(const Ctx& ctx)
{
    CheckEntry e;
    e.name = "lemmas-metric";
    bool any_fail = false;
    const auto& b = ctx.b;

    // edge lengths never exceed π/2 (cross-factor edges realize it exactly)
    long long edges = 0, edge_violations = 0;
    for (const auto& s : b.complex().all_simplices()) {
        if (s.dim() != 1) continue;
        ++edges;
        auto chart = b.common_apartment(s, s);
        long long ip = chart_inner(b, chart, s.vertices()[0], s.vertices()[1]);
        bool same_factor = b.factor_of(s.vertices()[0]) == b.factor_of(s.vertices()[1]);
        if (ip < 0 || (same_factor && ip == 0)) ++edge_violations;
    }
    e.evidence["edge_length"] =
        OrderedJson{{"edges", edges}, {"violations", edge_violations}};
    if (edge_violations) any_fail = true;
    e.instances += edges;

    // chamber diameters stay within a right angle
    long long pairs = 0, diameter_violations = 0;
    for (const auto& f : b.complex().facets()) {
        auto chart = b.common_apartment(f, f);
        const auto& vs = f.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                ++pairs;
                if (chart_inner(b, chart, vs[i], vs[j]) < 0) ++diameter_violations;
            }
    }
    e.evidence["chamber_diameter"] =
        OrderedJson{{"pairs", pairs}, {"violations", diameter_violations}};
    if (diameter_violations) any_fail = true;
    e.instances += pairs;

    // retraction decreases distances on sampled vertex pairs
    {
        std::mt19937_64 rng(ctx.job.seed);
        const auto& chart = b.apartments()[0];
        Simplex center = b.chart_image(chart, b.model().chambers()[0]);
        auto ids = b.complex().vertex_ids();
        long long violations = 0, samples = 0;
        std::size_t want = std::min<std::size_t>(ctx.job.samples, 20000);
        for (std::size_t trial = 0; trial < want; ++trial) {
            VertexId u = ids[rng() % ids.size()];
            VertexId v = ids[rng() % ids.size()];
            if (u == v) continue;
            ++samples;
            auto ru = b.retraction(chart, center, Simplex{u});
            auto rv = b.retraction(chart, center, Simplex{v});
            auto cuv = b.common_apartment(Simplex{u}, Simplex{v});
            long long before = chart_inner(b, cuv, u, v);
            long long after = chart_inner(b, chart, ru.vertices()[0], rv.vertices()[0]);
            if (after < before) ++violations;
        }
        e.evidence["retraction_distance_decrease"] =
            OrderedJson{{"samples", samples}, {"violations", violations}};
        if (violations) any_fail = true;
        e.instances += samples;
    }

    // classification well-posedness per pole
    {
        OrderedJson audits = OrderedJson::array();
        bool exhaustive = b.complex().vertex_ids().size() <= 80;
        for (const auto& [name, x] : ctx.poles) {
            auto rep = exhaustive ? wellposedness_audit(b, x)
                                  : wellposedness_audit(b, x, 12, ctx.job.seed);
            audits.push_back(OrderedJson{{"pole", name},
                                         {"combinations", rep.combinations},
                                         {"disagreements",
                                          static_cast<long long>(rep.disagreements.size())}});
            if (!rep.ok()) any_fail = true;
            e.instances += rep.combinations;
        }
        e.evidence["wellposedness"] = audits;
    }

    // spherical law of cosines in the floating oracle
    {
        std::mt19937_64 rng(ctx.job.seed + 1);
        const auto& model = b.model();
        long long done = 0, violations = 0;
        double worst = 0;
        while (done < static_cast<long long>(ctx.job.samples)) {
            auto x = random_rational_point(model, rng);
            auto y = random_rational_point(model, rng);
            auto z = random_rational_point(model, rng);
            try {
                auto o = apartment_angle_oracle(x, y, z);
                double lhs = std::cos(point_distance(y, z));
                double rhs = std::cos(o.d_xy) * std::cos(o.d_xz) +
                             std::sin(o.d_xy) * std::sin(o.d_xz) * std::cos(o.angle_x);
                double res = std::abs(lhs - rhs);
                worst = std::max(worst, res);
                if (res >= 1e-9) ++violations;
                ++done;
            } catch (const DomainError&) {
                continue;
            }
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3e", worst);
        e.evidence["law_of_cosines"] = OrderedJson{
            {"samples", done}, {"violations", violations}, {"max_residual", std::string(buf)}};
        if (violations) any_fail = true;
        e.instances += done;
    }

    // thin buildings: classification equals the direct sign computation
    if (!b.is_thick_model() && b.num_factors() >= 1) {
        bool all_thin = true;
        for (int f = 0; f < b.num_factors(); ++f)
            if (b.factor(f).thick_model()) all_thin = false;
        if (all_thin) {
            const auto& chart = b.apartments()[0];
            long long checked = 0, disagreements = 0;
            for (const auto& [name, x] : ctx.poles) {
                auto cls = classify(b, x);
                auto pt = x.recharted(chart).point();
                for (VertexId v : b.complex().vertex_ids()) {
                    Sign s = cos_sign_vertex(pt, b.model(), chart.bld_to_cox.at(v));
                    Tri expect =
                        (s == Sign::POS) ? Tri::LT : (s == Sign::ZERO ? Tri::EQ : Tri::GT);
                    ++checked;
                    if (cls.of(v) != expect) ++disagreements;
                }
            }
            e.evidence["thin_direct_agreement"] =
                OrderedJson{{"checked", checked}, {"disagreements", disagreements}};
            if (disagreements) any_fail = true;
            e.instances += checked;
        }
    }

    e.status = status_from(any_fail, false, e.instances);
    return e;
}

CheckEntry check_lemmas_filtration(const Ctx& ctx)
{
    CheckEntry e;
    e.name = "lemmas-filtration";
    bool any_fail = false;
    const auto& b = ctx.b;
    e.evidence["poles"] = OrderedJson::array();

    for (const auto& [name, x] : ctx.poles) {
        OrderedJson inst;
        inst["pole"] = name;
        Filtration filt(b, x, ctx.job.max_cells);
        const auto& cls = filt.classification();
        auto cls_fn = [&](VertexId v) { return cls.of(v); };
        long long local = 0;
        bool ok = true;

        // idempotence and the image being a subcomplex of the vertical part
        for (const auto& s : filt.simplices()) {
            ++local;
            if (!(filt.restriction(filt.restriction(s)) == filt.restriction(s))) ok = false;
        }
        for (const auto& r : filt.image()) {
            for (const auto& face : r.all_faces())
                if (!filt.in_image(face)) ok = false;
            for (VertexId v : r.vertices())
                if (!filt.split().ver.has_vertex(v)) ok = false;
        }
        inst["idempotent"] = ok;

        // poset axioms with unique minimal element
        bool poset_ok = true;
        for (const auto& a : filt.image()) {
            if (!filt.preceq(Simplex{}, a)) poset_ok = false;
            if (!a.empty() && filt.preceq(a, Simplex{})) poset_ok = false;
            for (const auto& b2 : filt.image()) {
                if (filt.preceq(a, b2) && filt.preceq(b2, a) && !(a == b2)) poset_ok = false;
                for (const auto& c : filt.image())
                    if (filt.preceq(a, b2) && filt.preceq(b2, c) && !filt.preceq(a, c))
                        poset_ok = false;
            }
        }
        inst["poset"] = poset_ok;
        ok = ok && poset_ok;

        // lower bounds extend: restr(s) ⪯ t forces s ∪ t to restrict to t
        bool order_ok = true;
        for (const auto& s : filt.equator().all_simplices()) {
            for (const auto& t : filt.image()) {
                ++local;
                if (!filt.preceq(filt.restriction(s), t)) continue;
                Simplex u = s.set_union(t);
                if (!b.complex().contains(u) || !(filt.restriction(u) == t)) order_ok = false;
            }
        }
        inst["order_extension"] = order_ok;
        ok = ok && order_ok;

        // face-height monotonicity with the equality criterion
        bool height_ok = true;
        for (const auto& t : filt.simplices()) {
            for (const auto& s : t.all_faces()) {
                ++local;
                if (filt.height(s) > filt.height(t)) height_ok = false;
                bool same_h = filt.height(s) == filt.height(t);
                bool same_r = filt.restriction(s) == filt.restriction(t);
                if (same_h != same_r) height_ok = false;
            }
        }
        inst["face_height"] = height_ok;
        ok = ok && height_ok;

        // the link-factor criterion for equal restrictions
        bool criterion_ok = true;
        for (const auto& tau : filt.simplices()) {
            Simplex eq_face = filt.equator_face(tau);
            for (const auto& sigma : eq_face.all_faces()) {
                if (sigma.empty()) continue;
                ++local;
                auto split = link_split(b, cls, sigma);
                Simplex rest = eq_face.set_minus(sigma);
                bool in_hor = rest.empty() || split.hor.contains(rest);
                bool below = filt.restriction(tau).face_of(sigma);
                bool equal = filt.restriction(tau) == filt.restriction(sigma);
                if (in_hor != below || below != equal) criterion_ok = false;
            }
        }
        inst["equal_restriction_criterion"] = criterion_ok;
        ok = ok && criterion_ok;

        // restriction commutes with links
        bool link_ok = true;
        for (const auto& tau : filt.equator().all_simplices()) {
            if (tau.empty()) continue;
            for (const auto& sigma : tau.all_faces()) {
                if (sigma.empty() || sigma == tau) continue;
                ++local;
                auto lk = b.complex().link(sigma);
                Simplex inner = restriction_generic(lk, cls_fn, tau.set_minus(sigma));
                if (!(inner == filt.restriction(tau).set_minus(sigma))) link_ok = false;
            }
        }
        inst["link_commutation"] = link_ok;
        ok = ok && link_ok;

        // stage endpoints and the disjoint star decomposition
        bool stages_ok =
            filt.stage(0) == SimplicialComplex::join(filt.open_hemisphere(), filt.split().hor) &&
            filt.stage(filt.num_stages()) == filt.closed_hemisphere();
        for (int k = 1; k <= filt.max_height(); ++k) {
            std::set<Simplex> star_union;
            std::set<Simplex> diff;
            for (const auto& s : filt.simplices())
                if (filt.height(s) == k) diff.insert(s);
            for (const auto& sigma : filt.image_at_height(k))
                for (const auto& s : filt.relative_star(sigma))
                    if (!star_union.insert(s).second) stages_ok = false;
            if (diff != star_union) stages_ok = false;
        }
        inst["stages"] = stages_ok;
        ok = ok && stages_ok;

        // relative links against the induced-pole prediction
        bool links_ok = true;
        for (const auto& sigma : filt.image()) {
            if (sigma.empty()) continue;
            ++local;
            if (!(filt.relative_link(sigma) == filt.relative_link_predicted(sigma)))
                links_ok = false;
        }
        inst["relative_links"] = links_ok;
        ok = ok && links_ok;

        inst["checks"] = local;
        inst["status"] = ok ? "pass" : "fail";
        if (!ok) any_fail = true;
        e.instances += local;
        e.evidence["poles"].push_back(inst);
    }
    e.status = status_from(any_fail, false, e.instances);
    return e;
}

CheckEntry check_lemmas_cones(const Ctx& ctx)
{
    CheckEntry e;
    e.name = "lemmas-cones";
    bool any_fail = false, any_advisory = false;
    const auto& b = ctx.b;
    e.evidence["poles"] = OrderedJson::array();

    for (const auto& [name, x] : ctx.poles) {
        Filtration filt(b, x, ctx.job.max_cells);
        if (filt.equator().is_empty_complex()) continue;
        OrderedJson inst;
        inst["pole"] = name;
        long long local = 0;
        bool ok = true;

        // cone boundary law over image vertices, their opposites (first four),
        // and all simplices of the closed star
        bool boundary_ok = true;
        for (const auto& sigma : filt.image()) {
            if (sigma.size() != 1) continue;
            auto star_closure = b.complex().star(sigma);
            auto bd_star = b.complex().boundary_of_star(sigma);
            auto opposites = b.opposites_of(sigma);
            if (opposites.size() > 4) opposites.resize(4);
            for (const auto& tau : opposites) {
                for (const auto& theta : star_closure.all_simplices()) {
                    ++local;
                    Simplex lam = sigma.set_union(theta);
                    std::vector<Simplex> expect_gens;
                    for (const auto& face : lam.all_faces())
                        if (!sigma.face_of(face)) expect_gens.push_back(face);
                    SimplicialComplex expect =
                        expect_gens.empty()
                            ? SimplicialComplex::void_complex()
                            : SimplicialComplex(b.complex().vertex_infos(),
                                                maximalize(expect_gens));
                    for (auto variant : {ConeVariant::FULL, ConeVariant::REMOVE_SOURCE,
                                          ConeVariant::REMOVE_BOTH}) {
                        auto cone = cone_complex(b, sigma, theta, tau, variant);
                        if (!(complex_intersection(cone, bd_star) == expect)) boundary_ok = false;
                    }
                }
            }
        }
        inst["cone_boundary"] = boundary_ok;
        ok = ok && boundary_ok;

        // cones over the boundary of the star stay in the closed hemisphere
        bool south_ok = true;
        for (const auto& sigma : filt.image()) {
            if (sigma.empty()) continue;
            auto bd = filt.closed_hemisphere().boundary_of_star(sigma);
            auto opposites = b.opposites_of(sigma);
            if (opposites.size() > 4) opposites.resize(4);
            for (const auto& tau : opposites) {
                ++local;
                auto k_full = cone_complex_union(b, sigma, bd, tau, ConeVariant::FULL);
                if (!is_subcomplex(k_full, filt.closed_hemisphere())) south_ok = false;
            }
        }
        inst["cone_in_south"] = south_ok;
        ok = ok && south_ok;

        // contractibility of single cone unions at the right dimension
        bool contractible_ok = true;
        for (const auto& sigma : filt.image()) {
            if (sigma.empty()) continue;
            auto l = filt.relative_link(sigma);
            if (l.is_void()) continue;
            auto opposites = b.opposites_of(sigma);
            if (opposites.size() > 4) opposites.resize(4);
            for (const auto& tau : opposites) {
                ++local;
                auto kp = cone_complex_union(b, sigma, l, tau, ConeVariant::REMOVE_SOURCE);
                if (kp.dim() != sigma.dim() + l.dim() + 1) contractible_ok = false;
                if (!reduced_homology(kp, ctx.job.max_cells).trivial()) contractible_ok = false;
            }
        }
        inst["cones_contractible"] = contractible_ok;
        ok = ok && contractible_ok;

        // good opposites, the filter containment, and the gluing argument
        bool cover_ok = true;
        OrderedJson covers = OrderedJson::array();
        for (const auto& sigma : filt.image()) {
            if (sigma.empty()) continue;
            ++local;
            try {
                auto cover = build_cone_cover(filt, sigma);
                int h = filt.height(sigma);
                bool in_stage = is_subcomplex(cover.k_full, filt.stage(h));
                bool lower_is_meet =
                    cover.k_lower == complex_intersection(cover.k_full, filt.stage(h - 1));
                std::set<Simplex> a;
                for (const auto& s : filt.relative_star(sigma)) a.insert(s);
                for (const auto& s : cover.k_lower.all_simplices()) a.insert(s);
                auto kf = cover.k_full.all_simplices();
                bool covers_star = a == std::set<Simplex>(kf.begin(), kf.end());
                bool spherical =
                    is_homology_spherical(cover.k_lower, b.complex().dim(), ctx.job.max_cells);
                if (!(in_stage && lower_is_meet && covers_star && spherical)) cover_ok = false;
                covers.push_back(OrderedJson{{"sigma", sigma.to_string()},
                                             {"pieces", cover.pieces.size()},
                                             {"routes", cover.routes},
                                             {"spherical", spherical}});
            } catch (const SearchError& err) {
                cover_ok = false;
                covers.push_back(
                    OrderedJson{{"sigma", sigma.to_string()}, {"error", err.what()}});
            }
        }
        inst["cone_covers"] = covers;
        inst["gluing"] = cover_ok;
        ok = ok && cover_ok;

        // advisory: the removed open ball contains no pair of opposite vertices
        {
            auto lt = filt.classification().of_class(Tri::LT);
            bool no_pair = true;
            for (std::size_t i = 0; i < lt.size(); ++i)
                for (std::size_t j = i + 1; j < lt.size(); ++j)
                    if (b.opposite(Simplex{lt[i]}, Simplex{lt[j]})) no_pair = false;
            inst["open_ball_without_antipodes"] = no_pair ? "pass" : "advisory-fail";
            if (!no_pair) any_advisory = true;
        }

        // advisory: per-chart supported subcomplexes of coconvex supports are
        // homotopy equivalent to the support (homology of a point here)
        {
            bool hom_ok = true;
            auto charts = b.apartments_containing({x.carrier_bld});
            std::size_t limit = std::min<std::size_t>(charts.size(), 8);
            for (std::size_t i = 0; i < limit; ++i) {
                const auto& chart = b.apartments()[static_cast<std::size_t>(charts[i])];
                auto ccx = b.chart_complex(chart);
                std::vector<VertexId> ge, gt;
                for (VertexId v : ccx.vertex_ids()) {
                    if (filt.classification().of(v) != Tri::LT) ge.push_back(v);
                    if (filt.classification().of(v) == Tri::GT) gt.push_back(v);
                }
                if (!reduced_homology(ccx.full_subcomplex(ge)).trivial()) hom_ok = false;
                if (!reduced_homology(ccx.full_subcomplex(gt)).trivial()) hom_ok = false;
                ++local;
            }
            inst["chart_support_homotopy"] = hom_ok ? "pass" : "advisory-fail";
            if (!hom_ok) any_advisory = true;
        }

        inst["checks"] = local;
        inst["status"] = ok ? "pass" : "fail";
        if (!ok) any_fail = true;
        e.instances += local;
        e.evidence["poles"].push_back(inst);
    }
    e.status = status_from(any_fail, any_advisory, e.instances);
    return e;
}

}  // namespace

VerdictReport run_verification(const VerificationJob& job)
{
    Building b = building_from_spec(job.building_spec);
    auto poles = poles_for_job(job, b);
    Ctx ctx{job, b, poles};

    VerdictReport report;
    report.job_echo = job.to_json();
    for (const auto& check : job.checks) {
        if (check == "solomon-tits")
            report.entries.push_back(check_solomon_tits(ctx));
        else if (check == "theorem-a")
            report.entries.push_back(check_theorem_a(ctx));
        else if (check == "theorem-b")
            report.entries.push_back(check_theorem_b(ctx));
        else if (check == "lemmas-metric")
            report.entries.push_back(check_lemmas_metric(ctx));
        else if (check == "lemmas-filtration")
            report.entries.push_back(check_lemmas_filtration(ctx));
        else if (check == "lemmas-cones")
            report.entries.push_back(check_lemmas_cones(ctx));
        else
            throw InputError("unknown check: " + check);
    }
    return report;
}

}  // namespace hemilab
