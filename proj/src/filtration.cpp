#include "hemilab/filtration.hpp"

#include <algorithm>
#include <set>

namespace hemilab {

Simplex restriction_generic(const SimplicialComplex& ambient,
                            const std::function<Tri(VertexId)>& cls, const Simplex& s)
{
    std::vector<VertexId> eq;
    for (VertexId v : s.vertices())
        if (cls(v) == Tri::EQ) eq.push_back(v);
    Simplex eq_face(std::move(eq));
    if (eq_face.empty()) return eq_face;

    std::vector<VertexId> keep;
    auto chambers = ambient.facets_containing(eq_face);
    for (VertexId v : eq_face.vertices()) {
        bool witnessed = false;
        for (int fi : chambers) {
            const Simplex& c = ambient.facets()[static_cast<std::size_t>(fi)];
            Simplex panel = c.without_vertex(v);
            for (int fj : ambient.facets_containing(panel)) {
                const Simplex& d = ambient.facets()[static_cast<std::size_t>(fj)];
                Simplex completion = d.set_minus(panel);
                if (completion.size() != 1) continue;
                if (cls(completion.vertices()[0]) != Tri::EQ) {
                    witnessed = true;
                    break;
                }
            }
            if (witnessed) break;
        }
        if (witnessed) keep.push_back(v);
    }
    return Simplex(std::move(keep));
}

Filtration::Filtration(const Building& b, const Pole& x, std::size_t max_cells)
    : b_(&b), x_(x), cls_(classify(b, x))
{
    open_ = hemisphere(b, cls_, HemisphereKind::OPEN).complex;
    closed_ = hemisphere(b, cls_, HemisphereKind::CLOSED).complex;
    equator_ = hemisphere(b, cls_, HemisphereKind::EQUATOR).complex;
    split_ = hor_ver(b, cls_);

    simplices_ = closed_.all_simplices(max_cells);

    auto cls_fn = [this](VertexId v) { return cls_.of(v); };
    std::set<Simplex> image_set;
    for (const auto& s : simplices_) {
        Simplex r = restriction_generic(b.complex(), cls_fn, s);
        preimages_[r].push_back(s);
        image_set.insert(r);
        restr_[s] = std::move(r);
    }
    image_.assign(image_set.begin(), image_set.end());

    // heights: longest strictly increasing chain ending at each image simplex
    std::map<Simplex, int> index;
    for (std::size_t i = 0; i < image_.size(); ++i) index[image_[i]] = static_cast<int>(i);
    std::size_t m = image_.size();
    std::vector<std::vector<char>> strictly_less(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            if (preceq(image_[i], image_[j]) && !preceq(image_[j], image_[i]))
                strictly_less[i][j] = 1;
        }
    std::vector<int> h(m, -1);
    std::function<int(std::size_t)> compute = [&](std::size_t j) -> int {
        if (h[j] >= 0) return h[j];
        h[j] = 0;
        int best = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (strictly_less[i][j]) best = std::max(best, compute(i) + 1);
        h[j] = best;
        return best;
    };
    for (std::size_t j = 0; j < m; ++j) compute(j);
    for (std::size_t j = 0; j < m; ++j) {
        height_[image_[j]] = h[j];
        max_height_ = std::max(max_height_, h[j]);
    }

    // number of stages: rank of the vertical part of the equator complex
    std::vector<VertexId> ver_eq;
    for (VertexId v : equator_.vertex_ids())
        if (split_.ver.has_vertex(v)) ver_eq.push_back(v);
    SimplicialComplex ver_equator = b.complex().full_subcomplex(ver_eq);
    num_stages_ = ver_equator.dim() + 1;
    if (max_height_ > num_stages_) throw Error("filtration: height exceeds stage count");

    // stages F_0 .. F_N
    for (int k = 0; k <= num_stages_; ++k) {
        std::vector<Simplex> gens;
        for (const auto& s : simplices_)
            if (height(s) <= k) gens.push_back(s);
        if (gens.empty()) gens.push_back(Simplex{});
        stages_.push_back(SimplicialComplex(b.complex().vertex_infos(), maximalize(std::move(gens))));
    }
}

Simplex Filtration::equator_face(const Simplex& s) const
{
    std::vector<VertexId> eq;
    for (VertexId v : s.vertices())
        if (cls_.of(v) == Tri::EQ) eq.push_back(v);
    return Simplex(std::move(eq));
}

const Simplex& Filtration::restriction(const Simplex& s) const
{
    auto it = restr_.find(s);
    if (it == restr_.end())
        throw MembershipError("restriction: simplex not in the closed hemisphere complex");
    return it->second;
}

bool Filtration::in_image(const Simplex& s) const
{
    return std::binary_search(image_.begin(), image_.end(), s);
}

bool Filtration::preceq(const Simplex& a, const Simplex& b) const
{
    if (!in_image(a) || !in_image(b))
        throw PreconditionError("preceq: arguments must be image simplices");
    Simplex u = a.set_union(b);
    if (!b_->complex().contains(u)) return false;
    return restriction(u) == b;
}

int Filtration::height(const Simplex& s) const
{
    auto it = height_.find(restriction(s));
    if (it == height_.end()) throw Error("height: restriction not indexed");
    return it->second;
}

const SimplicialComplex& Filtration::stage(int k) const
{
    if (k < 0 || k > num_stages_)
        throw PreconditionError("stage index out of range: " + std::to_string(k));
    return stages_[static_cast<std::size_t>(k)];
}

std::vector<Simplex> Filtration::image_at_height(int k) const
{
    std::vector<Simplex> out;
    for (const auto& s : image_)
        if (height_.at(s) == k) out.push_back(s);
    return out;
}

const std::vector<Simplex>& Filtration::relative_star(const Simplex& s) const
{
    auto it = preimages_.find(s);
    if (it == preimages_.end())
        throw MembershipError("relative_star: not an image simplex");
    return it->second;
}

SimplicialComplex Filtration::relative_link(const Simplex& s) const
{
    return stage(height(s)).link(s);
}

SimplicialComplex Filtration::relative_link_predicted(const Simplex& s) const
{
    auto split = link_split(*b_, cls_, s);
    return SimplicialComplex::join(split.open_hemi, split.hor);
}

SimplicialComplex cone_complex(const Building& b, const Simplex& sigma, const Simplex& theta,
                               const Simplex& tau, ConeVariant variant)
{
    if (!b.opposite(sigma, tau))
        throw PreconditionError("cone_complex: simplices are not opposite");
    Simplex lam = sigma.set_union(theta);
    if (!b.complex().contains(lam))
        throw PreconditionError("cone_complex: theta is not in the closed star");

    // one apartment carries the whole construction: the gate of st(tau)
    // toward lam lies in the hull of the two, hence in this chart
    const auto& model = b.model();
    auto chart = b.common_apartment(lam, tau);
    Simplex clam = b.chart_preimage(chart, lam);
    Simplex ctau = b.chart_preimage(chart, tau);
    SimplicialComplex hull1 = model.conv({ctau, clam});
    Simplex gate;
    for (const auto& h : hull1.all_simplices())
        if (ctau.face_of(h) && h.size() > gate.size()) gate = h;
    for (const auto& h : hull1.all_simplices())
        if (ctau.face_of(h) && h.size() == gate.size() && !(h == gate))
            throw Error("cone_complex: gate is not unique");

    SimplicialComplex hull2 = model.conv({clam, gate});
    std::vector<Simplex> gens;
    for (const auto& s : hull2.all_simplices()) {
        Simplex img = b.chart_image(chart, s);
        if (variant != ConeVariant::FULL && sigma.face_of(img) && !sigma.empty()) continue;
        if (variant == ConeVariant::REMOVE_BOTH && tau.face_of(img) && !tau.empty()) continue;
        gens.push_back(img);
    }
    if (gens.empty()) return SimplicialComplex::void_complex();
    return SimplicialComplex(b.complex().vertex_infos(), maximalize(std::move(gens)));
}

SimplicialComplex cone_complex_union(const Building& b, const Simplex& sigma,
                                     const SimplicialComplex& l, const Simplex& tau,
                                     ConeVariant variant)
{
    if (l.is_void()) throw PreconditionError("cone_complex_union: L must be nonvoid");
    SimplicialComplex out = SimplicialComplex::void_complex();
    for (const auto& theta : l.all_simplices()) {
        auto piece = cone_complex(b, sigma, theta, tau, variant);
        out = out.is_void() ? piece : complex_union(out, piece);
    }
    return out;
}

bool cone_equator_in_star(const Filtration& filt, const Simplex& sigma,
                          const SimplicialComplex& k_full)
{
    const auto& b = filt.building();
    for (const auto& s : k_full.all_simplices()) {
        if (s.empty()) continue;
        bool all_eq = true;
        for (VertexId v : s.vertices())
            if (filt.classification().of(v) != Tri::EQ) {
                all_eq = false;
                break;
            }
        if (!all_eq) continue;
        if (!b.complex().contains(sigma.set_union(s))) return false;
    }
    return true;
}

GoodOpposite find_good_opposite(const Filtration& filt, const Simplex& sigma,
                                const SimplicialComplex& l, const Building::Chart* hint)
{
    const auto& b = filt.building();
    if (sigma.empty() || !filt.in_image(sigma))
        throw PreconditionError("find_good_opposite: sigma must be a nonempty image simplex");

    auto passes = [&](const Simplex& tau) {
        auto k_full = cone_complex_union(b, sigma, l, tau, ConeVariant::FULL);
        return cone_equator_in_star(filt, sigma, k_full);
    };

    // constructive route: an apartment through the pole and sigma, cut down
    // to the closed star of sigma by a second apartment
    try {
        Building::Chart chart =
            hint ? *hint : b.common_apartment(filt.pole().carrier_bld, sigma);
        auto star_in_chart = b.chart_complex(chart).star(sigma);
        auto other = b.find_apartment_with_intersection(chart, star_in_chart);
        if (other) {
            Simplex tau = b.opposite_in_chart(*other, sigma);
            if (passes(tau)) return {tau, "apartment-intersection"};
        }
    } catch (const SizeBoundError&) {
        // apartment list too large: fall through to the scan
    }

    for (const auto& tau : b.opposites_of(sigma))
        if (passes(tau)) return {tau, "scan"};
    throw SearchError("find_good_opposite: no opposite passes the containment check for " +
                      sigma.to_string());
}

ConeCover build_cone_cover(const Filtration& filt, const Simplex& sigma)
{
    const auto& b = filt.building();
    ConeCover cover;
    cover.sigma = sigma;

    auto split = link_split(b, filt.classification(), sigma);
    const auto& l = split.open_hemi;

    if (split.hor.is_empty_complex() || split.hor.is_void()) {
        auto good = find_good_opposite(filt, sigma, l);
        cover.pieces.emplace_back(l, good.tau);
        cover.routes.push_back(good.route);
    } else {
        // one cone per apartment of the horizontal part through a fixed
        // chamber; apartments are traces of ambient apartments through sigma
        const Simplex fixed_chamber = split.hor.facets().front();
        std::set<std::vector<VertexId>> seen;
        std::vector<SimplicialComplex> hor_apartments;
        for (int ai : b.apartments_containing({sigma})) {
            const auto& chart = b.apartments()[static_cast<std::size_t>(ai)];
            std::vector<VertexId> trace;
            for (VertexId v : split.hor.vertex_ids())
                if (chart.contains_vertex(v)) trace.push_back(v);
            if (trace.empty()) continue;
            auto a = split.hor.full_subcomplex(trace);
            if (!a.contains(fixed_chamber)) continue;
            if (a.dim() != split.hor.dim()) continue;
            if (seen.insert(a.vertex_ids()).second) hor_apartments.push_back(std::move(a));
        }
        if (hor_apartments.empty())
            throw SearchError("build_cone_cover: no apartment of the horizontal part found");
        for (const auto& a : hor_apartments) {
            auto la = SimplicialComplex::join(l, a);
            // an apartment through the pole, sigma, and the joined chambers
            // of the horizontal apartment guides the constructive route
            std::vector<Simplex> need = {filt.pole().carrier_bld, sigma};
            for (const auto& ch : a.facets()) need.push_back(sigma.set_union(ch));
            auto hints = b.apartments_containing(need);
            const Building::Chart* hint =
                hints.empty() ? nullptr : &b.apartments()[static_cast<std::size_t>(hints[0])];
            auto good = find_good_opposite(filt, sigma, la, hint);
            cover.pieces.emplace_back(la, good.tau);
            cover.routes.push_back(good.route);
        }
    }

    cover.k_full = SimplicialComplex::void_complex();
    cover.k_lower = SimplicialComplex::void_complex();
    for (const auto& [li, taui] : cover.pieces) {
        auto kf = cone_complex_union(b, sigma, li, taui, ConeVariant::FULL);
        auto kl = cone_complex_union(b, sigma, li, taui, ConeVariant::REMOVE_SOURCE);
        cover.k_full = cover.k_full.is_void() ? kf : complex_union(cover.k_full, kf);
        cover.k_lower = cover.k_lower.is_void() ? kl : complex_union(cover.k_lower, kl);
    }
    return cover;
}

}  // namespace hemilab
