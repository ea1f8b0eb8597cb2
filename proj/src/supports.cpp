#include "hemilab/supports.hpp"

#include <algorithm>
#include <set>

namespace hemilab {

namespace {

SupportedSubcomplex make_full(const Building& b, const std::vector<VertexId>& keep,
                              std::string provenance)
{
    SupportedSubcomplex out;
    out.complex = b.complex().full_subcomplex(keep);
    out.provenance = std::move(provenance);
    return out;
}

}  // namespace

SupportedSubcomplex hemisphere(const Building& b, const VertexClassification& cls,
                               HemisphereKind kind)
{
    switch (kind) {
        case HemisphereKind::OPEN:
            return make_full(b, cls.of_class(Tri::GT), "open-hemisphere");
        case HemisphereKind::CLOSED:
            return make_full(b, cls.of_classes(Tri::GT, Tri::EQ), "closed-hemisphere");
        case HemisphereKind::EQUATOR:
            return make_full(b, cls.of_class(Tri::EQ), "equator");
    }
    throw Error("hemisphere: unreachable");
}

SupportedSubcomplex hemisphere(const Building& b, const Pole& x, HemisphereKind kind)
{
    auto cls = classify(b, x);
    return hemisphere(b, cls, kind);
}

SupportedSubcomplex cap_complement(const Building& b, const Pole& x, const Rat& t,
                                   bool keep_boundary)
{
    auto cls = classify_cap(b, x, t);
    auto keep = keep_boundary ? cls.of_classes(Tri::GT, Tri::EQ) : cls.of_class(Tri::GT);
    auto out = make_full(b, keep,
                         std::string("cap-complement(t=") + rational_to_string(t) +
                             (keep_boundary ? ",closed)" : ",open)"));
    if (t != 0) {
        auto audit = audit_cap_fullness(b, x, t, keep_boundary);
        out.full_exact = audit.ok();
    }
    // removed balls of angular radius beyond a right angle are not convex in
    // general; downstream theorem checks treat the instance as advisory
    out.theorem_eligible = t >= 0;
    return out;
}

SupportedSubcomplex root_complement(const Building& b, const Building::Chart& chart,
                                    const CoxeterComplex::Root& root, bool closed_side)
{
    const auto& model = b.model();
    std::vector<VertexId> keep;
    for (int vid = 0; vid < model.num_vertices(); ++vid) {
        bool in = closed_side ? model.root_contains(root, vid) : model.root_strict(root, vid);
        if (in) keep.push_back(chart.cox_to_bld[static_cast<std::size_t>(vid)]);
    }
    std::sort(keep.begin(), keep.end());
    // the support only sees the chart image; thin buildings coincide with it
    SupportedSubcomplex out;
    out.complex = b.chart_complex(chart).full_subcomplex(keep);
    out.provenance = closed_side ? "root(closed)" : "root(strict)";
    return out;
}

HorVerSplit hor_ver(const Building& b, const VertexClassification& cls)
{
    HorVerSplit out;
    std::vector<VertexId> hor_vs, ver_vs;
    for (int f = 0; f < b.num_factors(); ++f) {
        bool all_eq = true;
        std::vector<VertexId> mine;
        for (int lv = 0; lv < b.factor(f).num_vertices(); ++lv) {
            VertexId gv = b.global_id(f, lv);
            mine.push_back(gv);
            if (cls.of(gv) != Tri::EQ) all_eq = false;
        }
        if (all_eq) {
            out.hor_factors.push_back(f);
            hor_vs.insert(hor_vs.end(), mine.begin(), mine.end());
        } else {
            ver_vs.insert(ver_vs.end(), mine.begin(), mine.end());
        }
    }
    out.hor = b.complex().full_subcomplex(hor_vs);
    out.ver = b.complex().full_subcomplex(ver_vs);
    if (!(SimplicialComplex::join(out.hor, out.ver) == b.complex()))
        throw Error("hor_ver: join factorization failed");
    return out;
}

VertexClassification induced_link_classification(const Building& b,
                                                 const VertexClassification& cls,
                                                 const Simplex& sigma)
{
    for (VertexId v : sigma.vertices())
        if (cls.of(v) != Tri::EQ)
            throw PreconditionError("induced classification: simplex not in the equator");
    if (!b.complex().contains(sigma))
        throw MembershipError("induced classification: not a member simplex");
    auto lk = b.complex().link(sigma);
    VertexClassification out;
    out.ids = lk.vertex_ids();
    out.cls.reserve(out.ids.size());
    out.antipodal.assign(out.ids.size(), false);
    for (VertexId v : out.ids) out.cls.push_back(cls.of(v));
    return out;
}

LinkSplit link_split(const Building& b, const VertexClassification& cls, const Simplex& sigma)
{
    LinkSplit out;
    out.link = b.complex().link(sigma);

    auto blocks = join_type_blocks(out.link);
    std::vector<VertexId> hor_vs, ver_vs, gt_vs;
    for (const auto& blk : blocks) {
        std::vector<VertexId> mine;
        bool all_eq = true;
        for (VertexId v : out.link.vertex_ids())
            if (std::find(blk.begin(), blk.end(), out.link.vtype(v)) != blk.end()) {
                mine.push_back(v);
                if (cls.of(v) != Tri::EQ) all_eq = false;
            }
        auto& dst = all_eq ? hor_vs : ver_vs;
        dst.insert(dst.end(), mine.begin(), mine.end());
    }
    for (VertexId v : out.link.vertex_ids())
        if (cls.of(v) == Tri::GT) gt_vs.push_back(v);

    std::sort(hor_vs.begin(), hor_vs.end());
    std::sort(ver_vs.begin(), ver_vs.end());
    out.hor = out.link.full_subcomplex(hor_vs);
    out.ver = out.link.full_subcomplex(ver_vs);
    out.open_hemi = out.link.full_subcomplex(gt_vs);
    if (!(SimplicialComplex::join(out.hor, out.ver) == out.link))
        throw Error("link_split: join factorization failed");
    return out;
}

namespace {

// solve G x = rhs over the rationals; G symmetric positive definite here
std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> g, std::vector<Rat> rhs)
{
    std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && g[piv][col] == 0) ++piv;
        if (piv == n) throw Error("solve_rational: singular system");
        std::swap(g[piv], g[col]);
        std::swap(rhs[piv], rhs[col]);
        Rat inv = Rat(1) / g[col][col];
        for (auto& c : g[col]) c *= inv;
        rhs[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || g[r][col] == 0) continue;
            Rat f = g[r][col];
            for (std::size_t c = 0; c < n; ++c) g[r][c] -= f * g[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace

CapFullnessReport audit_cap_fullness(const Building& b, const Pole& x, const Rat& t,
                                     bool keep_boundary, std::size_t max_charts)
{
    CapFullnessReport rep;
    const auto& model = b.model();
    auto chart_ids = b.apartments_containing({x.carrier_bld});
    if (chart_ids.size() > max_charts) chart_ids.resize(max_charts);

    for (int ci : chart_ids) {
        const auto& chart = b.apartments()[static_cast<std::size_t>(ci)];
        Pole y = x.recharted(chart);
        RationalPoint pt = y.point();
        ++rep.charts;

        Rat x2 = inner(pt.coords(), pt.coords());
        auto vertex_vec = [&](int cox_vid) {
            const auto& vc = model.coords(cox_vid);
            std::vector<Rat> out(vc.begin(), vc.end());
            return out;
        };
        // supported model vertices in this chart
        std::vector<char> supported(static_cast<std::size_t>(model.num_vertices()), 0);
        for (int vid = 0; vid < model.num_vertices(); ++vid) {
            auto vv = vertex_vec(vid);
            Rat a = inner(pt.coords(), vv);
            Tri cmp = cmp_cos_value(a, x2 * inner(vv, vv), t);
            supported[static_cast<std::size_t>(vid)] =
                keep_boundary ? (cmp != Tri::GT) : (cmp == Tri::LT);
        }

        for (const auto& s : model.complex().all_simplices()) {
            if (s.empty()) continue;
            bool all = true;
            for (VertexId v : s.vertices())
                if (!supported[static_cast<std::size_t>(v)]) {
                    all = false;
                    break;
                }
            if (!all) continue;
            ++rep.simplices_checked;

            // candidates for the maximum of cos over the closed cell
            bool bad = false;
            std::string why;
            for (const auto& face : s.all_faces()) {
                if (face.empty() || bad) continue;
                std::vector<std::vector<Rat>> vecs;
                for (VertexId v : face.vertices()) vecs.push_back(vertex_vec(v));
                Rat a, p2;
                if (face.size() == 1) {
                    a = inner(pt.coords(), vecs[0]);
                    p2 = inner(vecs[0], vecs[0]);
                } else {
                    // projection of the pole onto the span, in face coordinates
                    std::size_t k = vecs.size();
                    std::vector<std::vector<Rat>> g(k, std::vector<Rat>(k));
                    std::vector<Rat> rhs(k);
                    for (std::size_t i = 0; i < k; ++i) {
                        rhs[i] = inner(pt.coords(), vecs[i]);
                        for (std::size_t j = 0; j < k; ++j) g[i][j] = inner(vecs[i], vecs[j]);
                    }
                    auto lambda = solve_rational(g, rhs);
                    bool interior = true;
                    for (const auto& l : lambda)
                        if (l <= 0) {
                            interior = false;
                            break;
                        }
                    if (!interior) continue;
                    std::vector<Rat> p(pt.coords().size(), Rat(0));
                    for (std::size_t i = 0; i < k; ++i)
                        for (std::size_t d = 0; d < p.size(); ++d) p[d] += lambda[i] * vecs[i][d];
                    a = inner(pt.coords(), p);
                    p2 = inner(p, p);
                    if (p2 == 0) continue;
                }
                Tri cmp = cmp_cos_value(a, x2 * p2, t);
                bool violates = keep_boundary ? (cmp == Tri::GT) : (cmp != Tri::LT);
                if (violates) {
                    bad = true;
                    why = "face " + face.to_string() + " of " + s.to_string();
                }
            }
            if (bad)
                rep.failures.push_back("chart " + std::to_string(ci) + ": " + why);
        }
    }
    return rep;
}

}  // namespace hemilab
