#include "hemilab/metric.hpp"

#include <algorithm>
#include <random>

namespace hemilab {

Pole Pole::with_chart(const Building& b, Building::Chart chart, const Simplex& carrier,
                      std::vector<Rat> weights)
{
    if (carrier.empty()) throw InputError("pole: empty carrier");
    if (!b.complex().contains(carrier)) throw MembershipError("pole: carrier not a member");
    if (weights.size() != carrier.size()) throw InputError("pole: weight count mismatch");
    Pole p;
    p.building = &b;
    p.chart = std::move(chart);
    p.carrier_bld = carrier;
    p.carrier_cox = b.chart_preimage(p.chart, carrier);
    p.weights = std::move(weights);
    p.point();  // validates positivity and normalization
    return p;
}

Pole Pole::from_weights(const Building& b, const Simplex& carrier, std::vector<Rat> weights)
{
    if (carrier.empty()) throw InputError("pole: empty carrier");
    if (!b.complex().contains(carrier)) throw MembershipError("pole: carrier not a member");
    return with_chart(b, b.common_apartment(carrier, carrier), carrier, std::move(weights));
}

Pole Pole::at_vertex(const Building& b, VertexId v)
{
    return from_weights(b, Simplex{v}, {Rat(1)});
}

Pole Pole::at_barycenter(const Building& b, const Simplex& s)
{
    std::vector<Rat> w(s.size(), Rat(1, static_cast<unsigned>(s.size())));
    return from_weights(b, s, std::move(w));
}

Pole Pole::recharted(const Building::Chart& new_chart) const
{
    return with_chart(*building, new_chart, carrier_bld, weights);
}

RationalPoint Pole::point() const
{
    // weights are listed by building-id order of the carrier; the model wants
    // them by Coxeter-id order
    const auto& cox_vs = carrier_cox.vertices();
    std::vector<Rat> cox_weights(cox_vs.size());
    for (std::size_t i = 0; i < cox_vs.size(); ++i) {
        VertexId gv = chart.cox_to_bld[static_cast<std::size_t>(cox_vs[i])];
        const auto& bld_vs = carrier_bld.vertices();
        auto it = std::lower_bound(bld_vs.begin(), bld_vs.end(), gv);
        if (it == bld_vs.end() || *it != gv) throw Error("pole: carrier misalignment");
        cox_weights[i] = weights[static_cast<std::size_t>(it - bld_vs.begin())];
    }
    return RationalPoint(building->model(), carrier_cox, std::move(cox_weights));
}

bool Pole::touches_factor(int f) const
{
    for (VertexId v : carrier_bld.vertices())
        if (building->factor_of(v) == f) return true;
    return false;
}

std::string Pole::describe() const
{
    std::string s = "pole[carrier=" + carrier_bld.to_string() + ", weights=";
    for (std::size_t i = 0; i < weights.size(); ++i)
        s += (i ? "," : "") + rational_to_string(weights[i]);
    return s + "]";
}

Tri VertexClassification::of(VertexId v) const
{
    auto it = std::lower_bound(ids.begin(), ids.end(), v);
    if (it == ids.end() || *it != v)
        throw MembershipError("classification: unknown vertex " + std::to_string(v));
    return cls[static_cast<std::size_t>(it - ids.begin())];
}

bool VertexClassification::is_antipodal(VertexId v) const
{
    auto it = std::lower_bound(ids.begin(), ids.end(), v);
    if (it == ids.end() || *it != v)
        throw MembershipError("classification: unknown vertex " + std::to_string(v));
    return antipodal[static_cast<std::size_t>(it - ids.begin())];
}

std::vector<VertexId> VertexClassification::of_class(Tri t) const
{
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (cls[i] == t) out.push_back(ids[i]);
    return out;
}

std::vector<VertexId> VertexClassification::of_classes(Tri a, Tri b) const
{
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (cls[i] == a || cls[i] == b) out.push_back(ids[i]);
    return out;
}

long long VertexClassification::count(Tri t) const
{
    long long n = 0;
    for (auto c : cls)
        if (c == t) ++n;
    return n;
}

namespace {

struct ClassifyContext {
    const Building& b;
    const Pole& x;
    RationalPoint pt;
    Simplex center;  // chart facet over the carrier

    ClassifyContext(const Building& bb, const Pole& xx)
        : b(bb), x(xx), pt(xx.point()),
          center(bb.chart_image(xx.chart, bb.model().complete_to_chamber(xx.carrier_cox)))
    {
    }

    // classification of one vertex, with an explicit completion and center
    std::pair<Tri, bool> eval(VertexId v, const Simplex& completion, const Simplex& center_used,
                              const Rat& threshold) const
    {
        int f = b.factor_of(v);
        if (!x.touches_factor(f)) {
            // the pole's coordinate block in this factor vanishes: the vertex
            // sits exactly at π/2 and is never antipodal
            Tri t = (threshold == 0) ? Tri::EQ : (threshold > 0 ? Tri::GT : Tri::LT);
            return {t, false};
        }
        Simplex image = b.retraction_with_completion(x.chart, center_used, Simplex{v}, completion);
        int cox_v = x.chart.bld_to_cox.at(image.vertices()[0]);
        const auto& model = b.model();
        const auto& vc = model.coords(cox_v);
        Rat a = 0, nv = 0;
        for (std::size_t i = 0; i < vc.size(); ++i) {
            a += pt.coords()[i] * Rat(vc[i]);
            nv += Rat(vc[i]) * Rat(vc[i]);
        }
        Tri distance_cls;
        if (threshold == 0) {
            Sign s = sign_of(a);
            distance_cls = (s == Sign::POS) ? Tri::LT : (s == Sign::ZERO ? Tri::EQ : Tri::GT);
        } else {
            Rat n2 = inner(pt.coords(), pt.coords()) * nv;
            Tri cos_cmp = cmp_cos_value(a, n2, threshold);
            distance_cls = (cos_cmp == Tri::GT) ? Tri::LT : (cos_cmp == Tri::EQ ? Tri::EQ : Tri::GT);
        }
        bool anti = antipodal_test(pt, RationalPoint::at_vertex(model, cox_v));
        return {distance_cls, anti};
    }

    std::pair<Tri, bool> eval_default(VertexId v, const Rat& threshold) const
    {
        int fi = b.complex().facets_containing(Simplex{v}).front();
        return eval(v, b.complex().facets()[static_cast<std::size_t>(fi)], center, threshold);
    }
};

VertexClassification classify_impl(const Building& b, const Pole& x, const Rat& threshold)
{
    if (x.building != &b) throw PreconditionError("classify: pole belongs to another building");
    ClassifyContext ctx(b, x);
    VertexClassification out;
    out.ids = b.complex().vertex_ids();
    out.cls.resize(out.ids.size());
    out.antipodal.resize(out.ids.size());
    for (std::size_t i = 0; i < out.ids.size(); ++i) {
        auto [t, anti] = ctx.eval_default(out.ids[i], threshold);
        out.cls[i] = t;
        out.antipodal[i] = anti;
    }
    return out;
}

}  // namespace

VertexClassification classify(const Building& b, const Pole& x)
{
    return classify_impl(b, x, Rat(0));
}

VertexClassification classify_cap(const Building& b, const Pole& x, const Rat& t)
{
    if (t <= -1 || t >= 1) throw PreconditionError("classify_cap: t outside (-1,1)");
    return classify_impl(b, x, t);
}

AuditReport wellposedness_audit(const Building& b, const Pole& x, std::size_t max_vertices,
                                std::uint64_t seed)
{
    ClassifyContext ctx(b, x);
    const auto& model = b.model();

    // all chart chambers whose closure contains the carrier
    std::vector<Simplex> centers;
    for (const auto& ch : model.chambers())
        if (x.carrier_cox.face_of(ch)) centers.push_back(b.chart_image(x.chart, ch));

    std::vector<VertexId> ids = b.complex().vertex_ids();
    if (max_vertices && ids.size() > max_vertices) {
        std::mt19937_64 rng(seed);
        std::shuffle(ids.begin(), ids.end(), rng);
        ids.resize(max_vertices);
        std::sort(ids.begin(), ids.end());
    }

    AuditReport rep;
    rep.vertices = static_cast<long long>(ids.size());
    for (VertexId v : ids) {
        auto [t0, a0] = ctx.eval_default(v, Rat(0));
        for (const auto& center : centers) {
            for (int fi : b.complex().facets_containing(Simplex{v})) {
                const Simplex& d = b.complex().facets()[static_cast<std::size_t>(fi)];
                auto [t, anti] = ctx.eval(v, d, center, Rat(0));
                ++rep.combinations;
                if (t != t0 || anti != a0)
                    rep.disagreements.push_back(
                        "vertex " + std::to_string(v) + " center " + center.to_string() +
                        " completion " + d.to_string() + ": " + to_string(t) + " vs " +
                        to_string(t0));
            }
        }
    }
    return rep;
}

}  // namespace hemilab
