#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hemilab/metric.hpp"

using namespace hemilab;

namespace {

const Building& fano()
{
    static Building b = Building::flag(2, 2);
    return b;
}

std::vector<VertexId> of_type(const Building& b, int t)
{
    std::vector<VertexId> out;
    for (VertexId v : b.complex().vertex_ids())
        if (b.complex().vtype(v) == t) out.push_back(v);
    return out;
}

// a chamber edge (point, line)
Simplex some_flag_edge(const Building& b) { return b.complex().facets()[0]; }

}  // namespace

TEST_CASE("vertex pole classification on the smallest projective plane")
{
    const auto& b = fano();
    VertexId p = of_type(b, 1)[0];
    auto x = Pole::at_vertex(b, p);
    auto cl = classify(b, x);

    CHECK(cl.of(p) == Tri::LT);  // distance 0
    int lt_lines = 0, gt_points = 0, gt_lines = 0, antipodes = 0;
    for (VertexId v : b.complex().vertex_ids()) {
        if (v == p) continue;
        bool incident = b.complex().contains(Simplex{p, v});
        if (b.complex().vtype(v) == 2) {
            if (incident) {
                CHECK(cl.of(v) == Tri::LT);  // π/3
                ++lt_lines;
            } else {
                CHECK(cl.of(v) == Tri::GT);  // π
                CHECK(cl.is_antipodal(v));
                ++gt_lines;
                ++antipodes;
            }
        } else {
            CHECK(cl.of(v) == Tri::GT);  // 2π/3
            CHECK_FALSE(cl.is_antipodal(v));
            ++gt_points;
        }
    }
    CHECK(lt_lines == 3);
    CHECK(gt_points == 6);
    CHECK(gt_lines == 4);
    CHECK(antipodes == 4);
    CHECK(cl.count(Tri::EQ) == 0);
}

TEST_CASE("flag-edge midpoint pole classification")
{
    const auto& b = fano();
    Simplex edge = some_flag_edge(b);
    VertexId p = edge.vertices()[0];  // the point (type 1 sorts first)
    VertexId l = edge.vertices()[1];
    REQUIRE(b.complex().vtype(p) == 1);
    REQUIRE(b.complex().vtype(l) == 2);

    auto x = Pole::at_barycenter(b, edge);
    auto cl = classify(b, x);

    CHECK(cl.of(p) == Tri::LT);
    CHECK(cl.of(l) == Tri::LT);

    std::vector<VertexId> eq = cl.of_class(Tri::EQ);
    CHECK(eq.size() == 4);
    for (VertexId v : eq) {
        if (b.complex().vtype(v) == 1)
            CHECK(b.complex().contains(Simplex{v, l}));  // a point of the line
        else
            CHECK(b.complex().contains(Simplex{p, v}));  // a line through the point
    }
    CHECK(cl.count(Tri::GT) == 8);
    CHECK(cl.count(Tri::LT) == 2);
    // the pole is interior to an edge: no vertex can be antipodal
    for (VertexId v : b.complex().vertex_ids()) CHECK_FALSE(cl.is_antipodal(v));
}

TEST_CASE("carrier vertices classify below a right angle")
{
    const auto& b = fano();
    for (const auto& edge : b.complex().facets()) {
        auto x = Pole::at_barycenter(b, edge);
        auto cl = classify(b, x);
        for (VertexId v : edge.vertices()) CHECK(cl.of(v) == Tri::LT);
    }
}

TEST_CASE("antipodal flags imply the far class")
{
    const auto& b = fano();
    for (VertexId p : b.complex().vertex_ids()) {
        auto cl = classify(b, Pole::at_vertex(b, p));
        for (VertexId v : b.complex().vertex_ids())
            if (cl.is_antipodal(v)) CHECK(cl.of(v) == Tri::GT);
    }
}

TEST_CASE("at most one antipodal vertex per apartment through the pole")
{
    const auto& b = fano();
    std::vector<Pole> poles = {Pole::at_vertex(b, 0), Pole::at_barycenter(b, some_flag_edge(b))};
    for (const auto& x : poles) {
        auto cl = classify(b, x);
        for (int ai : b.apartments_containing({x.carrier_bld})) {
            const auto& chart = b.apartments()[static_cast<std::size_t>(ai)];
            int antipodes = 0;
            for (VertexId v : chart.image_vertices)
                if (cl.is_antipodal(v)) ++antipodes;
            CHECK(antipodes <= 1);
        }
    }
}

TEST_CASE("cap classification")
{
    const auto& b = fano();
    VertexId p = of_type(b, 1)[0];
    auto x = Pole::at_vertex(b, p);

    // t = 0 agrees with the right-angle classification everywhere
    auto cl0 = classify(b, x);
    auto clc = classify_cap(b, x, Rat(0));
    for (VertexId v : b.complex().vertex_ids()) CHECK(cl0.of(v) == clc.of(v));

    // threshold at cos(π/3) = 1/2: the carrier vertex is the only one closer,
    // incident lines land exactly on the sphere
    auto cl_half = classify_cap(b, x, Rat(1, 2));
    CHECK(cl_half.of(p) == Tri::LT);
    CHECK(cl_half.count(Tri::LT) == 1);
    CHECK(cl_half.count(Tri::EQ) == 3);
    for (VertexId v : cl_half.of_class(Tri::EQ)) {
        CHECK(b.complex().vtype(v) == 2);
        CHECK(b.complex().contains(Simplex{p, v}));
    }
    CHECK(cl_half.count(Tri::GT) == 10);

    // t close to 1: only the carrier stays strictly inside
    auto cl_hi = classify_cap(b, x, Rat(99, 100));
    CHECK(cl_hi.count(Tri::LT) == 1);
    CHECK(cl_hi.of(p) == Tri::LT);

    CHECK_THROWS_AS(classify_cap(b, x, Rat(1)), PreconditionError);
}

TEST_CASE("well-posedness audit")
{
    const auto& b = fano();
    VertexId p = of_type(b, 1)[0];
    auto rep1 = wellposedness_audit(b, Pole::at_vertex(b, p));
    CHECK(rep1.ok());
    CHECK(rep1.combinations > 0);

    auto rep2 = wellposedness_audit(b, Pole::at_barycenter(b, some_flag_edge(b)));
    CHECK(rep2.ok());

    // thin building: the chart is the whole complex
    auto thin = Building::thin(2);
    auto rep3 = wellposedness_audit(thin, Pole::at_vertex(thin, 0));
    CHECK(rep3.ok());

    // sampled audit on the rank-3 building, a few seeds
    auto big = Building::flag(3, 2);
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        auto rep = wellposedness_audit(big, Pole::at_vertex(big, 0), 12, seed);
        CHECK(rep.ok());
    }
}

TEST_CASE("thin classification agrees with direct sign computation")
{
    auto thin = Building::thin(2);
    const auto& model = thin.model();
    for (VertexId p : thin.complex().vertex_ids()) {
        auto cl = classify(thin, Pole::at_vertex(thin, p));
        auto xpt = RationalPoint::at_vertex(model, thin.apartments()[0].bld_to_cox.at(p));
        for (VertexId v : thin.complex().vertex_ids()) {
            Sign s = cos_sign_vertex(xpt, model, thin.apartments()[0].bld_to_cox.at(v));
            Tri expect = (s == Sign::POS) ? Tri::LT : (s == Sign::ZERO ? Tri::EQ : Tri::GT);
            CHECK(cl.of(v) == expect);
        }
        // hexagon vertex pole: 3 near, 3 far, one antipode
        CHECK(cl.count(Tri::LT) == 3);
        CHECK(cl.count(Tri::GT) == 3);
        CHECK(cl.count(Tri::EQ) == 0);
        int antipodes = 0;
        for (VertexId v : thin.complex().vertex_ids())
            if (cl.is_antipodal(v)) ++antipodes;
        CHECK(antipodes == 1);
    }
}

TEST_CASE("classification is invariant under frame relabeling and recharting")
{
    const auto& b = fano();
    Simplex edge = some_flag_edge(b);
    auto x = Pole::at_barycenter(b, edge);
    auto base = classify(b, x);

    // rechart to every apartment containing the carrier
    for (int ai : b.apartments_containing({edge})) {
        auto y = x.recharted(b.apartments()[static_cast<std::size_t>(ai)]);
        auto cl = classify(b, y);
        for (VertexId v : b.complex().vertex_ids()) {
            CHECK(cl.of(v) == base.of(v));
            CHECK(cl.is_antipodal(v) == base.is_antipodal(v));
        }
    }

    // permute the frame of the pole's own chart
    const auto& frame = x.chart.parts[0].frame;
    std::vector<int> rotated(frame.begin(), frame.end());
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    auto chart2 = b.make_chart({b.factor(0).chart_from_frame(rotated)});
    auto y = x.recharted(chart2);
    auto cl2 = classify(b, y);
    for (VertexId v : b.complex().vertex_ids()) CHECK(cl2.of(v) == base.of(v));
}

TEST_CASE("poles on a reducible building")
{
    std::vector<Building> parts;
    parts.push_back(Building::thin(1));
    parts.push_back(Building::flag(2, 2));
    auto j = Building::join(std::move(parts));

    // pole at a vertex of the 0-sphere factor: the other factor is all-equator
    VertexId a = j.global_id(0, 0);
    VertexId a2 = j.global_id(0, 1);
    auto cl = classify(j, Pole::at_vertex(j, a));
    CHECK(cl.of(a) == Tri::LT);
    CHECK(cl.of(a2) == Tri::GT);
    CHECK(cl.is_antipodal(a2));
    for (VertexId v : j.complex().vertex_ids())
        if (j.factor_of(v) == 1) CHECK(cl.of(v) == Tri::EQ);

    // pole spanning both factors: distances to both factors become strict
    auto span = Pole::from_weights(j, Simplex{a, j.global_id(1, 0)}, {Rat(1, 2), Rat(1, 2)});
    auto cl2 = classify(j, span);
    CHECK(cl2.of(a) == Tri::LT);
    CHECK(cl2.of(j.global_id(1, 0)) == Tri::LT);
    CHECK(wellposedness_audit(j, span).ok());
}
