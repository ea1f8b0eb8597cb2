#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hemilab/coxeter.hpp"

using namespace hemilab;

namespace {

int vid(const CoxeterComplex& cx, unsigned mask) { return cx.vertex_id(0, mask); }

RationalPoint vertex_pt(const CoxeterComplex& cx, unsigned mask)
{
    return RationalPoint::at_vertex(cx, vid(cx, mask));
}

// random rational point with carrier inside a random chamber
RationalPoint random_point(const CoxeterComplex& cx, std::mt19937_64& rng)
{
    const auto& chambers = cx.chambers();
    const Simplex& c = chambers[rng() % chambers.size()];
    std::vector<VertexId> carrier;
    while (carrier.empty()) {
        for (VertexId v : c.vertices())
            if (rng() % 2) carrier.push_back(v);
    }
    std::vector<Rat> w;
    Rat sum = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        Rat wi(1 + static_cast<int>(rng() % 5), 1);
        w.push_back(wi);
        sum += wi;
    }
    for (auto& wi : w) wi /= sum;
    return RationalPoint(cx, Simplex(std::move(carrier)), std::move(w));
}

}  // namespace

TEST_CASE("generated complexes have the right face counts")
{
    auto a1 = generate_coxeter(1);
    CHECK(a1.complex().f_vector() == std::vector<long long>{2});
    CHECK(a1.chambers().size() == 2);

    auto a2 = generate_coxeter(2);
    CHECK(a2.complex().f_vector() == std::vector<long long>{6, 6});

    auto a3 = generate_coxeter(3);
    CHECK(a3.complex().f_vector() == std::vector<long long>{14, 36, 24});

    CHECK_THROWS_AS(generate_coxeter(6), SizeBoundError);
}

TEST_CASE("vertex vectors: zero-sum, nonzero, complement negation")
{
    auto a3 = generate_coxeter(3);
    for (int v = 0; v < a3.num_vertices(); ++v) {
        long long sum = 0;
        bool nonzero = false;
        for (long long c : a3.coords(v)) {
            sum += c;
            nonzero |= (c != 0);
        }
        CHECK(sum == 0);
        CHECK(nonzero);
        int ov = a3.opposite_vertex(v);
        for (std::size_t i = 0; i < a3.coords(v).size(); ++i)
            CHECK(a3.coords(ov)[i] == -a3.coords(v)[i]);
    }
}

TEST_CASE("inner products follow the subset formula")
{
    // ⟨u_S, u_T⟩ = (n+1) · ((n+1)|S∩T| − |S||T|)
    for (int n : {2, 3, 4}) {
        auto cx = generate_coxeter(n);
        for (int u = 0; u < cx.num_vertices(); ++u)
            for (int v = 0; v < cx.num_vertices(); ++v) {
                long long ip = 0;
                for (std::size_t i = 0; i < cx.coords(u).size(); ++i)
                    ip += cx.coords(u)[i] * cx.coords(v)[i];
                long long meet = __builtin_popcount(cx.mask_of(u) & cx.mask_of(v));
                long long su = __builtin_popcount(cx.mask_of(u));
                long long sv = __builtin_popcount(cx.mask_of(v));
                CHECK(ip == (n + 1) * ((n + 1) * meet - su * sv));
            }
    }
}

TEST_CASE("cos_sign on hexagon configurations")
{
    auto a2 = generate_coxeter(2);
    auto u1 = vertex_pt(a2, 0b001);     // {1}
    auto u12 = vertex_pt(a2, 0b011);    // {1,2}
    auto u2 = vertex_pt(a2, 0b010);     // {2}
    auto u23 = vertex_pt(a2, 0b110);    // {2,3}

    CHECK(cos_sign(u1, u12) == Sign::POS);
    CHECK(cos_sign(u1, u23) == Sign::NEG);
    CHECK(antipodal_test(u1, u23));

    // midpoint of the edge ({1},{1,2}) is at right angle to {2}
    RationalPoint mid(a2, Simplex{vid(a2, 0b001), vid(a2, 0b011)}, {Rat(1, 2), Rat(1, 2)});
    CHECK(cos_sign(mid, u2) == Sign::ZERO);

    // midpoints of opposite edges are antipodal points
    Simplex edge{vid(a2, 0b001), vid(a2, 0b011)};
    Simplex opp_edge = a2.opposition(edge);
    auto m1 = RationalPoint::barycenter(a2, edge);
    auto m2 = RationalPoint::barycenter(a2, opp_edge);
    CHECK(antipodal_test(m1, m2));
    CHECK_FALSE(antipodal_test(m1, RationalPoint::barycenter(a2, Simplex{vid(a2, 0b001)})));
}

TEST_CASE("threshold comparison")
{
    auto a2 = generate_coxeter(2);
    auto u1 = vertex_pt(a2, 0b001);
    auto u2 = vertex_pt(a2, 0b010);
    auto u12 = vertex_pt(a2, 0b011);

    // t = 0 reduces to cos_sign
    for (const auto* q : {&u2, &u12}) {
        Tri c = cmp_cos_threshold(u1, *q, Rat(0));
        Sign s = cos_sign(u1, *q);
        CHECK(((s == Sign::POS && c == Tri::GT) || (s == Sign::NEG && c == Tri::LT) ||
               (s == Sign::ZERO && c == Tri::EQ)));
    }

    CHECK(cmp_cos_threshold(u1, u1, Rat(1, 2)) == Tri::GT);              // cos 0 = 1
    CHECK(cmp_cos_threshold(u1, u2, Rat(-1, 4)) == Tri::LT);             // cos 2π/3 = −1/2
    CHECK(cmp_cos_threshold(u1, u12, Rat(1, 2)) == Tri::EQ);             // cos π/3 = 1/2
    CHECK_THROWS_AS(cmp_cos_threshold(u1, u2, Rat(1)), PreconditionError);
}

TEST_CASE("convex hulls in the hexagon")
{
    auto a2 = generate_coxeter(2);
    int u1 = vid(a2, 0b001), u2 = vid(a2, 0b010), u12 = vid(a2, 0b011);

    // hull of one chamber is its closure
    const Simplex& c = a2.chambers()[0];
    auto hull_c = a2.conv({c});
    CHECK(hull_c.facets() == std::vector<Simplex>{c});

    // hull of two adjacent vertices is the closed edge
    auto hull_e = a2.conv({Simplex{u1}, Simplex{u12}});
    CHECK(hull_e.facets() == std::vector<Simplex>{Simplex{u1, u12}});

    // hull of two vertices at distance 2π/3 is the 3-vertex path
    auto hull_p = a2.conv({Simplex{u1}, Simplex{u2}});
    CHECK(hull_p.vertex_ids() == std::vector<VertexId>{u1, u2, u12});
    CHECK(hull_p.f_vector() == std::vector<long long>{3, 2});
}

TEST_CASE("conv is a closure operator")
{
    auto a3 = generate_coxeter(3);
    std::mt19937_64 rng(3);
    const auto& chambers = a3.chambers();
    for (int trial = 0; trial < 20; ++trial) {
        Simplex a = chambers[rng() % chambers.size()];
        Simplex b = chambers[rng() % chambers.size()];
        Simplex va{a.vertices()[rng() % a.size()]};
        Simplex vb{b.vertices()[rng() % b.size()]};

        auto hull = a3.conv({va, vb});
        // extensive
        CHECK(hull.contains(va));
        CHECK(hull.contains(vb));
        // idempotent
        auto hull2 = a3.conv(hull.facets());
        CHECK(hull2 == hull);
        // monotone
        auto bigger = a3.conv({va, vb, Simplex{a.vertices()[0]}});
        for (const auto& f : hull.facets()) CHECK(bigger.contains(f));
    }
}

TEST_CASE("opposition is a type-reversing involution on chambers")
{
    auto a3 = generate_coxeter(3);
    for (const auto& c : a3.chambers()) {
        auto oc = a3.opposition(c);
        CHECK(a3.complex().contains(oc));
        CHECK(oc.size() == c.size());
        CHECK(a3.opposition(oc) == c);
        // types reverse: |S| becomes n+1-|S|
        for (std::size_t i = 0; i < c.size(); ++i) {
            int t = a3.complex().vtype(c.vertices()[i]);
            int ot = a3.complex().vtype(a3.opposite_vertex(c.vertices()[i]));
            CHECK(ot == 4 - t);
        }
    }
}

TEST_CASE("roots cover the complex and meet in walls")
{
    auto a2 = generate_coxeter(2);
    CHECK(a2.roots().size() == 6);
    for (const auto& r : a2.roots()) {
        CoxeterComplex::Root opp{r.factor, r.j, r.i};
        for (int v = 0; v < a2.num_vertices(); ++v) {
            CHECK((a2.root_contains(r, v) || a2.root_contains(opp, v)));
            bool both = a2.root_contains(r, v) && a2.root_contains(opp, v);
            CHECK(both == a2.on_wall(r, v));
            // the defining functional x_i − x_j is nonnegative on the root
            long long fi = a2.coords(v)[static_cast<std::size_t>(r.i - 1)];
            long long fj = a2.coords(v)[static_cast<std::size_t>(r.j - 1)];
            CHECK(a2.root_contains(r, v) == (fi >= fj));
            CHECK(a2.root_strict(r, v) == (fi > fj));
        }
    }
}

TEST_CASE("edge lengths never exceed a right angle")
{
    for (int n : {1, 2, 3}) {
        auto cx = generate_coxeter(n);
        for (const auto& s : cx.complex().all_simplices()) {
            if (s.dim() != 1) continue;
            auto p = RationalPoint::at_vertex(cx, s.vertices()[0]);
            auto q = RationalPoint::at_vertex(cx, s.vertices()[1]);
            CHECK(cos_sign(p, q) == Sign::POS);  // strict for irreducible type A
        }
    }
    // reducible: cross-factor edges realize exactly π/2
    CoxeterComplex join({1, 2});
    for (const auto& s : join.complex().all_simplices()) {
        if (s.dim() != 1) continue;
        auto p = RationalPoint::at_vertex(join, s.vertices()[0]);
        auto q = RationalPoint::at_vertex(join, s.vertices()[1]);
        if (join.factor_of(s.vertices()[0]) != join.factor_of(s.vertices()[1]))
            CHECK(cos_sign(p, q) == Sign::ZERO);
        else
            CHECK(cos_sign(p, q) == Sign::POS);
    }
}

TEST_CASE("chamber closures have diameter at most a right angle")
{
    for (int n : {2, 3}) {
        auto cx = generate_coxeter(n);
        for (const auto& c : cx.chambers()) {
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j) {
                    auto p = RationalPoint::at_vertex(cx, c.vertices()[i]);
                    auto q = RationalPoint::at_vertex(cx, c.vertices()[j]);
                    CHECK(cos_sign(p, q) != Sign::NEG);
                }
        }
    }
}

TEST_CASE("weyl distance on thin chambers")
{
    auto a2 = generate_coxeter(2);
    const auto& cs = a2.chambers();
    for (const auto& c : cs) {
        auto w = a2.weyl(c, c);
        CHECK(w[0] == std::vector<int>{1, 2, 3});
    }
    for (const auto& c : cs)
        for (const auto& d : cs) {
            auto w = a2.weyl(c, d);
            auto wi = a2.weyl(d, c);
            // inverse relation
            for (int i = 1; i <= 3; ++i)
                CHECK(wi[0][static_cast<std::size_t>(w[0][static_cast<std::size_t>(i - 1)] - 1)] == i);
        }
    // opposite chambers realize the order reversal
    const auto& c = cs[0];
    auto oc = a2.opposition(c);
    CHECK(a2.weyl(c, oc)[0] == std::vector<int>{3, 2, 1});
}

TEST_CASE("angle oracle satisfies the spherical law of cosines")
{
    auto a2 = generate_coxeter(2);
    auto u1 = vertex_pt(a2, 0b001);
    auto u2 = vertex_pt(a2, 0b010);
    auto u3 = vertex_pt(a2, 0b100);

    auto eq = apartment_angle_oracle(u1, u2, u3);
    CHECK(eq.d_xy == doctest::Approx(2 * M_PI / 3).epsilon(1e-12));
    CHECK(eq.d_xz == doctest::Approx(2 * M_PI / 3).epsilon(1e-12));
    double lhs = std::cos(point_distance(u2, u3));
    double rhs = std::cos(eq.d_xy) * std::cos(eq.d_xz) +
                 std::sin(eq.d_xy) * std::sin(eq.d_xz) * std::cos(eq.angle_x);
    CHECK(std::abs(lhs - rhs) < 1e-12);

    // degenerate: y = z gives angle 0
    auto deg = apartment_angle_oracle(u1, u2, u2);
    CHECK(deg.angle_x == doctest::Approx(0.0));

    CHECK_THROWS_AS(apartment_angle_oracle(u1, u1, u2), DomainError);
    auto u23 = vertex_pt(a2, 0b110);
    CHECK_THROWS_AS(apartment_angle_oracle(u1, u23, u2), DomainError);
}

TEST_CASE("law of cosines holds for sampled rational triples")
{
    auto a3 = generate_coxeter(3);
    std::mt19937_64 rng(20240902);
    int done = 0;
    double worst = 0;
    while (done < 2000) {
        auto x = random_point(a3, rng);
        auto y = random_point(a3, rng);
        auto z = random_point(a3, rng);
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
    CHECK(worst < 1e-9);
}
