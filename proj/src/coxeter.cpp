#include "hemilab/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hemilab {

namespace {

int popcount(unsigned m) { return __builtin_popcount(m); }

std::string mask_label(unsigned mask, int nplus1, int factor, int num_factors)
{
    std::string s = "{";
    bool first = true;
    for (int b = 0; b < nplus1; ++b) {
        if (mask & (1u << b)) {
            if (!first) s += ",";
            s += std::to_string(b + 1);
            first = false;
        }
    }
    s += "}";
    if (num_factors > 1) s = "f" + std::to_string(factor) + ":" + s;
    return s;
}

}  // namespace

CoxeterComplex::CoxeterComplex(std::vector<int> ranks, std::size_t max_facets)
    : ranks_(std::move(ranks))
{
    if (ranks_.empty()) throw InputError("coxeter: at least one factor required");
    std::size_t facet_count = 1;
    for (int n : ranks_) {
        if (n < 1) throw InputError("coxeter: rank must be >= 1");
        if (n > 20) throw SizeBoundError("coxeter: rank too large");
        for (int k = 2; k <= n + 1; ++k) {
            facet_count *= static_cast<std::size_t>(k);
            if (facet_count > max_facets)
                throw SizeBoundError("coxeter: facet count exceeds bound");
        }
    }

    int nf = num_factors();
    block_offset_.resize(static_cast<std::size_t>(nf));
    vert_offset_.resize(static_cast<std::size_t>(nf));
    type_offset_.resize(static_cast<std::size_t>(nf));
    int coord = 0, types = 0;
    for (int f = 0; f < nf; ++f) {
        block_offset_[static_cast<std::size_t>(f)] = coord;
        type_offset_[static_cast<std::size_t>(f)] = types;
        coord += ranks_[static_cast<std::size_t>(f)] + 1;
        types += ranks_[static_cast<std::size_t>(f)];
    }
    ambient_dim_ = coord;

    vid_by_mask_.assign(static_cast<std::size_t>(nf), {});
    std::vector<VertexInfo> infos;
    for (int f = 0; f < nf; ++f) {
        int np1 = ranks_[static_cast<std::size_t>(f)] + 1;
        unsigned full = (1u << np1) - 1u;
        vid_by_mask_[static_cast<std::size_t>(f)].assign(full + 1, -1);
        vert_offset_[static_cast<std::size_t>(f)] = static_cast<int>(verts_.size());

        std::vector<unsigned> masks;
        for (unsigned m = 1; m < full; ++m) masks.push_back(m);
        std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
            if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
            return a < b;
        });

        for (unsigned m : masks) {
            VertexData vd;
            vd.factor = f;
            vd.mask = m;
            vd.vtype = type_offset_[static_cast<std::size_t>(f)] + popcount(m);
            vd.coords.assign(static_cast<std::size_t>(ambient_dim_), 0);
            int sz = popcount(m);
            for (int b = 0; b < np1; ++b) {
                long long val = (m & (1u << b)) ? (np1 - sz) : -sz;
                vd.coords[static_cast<std::size_t>(block_offset_[static_cast<std::size_t>(f)] + b)] = val;
            }
            int vid = static_cast<int>(verts_.size());
            vid_by_mask_[static_cast<std::size_t>(f)][m] = vid;
            infos.push_back({vid, vd.vtype, mask_label(m, np1, f, nf)});
            verts_.push_back(std::move(vd));
        }

        for (int i = 1; i <= np1; ++i)
            for (int j = 1; j <= np1; ++j)
                if (i != j) roots_.push_back({f, i, j});
    }

    // facets: per factor all maximal subset chains (permutations in
    // lexicographic order), then the product across factors
    std::vector<std::vector<Simplex>> per_factor;
    for (int f = 0; f < nf; ++f) {
        int np1 = ranks_[static_cast<std::size_t>(f)] + 1;
        std::vector<int> perm(static_cast<std::size_t>(np1));
        std::iota(perm.begin(), perm.end(), 1);
        std::vector<Simplex> cs;
        do {
            std::vector<VertexId> vs;
            unsigned m = 0;
            for (int i = 0; i < np1 - 1; ++i) {
                m |= 1u << (perm[static_cast<std::size_t>(i)] - 1);
                vs.push_back(vid_by_mask_[static_cast<std::size_t>(f)][m]);
            }
            cs.push_back(Simplex(std::move(vs)));
        } while (std::next_permutation(perm.begin(), perm.end()));
        per_factor.push_back(std::move(cs));
    }
    std::vector<Simplex> facets = {Simplex{}};
    for (const auto& cs : per_factor) {
        std::vector<Simplex> next;
        next.reserve(facets.size() * cs.size());
        for (const auto& a : facets)
            for (const auto& b : cs) next.push_back(a.set_union(b));
        facets = std::move(next);
    }
    complex_ = SimplicialComplex(std::move(infos), std::move(facets));
}

int CoxeterComplex::rank_total() const
{
    int r = 0;
    for (int n : ranks_) r += n;
    return r;
}

bool CoxeterComplex::valid_mask(int factor, unsigned mask) const
{
    if (factor < 0 || factor >= num_factors()) return false;
    unsigned full = full_mask(factor);
    return mask > 0 && mask < full;
}

int CoxeterComplex::vertex_id(int factor, unsigned mask) const
{
    if (!valid_mask(factor, mask)) throw MembershipError("invalid coxeter vertex mask");
    return vid_by_mask_[static_cast<std::size_t>(factor)][mask];
}

std::vector<std::vector<int>> CoxeterComplex::perms_of_chamber(const Simplex& c) const
{
    std::vector<std::vector<unsigned>> chains(static_cast<std::size_t>(num_factors()));
    for (VertexId v : c.vertices())
        chains[static_cast<std::size_t>(factor_of(v))].push_back(mask_of(v));

    std::vector<std::vector<int>> perms;
    for (int f = 0; f < num_factors(); ++f) {
        auto& chain = chains[static_cast<std::size_t>(f)];
        int n = ranks_[static_cast<std::size_t>(f)];
        if (static_cast<int>(chain.size()) != n)
            throw PreconditionError("perms_of_chamber: not a chamber");
        std::sort(chain.begin(), chain.end(),
                  [](unsigned a, unsigned b) { return popcount(a) < popcount(b); });
        std::vector<int> perm;
        unsigned prev = 0;
        for (unsigned m : chain) {
            unsigned add = m & ~prev;
            if (popcount(m) != popcount(prev) + 1 || popcount(add) != 1)
                throw PreconditionError("perms_of_chamber: vertices do not form a chain");
            perm.push_back(__builtin_ctz(add) + 1);
            prev = m;
        }
        unsigned rest = full_mask(f) & ~prev;
        perm.push_back(__builtin_ctz(rest) + 1);
        perms.push_back(std::move(perm));
    }
    return perms;
}

Simplex CoxeterComplex::chamber_of_perms(const std::vector<std::vector<int>>& perms) const
{
    if (static_cast<int>(perms.size()) != num_factors())
        throw InputError("chamber_of_perms: factor count mismatch");
    std::vector<VertexId> vs;
    for (int f = 0; f < num_factors(); ++f) {
        const auto& perm = perms[static_cast<std::size_t>(f)];
        int np1 = ranks_[static_cast<std::size_t>(f)] + 1;
        if (static_cast<int>(perm.size()) != np1)
            throw InputError("chamber_of_perms: permutation length mismatch");
        unsigned m = 0;
        for (int i = 0; i < np1 - 1; ++i) {
            m |= 1u << (perm[static_cast<std::size_t>(i)] - 1);
            vs.push_back(vid_by_mask_[static_cast<std::size_t>(f)][m]);
        }
    }
    return Simplex(std::move(vs));
}

std::vector<std::vector<int>> CoxeterComplex::weyl(const Simplex& c, const Simplex& d) const
{
    auto pc = perms_of_chamber(c);
    auto pd = perms_of_chamber(d);
    std::vector<std::vector<int>> out;
    for (int f = 0; f < num_factors(); ++f) {
        const auto& a = pc[static_cast<std::size_t>(f)];
        const auto& b = pd[static_cast<std::size_t>(f)];
        std::vector<int> inv(a.size() + 1);
        for (std::size_t i = 0; i < a.size(); ++i) inv[static_cast<std::size_t>(a[i])] = static_cast<int>(i) + 1;
        std::vector<int> w(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) w[i] = inv[static_cast<std::size_t>(b[i])];
        out.push_back(std::move(w));
    }
    return out;
}

Simplex CoxeterComplex::complete_to_chamber(const Simplex& s) const
{
    std::vector<std::vector<unsigned>> chains(static_cast<std::size_t>(num_factors()));
    for (VertexId v : s.vertices()) {
        if (v < 0 || v >= num_vertices()) throw MembershipError("complete_to_chamber: bad vertex");
        chains[static_cast<std::size_t>(factor_of(v))].push_back(mask_of(v));
    }
    std::vector<VertexId> out;
    for (int f = 0; f < num_factors(); ++f) {
        auto& chain = chains[static_cast<std::size_t>(f)];
        std::sort(chain.begin(), chain.end(),
                  [](unsigned a, unsigned b) { return popcount(a) < popcount(b); });
        unsigned prev = 0;
        std::vector<unsigned> full_chain;
        for (unsigned m : chain) {
            if ((prev & m) != prev)
                throw PreconditionError("complete_to_chamber: not a chain of subsets");
            unsigned add = m & ~prev;
            while (add) {
                unsigned bit = add & (~add + 1u);  // lowest set bit
                prev |= bit;
                add &= ~bit;
                full_chain.push_back(prev);
            }
        }
        unsigned rest = full_mask(f) & ~prev;
        while (rest) {
            unsigned bit = rest & (~rest + 1u);
            prev |= bit;
            rest &= ~bit;
            full_chain.push_back(prev);
        }
        for (unsigned m : full_chain)
            if (m != full_mask(f)) out.push_back(vid_by_mask_[static_cast<std::size_t>(f)][m]);
    }
    return Simplex(std::move(out));
}

bool CoxeterComplex::root_contains(const Root& r, int vid) const
{
    const auto& vd = verts_[static_cast<std::size_t>(check(vid))];
    if (vd.factor != r.factor) return true;  // other blocks lie on the wall
    bool has_i = vd.mask & (1u << (r.i - 1));
    bool has_j = vd.mask & (1u << (r.j - 1));
    return has_i || !has_j;
}

bool CoxeterComplex::root_strict(const Root& r, int vid) const
{
    const auto& vd = verts_[static_cast<std::size_t>(check(vid))];
    if (vd.factor != r.factor) return false;
    bool has_i = vd.mask & (1u << (r.i - 1));
    bool has_j = vd.mask & (1u << (r.j - 1));
    return has_i && !has_j;
}

bool CoxeterComplex::on_wall(const Root& r, int vid) const
{
    return root_contains(r, vid) && !root_strict(r, vid);
}

SimplicialComplex CoxeterComplex::conv(const std::vector<Simplex>& gens) const
{
    if (gens.empty()) throw PreconditionError("conv: empty generator set");
    for (const auto& g : gens)
        if (!complex_.contains(g)) throw MembershipError("conv: generator not a member");

    std::vector<const Root*> active;
    for (const auto& r : roots_) {
        bool all = true;
        for (const auto& g : gens) {
            for (VertexId v : g.vertices())
                if (!root_contains(r, v)) {
                    all = false;
                    break;
                }
            if (!all) break;
        }
        if (all) active.push_back(&r);
    }
    std::vector<VertexId> keep;
    for (int v = 0; v < num_vertices(); ++v) {
        bool in_all = true;
        for (const Root* r : active)
            if (!root_contains(*r, v)) {
                in_all = false;
                break;
            }
        if (in_all) keep.push_back(v);
    }
    return complex_.full_subcomplex(keep);
}

int CoxeterComplex::opposite_vertex(int vid) const
{
    const auto& vd = verts_[static_cast<std::size_t>(check(vid))];
    unsigned comp = full_mask(vd.factor) & ~vd.mask;
    return vid_by_mask_[static_cast<std::size_t>(vd.factor)][comp];
}

Simplex CoxeterComplex::opposition(const Simplex& s) const
{
    std::vector<VertexId> vs;
    for (VertexId v : s.vertices()) vs.push_back(opposite_vertex(v));
    return Simplex(std::move(vs));
}

CoxeterComplex generate_coxeter(int n, int bound)
{
    if (n < 1) throw InputError("generate: rank must be positive");
    if (n > bound) throw SizeBoundError("generate: rank exceeds bound " + std::to_string(bound));
    return CoxeterComplex({n});
}

RationalPoint::RationalPoint(const CoxeterComplex& cx, Simplex carrier, std::vector<Rat> weights)
    : cx_(&cx), carrier_(std::move(carrier)), weights_(std::move(weights))
{
    if (carrier_.empty()) throw InputError("rational point: empty carrier");
    if (!cx.complex().contains(carrier_))
        throw MembershipError("rational point: carrier not a member simplex");
    if (weights_.size() != carrier_.size())
        throw InputError("rational point: weight count mismatch");
    Rat sum = 0;
    for (const auto& w : weights_) {
        if (w <= 0) throw InputError("rational point: weights must be positive");
        sum += w;
    }
    if (sum != 1) throw InputError("rational point: weights must sum to 1");
    coords_.assign(static_cast<std::size_t>(cx.ambient_dim()), Rat(0));
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const auto& vc = cx.coords(carrier_.vertices()[i]);
        for (std::size_t d = 0; d < coords_.size(); ++d) coords_[d] += weights_[i] * Rat(vc[d]);
    }
}

RationalPoint RationalPoint::at_vertex(const CoxeterComplex& cx, int vid)
{
    return RationalPoint(cx, Simplex{vid}, {Rat(1)});
}

RationalPoint RationalPoint::barycenter(const CoxeterComplex& cx, const Simplex& s)
{
    if (s.empty()) throw InputError("barycenter: empty simplex");
    std::vector<Rat> w(s.size(), Rat(1, static_cast<unsigned>(s.size())));
    return RationalPoint(cx, s, std::move(w));
}

bool RationalPoint::same_point(const RationalPoint& other) const
{
    // equal as rays: other = λ·this with λ > 0
    const auto& a = coords_;
    const auto& b = other.coords_;
    if (a.size() != b.size()) return false;
    Rat lambda = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            if (b[i] != 0) return false;
            continue;
        }
        if (lambda == 0) lambda = b[i] / a[i];
    }
    if (lambda <= 0) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != lambda * a[i]) return false;
    return true;
}

Rat inner(const std::vector<Rat>& a, const std::vector<Rat>& b)
{
    if (a.size() != b.size()) throw InputError("inner: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Sign cos_sign(const RationalPoint& p, const RationalPoint& q)
{
    if (&p.complex() != &q.complex())
        throw PreconditionError("cos_sign: points of different complexes");
    return sign_of(inner(p.coords(), q.coords()));
}

Sign cos_sign_vertex(const RationalPoint& p, const CoxeterComplex& cx, int vid)
{
    const auto& vc = cx.coords(vid);
    Rat s = 0;
    for (std::size_t i = 0; i < p.coords().size(); ++i) s += p.coords()[i] * Rat(vc[i]);
    return sign_of(s);
}

Tri cmp_cos_value(const Rat& a, const Rat& n2, const Rat& t)
{
    if (n2 <= 0) throw DomainError("cmp_cos_value: nonpositive norm");
    int sa = (a > 0) ? 1 : (a < 0 ? -1 : 0);
    int st = (t > 0) ? 1 : (t < 0 ? -1 : 0);
    if (sa != st) return sa < st ? Tri::LT : Tri::GT;
    if (sa == 0) return Tri::EQ;
    Rat lhs = a * a;
    Rat rhs = t * t * n2;
    if (lhs == rhs) return Tri::EQ;
    bool bigger = lhs > rhs;
    if (sa > 0) return bigger ? Tri::GT : Tri::LT;
    return bigger ? Tri::LT : Tri::GT;
}

Tri cmp_cos_threshold(const RationalPoint& p, const RationalPoint& q, const Rat& t)
{
    if (t <= -1 || t >= 1) throw PreconditionError("cmp_cos_threshold: t outside (-1,1)");
    Rat a = inner(p.coords(), q.coords());
    Rat n2 = inner(p.coords(), p.coords()) * inner(q.coords(), q.coords());
    return cmp_cos_value(a, n2, t);
}

bool antipodal_test(const RationalPoint& p, const RationalPoint& q)
{
    const auto& a = p.coords();
    const auto& b = q.coords();
    Rat lambda = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            if (b[i] != 0) return false;
            continue;
        }
        if (lambda == 0) lambda = b[i] / a[i];
    }
    if (lambda >= 0) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != lambda * a[i]) return false;
    return true;
}

double point_distance(const RationalPoint& p, const RationalPoint& q)
{
    double a = inner(p.coords(), q.coords()).convert_to<double>();
    double np = inner(p.coords(), p.coords()).convert_to<double>();
    double nq = inner(q.coords(), q.coords()).convert_to<double>();
    double c = a / std::sqrt(np * nq);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

RationalPoint random_rational_point(const CoxeterComplex& cx, std::mt19937_64& rng)
{
    const auto& chambers = cx.chambers();
    const Simplex& c = chambers[rng() % chambers.size()];
    std::vector<VertexId> carrier;
    while (carrier.empty()) {
        carrier.clear();
        for (VertexId v : c.vertices())
            if (rng() % 2) carrier.push_back(v);
    }
    std::vector<Rat> w;
    Rat sum = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        Rat wi(1 + static_cast<int>(rng() % 7), 1);
        w.push_back(wi);
        sum += wi;
    }
    for (auto& wi : w) wi /= sum;
    return RationalPoint(cx, Simplex(std::move(carrier)), std::move(w));
}

AngleOracle apartment_angle_oracle(const RationalPoint& x, const RationalPoint& y,
                                   const RationalPoint& z)
{
    if (x.same_point(y) || x.same_point(z))
        throw DomainError("angle oracle: coincident points");
    if (antipodal_test(x, y) || antipodal_test(x, z) || antipodal_test(y, z))
        throw DomainError("angle oracle: antipodal points");

    auto unit = [](const RationalPoint& p) {
        std::vector<double> v(p.coords().size());
        double n = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = p.coords()[i].convert_to<double>();
            n += v[i] * v[i];
        }
        n = std::sqrt(n);
        for (auto& c : v) c /= n;
        return v;
    };
    auto X = unit(x), Y = unit(y), Z = unit(z);
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    double cy = dot(X, Y), cz = dot(X, Z);
    // tangent-space projections at x
    std::vector<double> ty(Y.size()), tz(Z.size());
    for (std::size_t i = 0; i < Y.size(); ++i) {
        ty[i] = Y[i] - cy * X[i];
        tz[i] = Z[i] - cz * X[i];
    }
    double nty = std::sqrt(dot(ty, ty)), ntz = std::sqrt(dot(tz, tz));
    AngleOracle out;
    out.d_xy = std::acos(std::clamp(cy, -1.0, 1.0));
    out.d_xz = std::acos(std::clamp(cz, -1.0, 1.0));
    out.angle_x = std::acos(std::clamp(dot(ty, tz) / (nty * ntz), -1.0, 1.0));
    return out;
}

}  // namespace hemilab
