#include "hemilab/building.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace hemilab {

bool WeylDistance::is_identity() const
{
    for (const auto& p : perms)
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != static_cast<int>(i) + 1) return false;
    return true;
}

WeylDistance WeylDistance::inverse() const
{
    WeylDistance out;
    for (const auto& p : perms) {
        std::vector<int> inv(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            inv[static_cast<std::size_t>(p[i] - 1)] = static_cast<int>(i) + 1;
        out.perms.push_back(std::move(inv));
    }
    return out;
}

int WeylDistance::length() const
{
    int len = 0;
    for (const auto& p : perms)
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) ++len;
    return len;
}

namespace {

int popcount(unsigned m) { return __builtin_popcount(m); }

std::string mask_label(unsigned mask, int np1)
{
    std::string s = "{";
    bool first = true;
    for (int b = 0; b < np1; ++b) {
        if (mask & (1u << b)) {
            if (!first) s += ",";
            s += std::to_string(b + 1);
            first = false;
        }
    }
    return s + "}";
}

Subspace zero_space(int q, int width)
{
    Subspace s;
    s.q = q;
    s.width = width;
    return s;
}

Subspace full_space(int q, int width)
{
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(width),
                                       std::vector<int>(static_cast<std::size_t>(width), 0));
    for (int i = 0; i < width; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    Subspace s;
    s.q = q;
    s.width = width;
    s.rows = std::move(rows);
    return s;
}

}  // namespace

BuildingFactor BuildingFactor::thin(int n)
{
    if (n < 1) throw InputError("thin factor: rank must be >= 1");
    if (n > 20) throw SizeBoundError("thin factor: rank too large");
    BuildingFactor f;
    f.n_ = n;
    f.q_ = 0;
    int np1 = n + 1;
    unsigned full = (1u << np1) - 1u;
    f.lv_by_mask_.assign(full + 1, -1);
    std::vector<unsigned> masks;
    for (unsigned m = 1; m < full; ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return a < b;
    });
    for (unsigned m : masks) {
        f.lv_by_mask_[m] = static_cast<int>(f.masks_.size());
        f.masks_.push_back(m);
        f.vdim_.push_back(popcount(m));
        f.vlabel_.push_back(mask_label(m, np1));
    }
    std::vector<int> perm(static_cast<std::size_t>(np1));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        std::vector<int> chamber;
        unsigned m = 0;
        for (int i = 0; i < np1 - 1; ++i) {
            m |= 1u << (perm[static_cast<std::size_t>(i)] - 1);
            chamber.push_back(f.lv_by_mask_[m]);
        }
        f.chambers_.push_back(std::move(chamber));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return f;
}

BuildingFactor BuildingFactor::flag(int n, int q, std::size_t max_vertices)
{
    if (n < 1) throw InputError("flag factor: rank must be >= 1");
    if (!is_prime(q))
        throw InputError("flag factor: q = " + std::to_string(q) +
                         " is not prime (prime powers unsupported)");
    BuildingFactor f;
    f.n_ = n;
    f.q_ = q;
    int width = n + 1;
    {
        // projected vertex count: sum of Gaussian binomial coefficients
        BigInt total = 0;
        for (int k = 1; k <= n; ++k) {
            BigInt num = 1, den = 1;
            for (int i = 0; i < k; ++i) {
                num *= boost::multiprecision::pow(BigInt(q), width - i) - 1;
                den *= boost::multiprecision::pow(BigInt(q), i + 1) - 1;
            }
            total += num / den;
        }
        if (total > BigInt(max_vertices))
            throw SizeBoundError("flag factor: vertex count exceeds bound");
    }
    for (int k = 1; k <= n; ++k) {
        auto subs = all_subspaces(q, width, k);
        f.by_dim_.push_back({});
        for (auto& s : subs) {
            int lv = static_cast<int>(f.subs_.size());
            f.sub_index_[s] = lv;
            f.by_dim_.back().push_back(lv);
            f.vdim_.push_back(k);
            f.vlabel_.push_back(s.label());
            f.subs_.push_back(std::move(s));
            if (f.subs_.size() > max_vertices)
                throw SizeBoundError("flag factor: vertex count exceeds bound");
        }
    }
    int nv = static_cast<int>(f.subs_.size());
    f.meets_.assign(static_cast<std::size_t>(nv), std::vector<int>(static_cast<std::size_t>(nv), 0));
    f.leq_.assign(static_cast<std::size_t>(nv), std::vector<bool>(static_cast<std::size_t>(nv), false));
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v) {
            int md = hemilab::meet_dim(f.subs_[static_cast<std::size_t>(u)],
                                       f.subs_[static_cast<std::size_t>(v)]);
            f.meets_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = md;
            f.leq_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                f.vdim_[static_cast<std::size_t>(u)] < f.vdim_[static_cast<std::size_t>(v)] &&
                md == f.vdim_[static_cast<std::size_t>(u)];
        }

    // chambers: complete flags by chain extension
    std::vector<std::vector<int>> partial;
    for (int lv : f.by_dim_[0]) partial.push_back({lv});
    for (int k = 2; k <= n; ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& chain : partial)
            for (int lv : f.by_dim_[static_cast<std::size_t>(k - 1)])
                if (f.leq_[static_cast<std::size_t>(chain.back())][static_cast<std::size_t>(lv)]) {
                    auto c = chain;
                    c.push_back(lv);
                    next.push_back(std::move(c));
                }
        partial = std::move(next);
    }
    f.chambers_ = std::move(partial);
    return f;
}

bool BuildingFactor::leq(int u, int v) const
{
    if (thick_model()) return leq_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    unsigned mu = masks_[static_cast<std::size_t>(u)], mv = masks_[static_cast<std::size_t>(v)];
    return vdim(u) < vdim(v) && (mu & mv) == mu;
}

int BuildingFactor::meet_dim(int u, int v) const
{
    if (thick_model()) return meets_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    return popcount(masks_[static_cast<std::size_t>(u)] & masks_[static_cast<std::size_t>(v)]);
}

int BuildingFactor::find_subspace(const Subspace& s) const
{
    if (!thick_model()) throw PreconditionError("find_subspace: thin model has no subspaces");
    auto it = sub_index_.find(s);
    return it == sub_index_.end() ? -1 : it->second;
}

std::vector<int> BuildingFactor::complete_flag(std::vector<int> partial) const
{
    std::vector<int> by_dim(static_cast<std::size_t>(n_) + 1, -1);
    for (int lv : partial) {
        int d = vdim(lv);
        if (by_dim[static_cast<std::size_t>(d)] != -1 && by_dim[static_cast<std::size_t>(d)] != lv)
            throw PreconditionError("complete_flag: two vertices of equal dimension");
        by_dim[static_cast<std::size_t>(d)] = lv;
    }
    int prev = -1;
    for (int d = 1; d <= n_; ++d) {
        int lv = by_dim[static_cast<std::size_t>(d)];
        if (lv == -1) continue;
        if (prev != -1 && !leq(prev, lv))
            throw PreconditionError("complete_flag: input is not a flag");
        prev = lv;
    }

    if (!thick_model()) {
        unsigned cur = 0;
        std::vector<int> out;
        for (int d = 1; d <= n_; ++d) {
            int lv = by_dim[static_cast<std::size_t>(d)];
            if (lv != -1) {
                unsigned m = masks_[static_cast<std::size_t>(lv)];
                unsigned add = m & ~cur;
                // fill skipped dimensions inside the gap, lowest bits first
                while (popcount(cur) < d - 1) {
                    unsigned bit = add & (~add + 1u);
                    cur |= bit;
                    add &= ~bit;
                    out.push_back(lv_by_mask_[cur]);
                }
                cur = m;
                out.push_back(lv);
            } else {
                unsigned target = (1u << (n_ + 1)) - 1u;
                for (int e = d + 1; e <= n_; ++e)
                    if (by_dim[static_cast<std::size_t>(e)] != -1) {
                        target = masks_[static_cast<std::size_t>(by_dim[static_cast<std::size_t>(e)])];
                        break;
                    }
                unsigned avail = target & ~cur;
                unsigned bit = avail & (~avail + 1u);
                cur |= bit;
                out.push_back(lv_by_mask_[cur]);
            }
        }
        return out;
    }

    std::vector<int> out;
    int below = -1;
    for (int d = 1; d <= n_; ++d) {
        int lv = by_dim[static_cast<std::size_t>(d)];
        if (lv == -1) {
            int above = -1;
            for (int e = d + 1; e <= n_; ++e)
                if (by_dim[static_cast<std::size_t>(e)] != -1) {
                    above = by_dim[static_cast<std::size_t>(e)];
                    break;
                }
            for (int cand : by_dim_[static_cast<std::size_t>(d - 1)]) {
                if (below != -1 && !leq_[static_cast<std::size_t>(below)][static_cast<std::size_t>(cand)])
                    continue;
                if (above != -1 && !leq_[static_cast<std::size_t>(cand)][static_cast<std::size_t>(above)])
                    continue;
                lv = cand;
                break;
            }
            if (lv == -1) throw Error("complete_flag: no completion found");
        }
        out.push_back(lv);
        below = lv;
    }
    return out;
}

BuildingFactor::Chart BuildingFactor::identity_chart() const
{
    if (thick_model()) throw PreconditionError("identity chart only exists for the thin model");
    Chart c;
    c.mask_to_lv = lv_by_mask_;
    return c;
}

BuildingFactor::Chart BuildingFactor::chart_from_frame(const std::vector<int>& ordered_lines) const
{
    if (!thick_model()) {
        if (!ordered_lines.empty()) throw PreconditionError("thin model has no frames");
        return identity_chart();
    }
    if (static_cast<int>(ordered_lines.size()) != n_ + 1)
        throw InputError("chart_from_frame: need n+1 lines");
    int width = n_ + 1;
    std::vector<std::vector<int>> stacked;
    for (int lv : ordered_lines) {
        if (vdim(lv) != 1) throw InputError("chart_from_frame: frame members must be lines");
        stacked.push_back(subs_[static_cast<std::size_t>(lv)].rows[0]);
    }
    if (row_space(q_, width, stacked).dim() != width)
        throw InputError("chart_from_frame: frame lines are dependent");

    Chart c;
    c.frame = ordered_lines;
    unsigned full = (1u << width) - 1u;
    c.mask_to_lv.assign(full + 1, -1);
    for (unsigned m = 1; m < full; ++m) {
        std::vector<std::vector<int>> rows;
        for (int b = 0; b < width; ++b)
            if (m & (1u << b))
                rows.push_back(
                    subs_[static_cast<std::size_t>(ordered_lines[static_cast<std::size_t>(b)])].rows[0]);
        Subspace span = row_space(q_, width, std::move(rows));
        auto it = sub_index_.find(span);
        if (it == sub_index_.end()) throw Error("chart_from_frame: span not found");
        c.mask_to_lv[m] = it->second;
    }
    return c;
}

std::vector<int> BuildingFactor::weyl(const std::vector<int>& flag_c,
                                      const std::vector<int>& flag_d) const
{
    int np1 = n_ + 1;
    if (static_cast<int>(flag_c.size()) != n_ || static_cast<int>(flag_d.size()) != n_)
        throw PreconditionError("weyl: complete flags required");
    auto dims = [&](int i, int j) -> int {
        if (i == 0 || j == 0) return 0;
        if (i == np1) return j;
        if (j == np1) return i;
        return meet_dim(flag_c[static_cast<std::size_t>(i - 1)], flag_d[static_cast<std::size_t>(j - 1)]);
    };
    std::vector<int> w(static_cast<std::size_t>(np1), 0);
    for (int j = 1; j <= np1; ++j) {
        for (int i = 1; i <= np1; ++i) {
            int jump = dims(i, j) - dims(i - 1, j) - dims(i, j - 1) + dims(i - 1, j - 1);
            if (jump == 1) {
                w[static_cast<std::size_t>(j - 1)] = i;
                break;
            }
        }
        if (w[static_cast<std::size_t>(j - 1)] == 0) throw Error("weyl: malformed dimension table");
    }
    return w;
}

BuildingFactor::Chart BuildingFactor::common_chart(const std::vector<int>& flag_a,
                                                   const std::vector<int>& flag_b) const
{
    if (!thick_model()) return identity_chart();
    int np1 = n_ + 1;
    auto w = weyl(flag_a, flag_b);

    auto member = [&](const std::vector<int>& flag, int i) -> Subspace {
        if (i == 0) return zero_space(q_, np1);
        if (i == np1) return full_space(q_, np1);
        return subs_[static_cast<std::size_t>(flag[static_cast<std::size_t>(i - 1)])];
    };

    std::vector<int> ordered_lines;
    for (int j = 1; j <= np1; ++j) {
        int i = w[static_cast<std::size_t>(j - 1)];
        Subspace a = subspace_intersection(member(flag_a, i), member(flag_b, j));
        Subspace b = subspace_sum(subspace_intersection(member(flag_a, i - 1), member(flag_b, j)),
                                  subspace_intersection(member(flag_a, i), member(flag_b, j - 1)));
        std::vector<int> pick;
        for (const auto& row : a.rows)
            if (!in_span(row, b)) {
                pick = row;
                break;
            }
        if (pick.empty()) throw Error("common_chart: adapted basis construction failed");
        Subspace line = row_space(q_, np1, {pick});
        ordered_lines.push_back(sub_index_.at(line));
    }
    return chart_from_frame(ordered_lines);
}

std::vector<BuildingFactor::Chart> BuildingFactor::enumerate_charts(std::size_t max_count,
                                                                    std::uint64_t seed) const
{
    if (!thick_model()) return {identity_chart()};

    const auto& lines = by_dim_[0];
    int np1 = n_ + 1;
    std::vector<Chart> out;

    auto independent = [&](const std::vector<int>& lvs) {
        std::vector<std::vector<int>> rows;
        for (int lv : lvs) rows.push_back(subs_[static_cast<std::size_t>(lv)].rows[0]);
        return row_space(q_, np1, std::move(rows)).dim() == np1;
    };

    if (n_ <= 3 && q_ <= 3) {
        std::vector<int> idx(static_cast<std::size_t>(np1));
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            std::vector<int> lvs;
            for (int i : idx) lvs.push_back(lines[static_cast<std::size_t>(i)]);
            if (independent(lvs)) {
                out.push_back(chart_from_frame(lvs));
                if (out.size() > max_count)
                    throw SizeBoundError("apartment enumeration exceeds bound");
            }
            int pos = np1 - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                                   static_cast<int>(lines.size()) - (np1 - pos))
                --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < np1; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
        return out;
    }

    // sampled frames with a deterministic seed
    std::size_t target = std::min<std::size_t>(max_count, 500);
    std::mt19937_64 rng(seed);
    std::set<std::vector<int>> seen;
    std::size_t attempts = 0;
    while (out.size() < target && attempts < target * 50) {
        ++attempts;
        std::vector<int> lvs;
        std::set<int> used;
        while (static_cast<int>(lvs.size()) < np1) {
            int lv = lines[rng() % lines.size()];
            if (used.insert(lv).second) lvs.push_back(lv);
        }
        std::sort(lvs.begin(), lvs.end());
        if (!seen.insert(lvs).second) continue;
        if (independent(lvs)) out.push_back(chart_from_frame(lvs));
    }
    return out;
}

int BuildingFactor::opposite_in_chart(const Chart& chart, int lv) const
{
    unsigned full = (1u << (n_ + 1)) - 1u;
    for (unsigned m = 1; m < full; ++m)
        if (chart.mask_to_lv[m] == lv) return chart.mask_to_lv[full & ~m];
    throw MembershipError("opposite_in_chart: vertex not in chart");
}

// ---------------------------------------------------------------------------

Building Building::flag(int n, int q, std::size_t max_vertices)
{
    Building b;
    b.factors_.push_back(BuildingFactor::flag(n, q, max_vertices));
    b.assemble();
    return b;
}

Building Building::thin(int n)
{
    Building b;
    b.factors_.push_back(BuildingFactor::thin(n));
    b.assemble();
    return b;
}

Building Building::join(std::vector<Building> parts)
{
    if (parts.empty()) throw InputError("join: no factors");
    Building b;
    for (auto& p : parts)
        for (auto& f : p.factors_) b.factors_.push_back(std::move(f));
    b.assemble();
    return b;
}

void Building::assemble()
{
    apt_cache_ = std::make_shared<ApartmentCache>();
    std::vector<int> ranks;
    for (const auto& f : factors_) ranks.push_back(f.rank());
    model_ = std::make_shared<CoxeterComplex>(ranks);

    int nf = num_factors();
    vert_offset_.resize(static_cast<std::size_t>(nf));
    int off = 0, types = 0;
    std::vector<int> type_offset(static_cast<std::size_t>(nf));
    for (int f = 0; f < nf; ++f) {
        vert_offset_[static_cast<std::size_t>(f)] = off;
        type_offset[static_cast<std::size_t>(f)] = types;
        off += factors_[static_cast<std::size_t>(f)].num_vertices();
        types += factors_[static_cast<std::size_t>(f)].rank();
    }

    std::vector<VertexInfo> infos;
    for (int f = 0; f < nf; ++f) {
        const auto& fac = factors_[static_cast<std::size_t>(f)];
        for (int lv = 0; lv < fac.num_vertices(); ++lv) {
            std::string label = fac.vlabel(lv);
            if (nf > 1) label = "f" + std::to_string(f) + ":" + label;
            infos.push_back({global_id(f, lv),
                             type_offset[static_cast<std::size_t>(f)] + fac.vdim(lv), label});
        }
    }

    std::vector<Simplex> facets = {Simplex{}};
    for (int f = 0; f < nf; ++f) {
        const auto& fac = factors_[static_cast<std::size_t>(f)];
        std::vector<Simplex> next;
        next.reserve(facets.size() * fac.chambers().size());
        for (const auto& base : facets)
            for (const auto& ch : fac.chambers()) {
                std::vector<VertexId> vs = base.vertices();
                for (int lv : ch) vs.push_back(global_id(f, lv));
                next.push_back(Simplex(std::move(vs)));
            }
        facets = std::move(next);
    }
    complex_ = SimplicialComplex(std::move(infos), std::move(facets));
}

int Building::factor_of(int gv) const
{
    for (int f = num_factors() - 1; f >= 0; --f)
        if (gv >= vert_offset_[static_cast<std::size_t>(f)]) {
            if (gv - vert_offset_[static_cast<std::size_t>(f)] <
                factors_[static_cast<std::size_t>(f)].num_vertices())
                return f;
            break;
        }
    throw MembershipError("building vertex out of range: " + std::to_string(gv));
}

int Building::local_of(int gv) const
{
    return gv - vert_offset_[static_cast<std::size_t>(factor_of(gv))];
}

bool Building::is_thick_model() const
{
    for (const auto& f : factors_)
        if (!f.thick_model()) return false;
    return true;
}

bool Building::is_thick() const
{
    std::map<Simplex, int> panel_count;
    for (const auto& f : complex_.facets())
        for (const auto& p : f.panels()) ++panel_count[p];
    for (const auto& [p, c] : panel_count)
        if (c < 3) return false;
    return !complex_.facets().empty();
}

Building::Chart Building::make_chart(std::vector<BuildingFactor::Chart> parts) const
{
    if (static_cast<int>(parts.size()) != num_factors())
        throw InputError("make_chart: factor count mismatch");
    Chart c;
    c.parts = std::move(parts);
    c.cox_to_bld.assign(static_cast<std::size_t>(model_->num_vertices()), -1);
    for (int vid = 0; vid < model_->num_vertices(); ++vid) {
        int f = model_->factor_of(vid);
        unsigned mask = model_->mask_of(vid);
        int lv = c.parts[static_cast<std::size_t>(f)].mask_to_lv[mask];
        int gv = global_id(f, lv);
        c.cox_to_bld[static_cast<std::size_t>(vid)] = gv;
        c.bld_to_cox[gv] = vid;
        c.image_vertices.push_back(gv);
    }
    std::sort(c.image_vertices.begin(), c.image_vertices.end());
    return c;
}

bool Building::chart_contains(const Chart& c, const Simplex& s) const
{
    for (VertexId v : s.vertices())
        if (!c.bld_to_cox.count(v)) return false;
    return true;
}

Simplex Building::chart_image(const Chart& c, const Simplex& cox_simplex) const
{
    std::vector<VertexId> vs;
    for (VertexId v : cox_simplex.vertices())
        vs.push_back(c.cox_to_bld[static_cast<std::size_t>(v)]);
    return Simplex(std::move(vs));
}

Simplex Building::chart_preimage(const Chart& c, const Simplex& bld_simplex) const
{
    std::vector<VertexId> vs;
    for (VertexId v : bld_simplex.vertices()) {
        auto it = c.bld_to_cox.find(v);
        if (it == c.bld_to_cox.end())
            throw MembershipError("chart_preimage: vertex not in chart image");
        vs.push_back(it->second);
    }
    return Simplex(std::move(vs));
}

SimplicialComplex Building::chart_complex(const Chart& c) const
{
    std::vector<Simplex> facets;
    for (const auto& ch : model_->chambers()) facets.push_back(chart_image(c, ch));
    return SimplicialComplex(complex_.vertex_infos(), std::move(facets));
}

Building::Chart Building::common_apartment(const Simplex& a, const Simplex& b) const
{
    if (!complex_.contains(a) || !complex_.contains(b))
        throw MembershipError("common_apartment: simplices must be members");
    std::vector<std::vector<int>> la(static_cast<std::size_t>(num_factors()));
    std::vector<std::vector<int>> lb(static_cast<std::size_t>(num_factors()));
    for (VertexId v : a.vertices()) la[static_cast<std::size_t>(factor_of(v))].push_back(local_of(v));
    for (VertexId v : b.vertices()) lb[static_cast<std::size_t>(factor_of(v))].push_back(local_of(v));

    std::vector<BuildingFactor::Chart> parts;
    for (int f = 0; f < num_factors(); ++f) {
        const auto& fac = factors_[static_cast<std::size_t>(f)];
        auto fa = fac.complete_flag(la[static_cast<std::size_t>(f)]);
        auto fb = fac.complete_flag(lb[static_cast<std::size_t>(f)]);
        parts.push_back(fac.common_chart(fa, fb));
    }
    return make_chart(std::move(parts));
}

const std::vector<Building::Chart>& Building::apartments() const
{
    auto& cache = *apt_cache_;
    std::lock_guard<std::mutex> lk(cache.mutex);
    if (!cache.ready) {
        std::vector<std::vector<BuildingFactor::Chart>> per;
        std::size_t total = 1;
        for (const auto& f : factors_) {
            per.push_back(f.enumerate_charts(max_apartments, apartment_seed));
            total *= per.back().size();
            if (total > max_apartments)
                throw SizeBoundError("apartment enumeration exceeds bound");
        }
        std::vector<std::vector<BuildingFactor::Chart>> combos = {{}};
        for (const auto& options : per) {
            std::vector<std::vector<BuildingFactor::Chart>> next;
            for (const auto& base : combos)
                for (const auto& opt : options) {
                    auto c = base;
                    c.push_back(opt);
                    next.push_back(std::move(c));
                }
            combos = std::move(next);
        }
        for (auto& combo : combos) cache.apartments.push_back(make_chart(std::move(combo)));
        for (std::size_t i = 0; i < cache.apartments.size(); ++i)
            for (const auto& ch : model_->chambers())
                cache.by_chamber[chart_image(cache.apartments[i], ch)].push_back(
                    static_cast<int>(i));
        cache.ready = true;
    }
    return cache.apartments;
}

std::vector<int> Building::apartments_containing(const std::vector<Simplex>& ss) const
{
    const auto& apts = apartments();
    std::vector<int> out;
    for (std::size_t i = 0; i < apts.size(); ++i) {
        bool all = true;
        for (const auto& s : ss)
            if (!chart_contains(apts[i], s)) {
                all = false;
                break;
            }
        if (all) out.push_back(static_cast<int>(i));
    }
    return out;
}

Simplex Building::complete_to_facet(const Simplex& s) const
{
    if (!complex_.contains(s)) throw MembershipError("complete_to_facet: not a member");
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(num_factors()));
    for (VertexId v : s.vertices())
        parts[static_cast<std::size_t>(factor_of(v))].push_back(local_of(v));
    std::vector<VertexId> vs;
    for (int f = 0; f < num_factors(); ++f) {
        auto flag =
            factors_[static_cast<std::size_t>(f)].complete_flag(parts[static_cast<std::size_t>(f)]);
        for (int lv : flag) vs.push_back(global_id(f, lv));
    }
    return Simplex(std::move(vs));
}

WeylDistance Building::weyl_distance(const Simplex& c, const Simplex& d) const
{
    std::vector<std::vector<int>> lc(static_cast<std::size_t>(num_factors()));
    std::vector<std::vector<int>> ld(static_cast<std::size_t>(num_factors()));
    for (VertexId v : c.vertices()) lc[static_cast<std::size_t>(factor_of(v))].push_back(local_of(v));
    for (VertexId v : d.vertices()) ld[static_cast<std::size_t>(factor_of(v))].push_back(local_of(v));
    WeylDistance w;
    for (int f = 0; f < num_factors(); ++f) {
        const auto& fac = factors_[static_cast<std::size_t>(f)];
        auto& cf = lc[static_cast<std::size_t>(f)];
        auto& df = ld[static_cast<std::size_t>(f)];
        auto by_dim = [&fac](std::vector<int>& flag) {
            std::sort(flag.begin(), flag.end(),
                      [&fac](int a, int b) { return fac.vdim(a) < fac.vdim(b); });
        };
        by_dim(cf);
        by_dim(df);
        w.perms.push_back(fac.weyl(cf, df));
    }
    return w;
}

Simplex Building::retraction(const Chart& chart, const Simplex& center, const Simplex& s) const
{
    return retraction_with_completion(chart, center, s, complete_to_facet(s));
}

Simplex Building::retraction_with_completion(const Chart& chart, const Simplex& center,
                                             const Simplex& s, const Simplex& d) const
{
    Simplex cox_center = chart_preimage(chart, center);
    if (!model_->complex().contains(cox_center) ||
        cox_center.size() != static_cast<std::size_t>(model_->rank_total()))
        throw PreconditionError("retraction: center must be a chart facet");
    if (!s.face_of(d)) throw PreconditionError("retraction: completion must contain the simplex");
    auto kappa = model_->perms_of_chamber(cox_center);

    WeylDistance w = weyl_distance(center, d);

    std::vector<VertexId> out;
    for (VertexId v : s.vertices()) {
        int f = factor_of(v);
        int t = factors_[static_cast<std::size_t>(f)].vdim(local_of(v));
        const auto& kf = kappa[static_cast<std::size_t>(f)];
        const auto& wf = w.perms[static_cast<std::size_t>(f)];
        unsigned mask = 0;
        for (int i = 1; i <= t; ++i)
            mask |= 1u << (kf[static_cast<std::size_t>(wf[static_cast<std::size_t>(i - 1)] - 1)] - 1);
        int lv = chart.parts[static_cast<std::size_t>(f)].mask_to_lv[mask];
        out.push_back(global_id(f, lv));
    }
    return Simplex(std::move(out));
}

bool Building::opposite(const Simplex& a, const Simplex& b) const
{
    std::vector<std::vector<int>> la(static_cast<std::size_t>(num_factors()));
    std::vector<std::vector<int>> lb(static_cast<std::size_t>(num_factors()));
    for (VertexId v : a.vertices()) la[static_cast<std::size_t>(factor_of(v))].push_back(local_of(v));
    for (VertexId v : b.vertices()) lb[static_cast<std::size_t>(factor_of(v))].push_back(local_of(v));
    for (int f = 0; f < num_factors(); ++f) {
        const auto& fac = factors_[static_cast<std::size_t>(f)];
        int np1 = fac.rank() + 1;
        const auto& af = la[static_cast<std::size_t>(f)];
        const auto& bf = lb[static_cast<std::size_t>(f)];
        std::vector<int> da, db;
        for (int lv : af) da.push_back(fac.vdim(lv));
        for (int lv : bf) db.push_back(np1 - fac.vdim(lv));
        std::sort(da.begin(), da.end());
        std::sort(db.begin(), db.end());
        if (da != db) return false;
        for (int u : af)
            for (int v : bf)
                if (fac.vdim(u) + fac.vdim(v) == np1 && fac.meet_dim(u, v) != 0) return false;
    }
    return true;
}

std::vector<Simplex> Building::opposites_of(const Simplex& s) const
{
    std::vector<Simplex> out;
    std::multiset<int> want;
    for (VertexId v : s.vertices()) {
        int f = factor_of(v);
        const auto& fac = factors_[static_cast<std::size_t>(f)];
        want.insert(f * 1000 + (fac.rank() + 1 - fac.vdim(local_of(v))));
    }
    for (const auto& cand : complex_.all_simplices()) {
        if (cand.size() != s.size()) continue;
        std::multiset<int> got;
        for (VertexId v : cand.vertices()) {
            int f = factor_of(v);
            got.insert(f * 1000 + factors_[static_cast<std::size_t>(f)].vdim(local_of(v)));
        }
        if (got != want) continue;
        if (opposite(s, cand)) out.push_back(cand);
    }
    return out;
}

Simplex Building::opposite_in_chart(const Chart& chart, const Simplex& s) const
{
    std::vector<VertexId> vs;
    for (VertexId v : s.vertices()) {
        int f = factor_of(v);
        int lv = factors_[static_cast<std::size_t>(f)].opposite_in_chart(
            chart.parts[static_cast<std::size_t>(f)], local_of(v));
        vs.push_back(global_id(f, lv));
    }
    return Simplex(std::move(vs));
}

SimplicialComplex Building::conv(const Simplex& a, const Simplex& b) const
{
    Chart chart = common_apartment(a, b);
    Simplex ca = chart_preimage(chart, a);
    Simplex cb = chart_preimage(chart, b);
    SimplicialComplex hull = model_->conv({ca, cb});
    std::vector<Simplex> facets;
    for (const auto& f : hull.facets()) facets.push_back(chart_image(chart, f));
    return SimplicialComplex(complex_.vertex_infos(), std::move(facets));
}

Simplex Building::proj(const Simplex& sigma, const Simplex& tau) const
{
    if (sigma.empty()) return tau;
    Chart chart = common_apartment(sigma, tau);
    Simplex cs = chart_preimage(chart, sigma);
    Simplex ct = chart_preimage(chart, tau);
    SimplicialComplex hull = model_->conv({cs, ct});
    Simplex best;
    bool found = false;
    for (const auto& h : hull.all_simplices()) {
        if (!cs.face_of(h)) continue;
        if (!found || h.size() > best.size()) {
            best = h;
            found = true;
        }
    }
    if (!found) throw Error("proj: star does not meet the hull");
    for (const auto& h : hull.all_simplices())
        if (cs.face_of(h) && h.size() == best.size() && !(h == best))
            throw Error("proj: gate is not unique");
    return chart_image(chart, best);
}

int Building::gallery_distance(const Simplex& c, const Simplex& d) const
{
    const auto& facets = complex_.facets();
    auto find_idx = [&](const Simplex& s) {
        auto it = std::lower_bound(facets.begin(), facets.end(), s);
        if (it == facets.end() || !(*it == s))
            throw MembershipError("gallery_distance: not a facet");
        return static_cast<int>(it - facets.begin());
    };
    int src = find_idx(c), dst = find_idx(d);
    if (src == dst) return 0;
    std::vector<int> dist(facets.size(), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(src)] = 0;
    q.push(src);
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        for (const auto& p : facets[static_cast<std::size_t>(cur)].panels()) {
            for (int nb : complex_.facets_containing(p)) {
                if (dist[static_cast<std::size_t>(nb)] != -1) continue;
                dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(cur)] + 1;
                if (nb == dst) return dist[static_cast<std::size_t>(nb)];
                q.push(nb);
            }
        }
    }
    throw Error("gallery_distance: chamber graph is disconnected");
}

std::optional<Building::Chart> Building::find_apartment_with_intersection(
    const Chart& sigma, const SimplicialComplex& k) const
{
    if (k.is_void() || k.is_empty_complex())
        throw PreconditionError("find_apartment_with_intersection: K must be nonempty");
    int full_rank = model_->rank_total();
    for (const auto& f : k.facets()) {
        if (static_cast<int>(f.size()) != full_rank)
            throw PreconditionError(
                "find_apartment_with_intersection: K must be a chamber subcomplex");
        if (!chart_contains(sigma, f))
            throw PreconditionError("find_apartment_with_intersection: K must lie in the chart");
    }

    const auto& apts = apartments();

    auto intersection_equals_k = [&](const Chart& other) {
        std::vector<VertexId> common;
        std::set_intersection(sigma.image_vertices.begin(), sigma.image_vertices.end(),
                              other.image_vertices.begin(), other.image_vertices.end(),
                              std::back_inserter(common));
        SimplicialComplex inter = complex_.full_subcomplex(common);
        return inter == k;
    };

    // walk out of K first: apartments through K's chambers, then the rest
    std::vector<int> order;
    std::set<int> seen;
    {
        auto it = apt_cache_->by_chamber.find(k.facets().front());
        if (it != apt_cache_->by_chamber.end())
            for (int i : it->second)
                if (seen.insert(i).second) order.push_back(i);
    }
    for (std::size_t i = 0; i < apts.size(); ++i)
        if (seen.insert(static_cast<int>(i)).second) order.push_back(static_cast<int>(i));

    for (int i : order)
        if (intersection_equals_k(apts[static_cast<std::size_t>(i)]))
            return apts[static_cast<std::size_t>(i)];
    return std::nullopt;
}

}  // namespace hemilab
