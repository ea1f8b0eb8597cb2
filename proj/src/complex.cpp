#include "hemilab/complex.hpp"

#include <algorithm>
#include <queue>

namespace hemilab {

std::vector<Simplex> maximalize(std::vector<Simplex> gens)
{
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Simplex> out;
    // gens is sorted by size; a simplex can only be contained in a later one
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            if (gens[i].size() < gens[j].size() && gens[i].face_of(gens[j])) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(gens[i]);
    }
    return out;
}

SimplicialComplex::SimplicialComplex(std::vector<VertexInfo> verts,
                                     std::vector<Simplex> generators)
{
    facets_ = maximalize(std::move(generators));

    std::set<VertexId> used;
    for (const auto& f : facets_)
        for (VertexId v : f.vertices()) used.insert(v);

    std::map<VertexId, VertexInfo> by_id;
    for (auto& vi : verts) by_id[vi.id] = vi;
    for (VertexId v : used) {
        if (!by_id.count(v))
            throw InputError("facet vertex " + std::to_string(v) + " has no vertex info");
    }

    for (VertexId v : used) {
        verts_.push_back(by_id[v]);
        verts_sorted_ids_.push_back(v);
        vtype_[v] = by_id[v].vtype;
        label_[v] = by_id[v].label;
    }
    std::set<int> types;
    for (const auto& vi : verts_) types.insert(vi.vtype);
    typeset_.assign(types.begin(), types.end());

    for (int i = 0; i < static_cast<int>(facets_.size()); ++i)
        for (VertexId v : facets_[i].vertices()) facet_index_[v].push_back(i);
}

int SimplicialComplex::dim() const
{
    if (is_void()) return -2;
    int d = -1;
    for (const auto& f : facets_) d = std::max(d, f.dim());
    return d;
}

std::vector<VertexId> SimplicialComplex::vertex_ids() const
{
    return verts_sorted_ids_;
}

int SimplicialComplex::vtype(VertexId v) const
{
    auto it = vtype_.find(v);
    if (it == vtype_.end()) throw MembershipError("unknown vertex " + std::to_string(v));
    return it->second;
}

const std::string& SimplicialComplex::label(VertexId v) const
{
    auto it = label_.find(v);
    if (it == label_.end()) throw MembershipError("unknown vertex " + std::to_string(v));
    return it->second;
}

bool SimplicialComplex::contains(const Simplex& s) const
{
    if (s.empty()) return !is_void();
    return !facets_containing(s).empty();
}

std::vector<int> SimplicialComplex::facets_containing(const Simplex& s) const
{
    std::vector<int> out;
    if (s.empty()) {
        out.resize(facets_.size());
        for (std::size_t i = 0; i < facets_.size(); ++i) out[i] = static_cast<int>(i);
        return out;
    }
    auto it = facet_index_.find(s.vertices()[0]);
    if (it == facet_index_.end()) return out;
    for (int fi : it->second)
        if (s.face_of(facets_[fi])) out.push_back(fi);
    return out;
}

SimplicialComplex SimplicialComplex::restrict_infos(std::vector<Simplex> generators) const
{
    return SimplicialComplex(verts_, std::move(generators));
}

SimplicialComplex SimplicialComplex::star(const Simplex& s) const
{
    if (!contains(s)) throw MembershipError("star: simplex " + s.to_string() + " not a member");
    std::vector<Simplex> gens;
    for (int fi : facets_containing(s)) gens.push_back(facets_[fi]);
    return restrict_infos(std::move(gens));
}

std::vector<Simplex> SimplicialComplex::open_star(const Simplex& s) const
{
    if (!contains(s)) throw MembershipError("open_star: simplex not a member");
    std::set<Simplex> out;
    for (int fi : facets_containing(s)) {
        const Simplex& f = facets_[fi];
        Simplex rest = f.set_minus(s);
        for (const auto& g : rest.all_faces()) out.insert(s.set_union(g));
    }
    return std::vector<Simplex>(out.begin(), out.end());
}

SimplicialComplex SimplicialComplex::link(const Simplex& s) const
{
    if (!contains(s)) throw MembershipError("link: simplex " + s.to_string() + " not a member");
    std::vector<Simplex> gens;
    for (int fi : facets_containing(s)) gens.push_back(facets_[fi].set_minus(s));
    if (gens.empty()) gens.push_back(Simplex{});
    return restrict_infos(std::move(gens));
}

SimplicialComplex SimplicialComplex::boundary_of_star(const Simplex& s) const
{
    if (!contains(s)) throw MembershipError("boundary_of_star: simplex not a member");
    if (s.empty()) return void_complex();
    std::vector<Simplex> gens;
    for (int fi : facets_containing(s)) {
        const Simplex& f = facets_[fi];
        // maximal faces of f not containing s: drop one vertex of s
        for (VertexId v : s.vertices()) gens.push_back(f.without_vertex(v));
    }
    return restrict_infos(std::move(gens));
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::vector<VertexId>& keep) const
{
    Simplex keep_set((std::vector<VertexId>(keep)));
    for (VertexId v : keep_set.vertices())
        if (!has_vertex(v))
            throw InputError("full_subcomplex: vertex " + std::to_string(v) +
                             " not in the complex");
    std::vector<Simplex> gens;
    for (const auto& f : facets_) gens.push_back(f.set_intersection(keep_set));
    if (gens.empty()) gens.push_back(Simplex{});
    return restrict_infos(std::move(gens));
}

SimplicialComplex SimplicialComplex::skeleton(int k) const
{
    if (is_void()) return void_complex();
    if (k <= -1) return empty_complex();
    std::vector<Simplex> gens;
    for (const auto& f : facets_) {
        if (f.dim() <= k) {
            gens.push_back(f);
            continue;
        }
        // all (k+1)-subsets
        const auto& vs = f.vertices();
        std::vector<int> idx(static_cast<std::size_t>(k) + 1);
        for (int i = 0; i <= k; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (;;) {
            std::vector<VertexId> sub;
            for (int i : idx) sub.push_back(vs[static_cast<std::size_t>(i)]);
            gens.push_back(Simplex(std::move(sub)));
            int pos = k;
            while (pos >= 0 &&
                   idx[static_cast<std::size_t>(pos)] == static_cast<int>(vs.size()) - (k + 1 - pos))
                --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i <= k; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return restrict_infos(std::move(gens));
}

int SimplicialComplex::components() const
{
    if (verts_.empty()) return 0;
    std::map<VertexId, VertexId> parent;
    std::function<VertexId(VertexId)> find = [&](VertexId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (VertexId v : verts_sorted_ids_) parent[v] = v;
    for (const auto& f : facets_) {
        const auto& vs = f.vertices();
        for (std::size_t i = 1; i < vs.size(); ++i) {
            VertexId a = find(vs[0]);
            VertexId b = find(vs[i]);
            if (a != b) parent[b] = a;
        }
    }
    std::set<VertexId> roots;
    for (VertexId v : verts_sorted_ids_) roots.insert(find(v));
    return static_cast<int>(roots.size());
}

std::vector<long long> SimplicialComplex::f_vector() const
{
    int d = dim();
    if (d < 0) return {};
    std::vector<long long> f(static_cast<std::size_t>(d) + 1, 0);
    for (const auto& s : all_simplices())
        if (s.dim() >= 0) ++f[static_cast<std::size_t>(s.dim())];
    return f;
}

std::vector<Simplex> SimplicialComplex::all_simplices(std::size_t max_cells) const
{
    if (is_void()) return {};
    std::set<Simplex> out;
    for (const auto& f : facets_) {
        for (auto& s : f.all_faces()) out.insert(std::move(s));
        if (max_cells && out.size() > max_cells)
            throw SizeBoundError("complex exceeds max cells (" + std::to_string(max_cells) + ")");
    }
    return std::vector<Simplex>(out.begin(), out.end());
}

std::size_t SimplicialComplex::count_simplices() const
{
    return all_simplices().size();
}

SimplicialComplex SimplicialComplex::join(const SimplicialComplex& a, const SimplicialComplex& b)
{
    if (a.is_void() || b.is_void()) return void_complex();
    for (const auto& vi : a.verts_)
        if (b.vtype_.count(vi.id))
            throw InputError("join: vertex id collision at " + std::to_string(vi.id));
    for (int t : a.typeset_)
        if (std::binary_search(b.typeset_.begin(), b.typeset_.end(), t))
            throw InputError("join: vtype collision at " + std::to_string(t));
    std::vector<VertexInfo> verts = a.verts_;
    verts.insert(verts.end(), b.verts_.begin(), b.verts_.end());
    std::vector<Simplex> gens;
    for (const auto& fa : a.facets_)
        for (const auto& fb : b.facets_) gens.push_back(fa.set_union(fb));
    return SimplicialComplex(std::move(verts), std::move(gens));
}

SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b)
{
    std::vector<VertexInfo> verts = a.vertex_infos();
    for (const auto& vi : b.vertex_infos()) verts.push_back(vi);
    std::vector<Simplex> gens = a.facets();
    gens.insert(gens.end(), b.facets().begin(), b.facets().end());
    if (gens.empty()) return SimplicialComplex::void_complex();
    return SimplicialComplex(std::move(verts), std::move(gens));
}

SimplicialComplex complex_intersection(const SimplicialComplex& a, const SimplicialComplex& b)
{
    if (a.is_void() || b.is_void()) return SimplicialComplex::void_complex();
    std::vector<Simplex> gens;
    for (const auto& s : a.all_simplices())
        if (b.contains(s)) gens.push_back(s);
    if (gens.empty()) return SimplicialComplex::void_complex();
    return SimplicialComplex(a.vertex_infos(), std::move(gens));
}

bool is_subcomplex(const SimplicialComplex& a, const SimplicialComplex& b)
{
    for (const auto& f : a.facets())
        if (!b.contains(f)) return false;
    return true;
}

std::vector<std::vector<int>> join_type_blocks(const SimplicialComplex& x)
{
    const auto& types = x.typeset();
    if (types.empty()) return {};
    std::map<int, int> tpos;
    for (std::size_t i = 0; i < types.size(); ++i) tpos[types[i]] = static_cast<int>(i);

    // union-find over types: merge when some cross-type vertex pair spans no edge
    std::vector<int> parent(types.size());
    for (std::size_t i = 0; i < types.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };

    auto ids = x.vertex_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            int ti = x.vtype(ids[i]);
            int tj = x.vtype(ids[j]);
            if (ti == tj) continue;
            if (find(tpos[ti]) == find(tpos[tj])) continue;
            if (!x.contains(Simplex{ids[i], ids[j]}))
                parent[static_cast<std::size_t>(find(tpos[ti]))] = find(tpos[tj]);
        }
    }

    std::map<int, std::vector<int>> blocks;
    for (std::size_t i = 0; i < types.size(); ++i) blocks[find(static_cast<int>(i))].push_back(types[i]);
    std::vector<std::vector<int>> out;
    for (auto& [root, blk] : blocks) out.push_back(blk);
    std::sort(out.begin(), out.end());

    // verify: facets factor as unions of per-block facets
    if (out.size() > 1) {
        std::vector<SimplicialComplex> parts;
        for (const auto& blk : out) {
            std::vector<VertexId> keep;
            for (VertexId v : ids)
                if (std::find(blk.begin(), blk.end(), x.vtype(v)) != blk.end()) keep.push_back(v);
            parts.push_back(x.full_subcomplex(keep));
        }
        std::set<Simplex> expect;
        std::vector<Simplex> acc = {Simplex{}};
        for (const auto& p : parts) {
            std::vector<Simplex> next;
            for (const auto& s : acc)
                for (const auto& f : p.facets()) next.push_back(s.set_union(f));
            acc = std::move(next);
        }
        for (auto& s : acc) expect.insert(std::move(s));
        std::set<Simplex> got(x.facets().begin(), x.facets().end());
        if (expect != got) throw Error("join_type_blocks: factorization check failed");
    }
    return out;
}

}  // namespace hemilab
