#include "hemilab/homology.hpp"

#include <algorithm>
#include <list>
#include <sstream>

namespace hemilab {

IntMat IntMat::identity(int n)
{
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::mul(const IntMat& other) const
{
    if (cols != other.rows) throw Error("IntMat::mul: shape mismatch");
    IntMat out(rows, other.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const BigInt& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < other.cols; ++j) out.at(i, j) += v * other.at(k, j);
        }
    return out;
}

namespace {

struct SnfWork {
    IntMat m;
    bool track;
    IntMat left, right, left_inv, right_inv;

    explicit SnfWork(IntMat mm, bool t) : m(std::move(mm)), track(t)
    {
        if (track) {
            left = IntMat::identity(m.rows);
            left_inv = IntMat::identity(m.rows);
            right = IntMat::identity(m.cols);
            right_inv = IntMat::identity(m.cols);
        }
    }

    void row_swap(int i, int j)
    {
        if (i == j) return;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
        if (track) {
            for (int c = 0; c < m.rows; ++c) std::swap(left.at(i, c), left.at(j, c));
            for (int r = 0; r < m.rows; ++r) std::swap(left_inv.at(r, i), left_inv.at(r, j));
        }
    }
    void col_swap(int i, int j)
    {
        if (i == j) return;
        for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
        if (track) {
            for (int r = 0; r < m.cols; ++r) std::swap(right.at(r, i), right.at(r, j));
            for (int c = 0; c < m.cols; ++c) std::swap(right_inv.at(i, c), right_inv.at(j, c));
        }
    }
    // row[i] += k * row[j]
    void row_add(int i, int j, const BigInt& k)
    {
        if (k == 0) return;
        for (int c = 0; c < m.cols; ++c) m.at(i, c) += k * m.at(j, c);
        if (track) {
            for (int c = 0; c < m.rows; ++c) left.at(i, c) += k * left.at(j, c);
            for (int r = 0; r < m.rows; ++r) left_inv.at(r, j) -= k * left_inv.at(r, i);
        }
    }
    // col[i] += k * col[j]
    void col_add(int i, int j, const BigInt& k)
    {
        if (k == 0) return;
        for (int r = 0; r < m.rows; ++r) m.at(r, i) += k * m.at(r, j);
        if (track) {
            for (int r = 0; r < m.cols; ++r) right.at(r, i) += k * right.at(r, j);
            for (int c = 0; c < m.cols; ++c) right_inv.at(j, c) -= k * right_inv.at(i, c);
        }
    }
    void row_negate(int i)
    {
        for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
        if (track) {
            for (int c = 0; c < m.rows; ++c) left.at(i, c) = -left.at(i, c);
            for (int r = 0; r < m.rows; ++r) left_inv.at(r, i) = -left_inv.at(r, i);
        }
    }
};

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace

SnfResult smith_normal_form(IntMat input, bool with_transforms)
{
    SnfWork w(std::move(input), with_transforms);
    IntMat& m = w.m;
    const int n = std::min(m.rows, m.cols);
    int s = 0;

    while (s < n) {
        // pivot selection: any remaining ±1 first, else smallest |entry|
        int pi = -1, pj = -1;
        BigInt best;
        for (int i = s; i < m.rows && pi == -1; ++i)
            for (int j = s; j < m.cols; ++j)
                if (abs_big(m.at(i, j)) == 1) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == -1) {
            for (int i = s; i < m.rows; ++i)
                for (int j = s; j < m.cols; ++j) {
                    const BigInt& v = m.at(i, j);
                    if (v == 0) continue;
                    BigInt av = abs_big(v);
                    if (pi == -1 || av < best) {
                        best = av;
                        pi = i;
                        pj = j;
                    }
                }
        }
        if (pi == -1) break;  // remaining block is zero
        w.row_swap(s, pi);
        w.col_swap(s, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            // clear the pivot column
            for (int i = s + 1; i < m.rows; ++i) {
                if (m.at(i, s) == 0) continue;
                BigInt q = m.at(i, s) / m.at(s, s);
                w.row_add(i, s, -q);
                if (m.at(i, s) != 0) {
                    // remainder smaller than the pivot: promote it
                    w.row_swap(s, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            // clear the pivot row
            for (int j = s + 1; j < m.cols; ++j) {
                if (m.at(s, j) == 0) continue;
                BigInt q = m.at(s, j) / m.at(s, s);
                w.col_add(j, s, -q);
                if (m.at(s, j) != 0) {
                    w.col_swap(s, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility fixup on the lower-right block
            bool fixed = true;
            for (int i = s + 1; i < m.rows && fixed; ++i)
                for (int j = s + 1; j < m.cols; ++j)
                    if (m.at(i, j) % m.at(s, s) != 0) {
                        w.row_add(s, i, 1);
                        fixed = false;
                        clean = false;
                        break;
                    }
        }
        if (m.at(s, s) < 0) w.row_negate(s);
        ++s;
    }

    SnfResult out;
    for (int i = 0; i < s; ++i) out.factors.push_back(m.at(i, i));
    for (std::size_t i = 1; i < out.factors.size(); ++i)
        if (out.factors[i] % out.factors[i - 1] != 0)
            throw Error("smith_normal_form: invariant factors do not divide in sequence");
    if (with_transforms) {
        out.left = std::move(w.left);
        out.right = std::move(w.right);
        out.left_inv = std::move(w.left_inv);
        out.right_inv = std::move(w.right_inv);
    }
    return out;
}

ChainComplex ChainComplex::from_complex(const SimplicialComplex& x, std::size_t max_cells)
{
    ChainComplex cc;
    if (x.is_void()) return cc;
    auto simplices = x.all_simplices(max_cells);
    cc.top_dim = x.dim();

    cc.basis.resize(static_cast<std::size_t>(cc.top_dim) + 2);
    for (const auto& s : simplices) cc.basis[static_cast<std::size_t>(s.dim() + 1)].push_back(s);

    std::vector<std::map<Simplex, int>> index(cc.basis.size());
    for (std::size_t k = 0; k < cc.basis.size(); ++k)
        for (std::size_t i = 0; i < cc.basis[k].size(); ++i) index[k][cc.basis[k][i]] = static_cast<int>(i);

    cc.boundary.resize(cc.basis.size());
    for (int k = 0; k <= cc.top_dim; ++k) {
        const auto& rows = cc.basis[static_cast<std::size_t>(k)];      // (k-1)-simplices
        const auto& cols = cc.basis[static_cast<std::size_t>(k) + 1];  // k-simplices
        IntMat b(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto& vs = cols[j].vertices();
            for (std::size_t drop = 0; drop < vs.size(); ++drop) {
                std::vector<VertexId> face;
                for (std::size_t i = 0; i < vs.size(); ++i)
                    if (i != drop) face.push_back(vs[i]);
                int r = index[static_cast<std::size_t>(k)].at(Simplex(std::move(face)));
                b.at(r, static_cast<int>(j)) += (drop % 2 == 0) ? 1 : -1;
            }
        }
        cc.boundary[static_cast<std::size_t>(k) + 1] = std::move(b);
    }
    return cc;
}

std::string HomologyProfile::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (int k = -1; k <= top_dim; ++k) {
        if (k > -1) os << ", ";
        os << "b~" << k << "=" << betti_of(k);
        const auto& t = torsion_of(k);
        if (!t.empty()) {
            os << " T(";
            for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
            os << ")";
        }
    }
    os << "]";
    return os.str();
}

HomologyProfile reduced_homology(const SimplicialComplex& x, std::size_t max_cells)
{
    HomologyProfile hp;
    if (x.is_void()) return hp;
    auto cc = ChainComplex::from_complex(x, max_cells);
    hp.top_dim = cc.top_dim;
    int levels = cc.top_dim + 2;  // dims -1..top
    hp.betti.assign(static_cast<std::size_t>(levels), 0);
    hp.torsion.assign(static_cast<std::size_t>(levels), {});

    // rank and factor data of each boundary map
    std::vector<SnfResult> snf(static_cast<std::size_t>(levels + 1));
    for (int k = 0; k <= cc.top_dim; ++k)
        snf[static_cast<std::size_t>(k) + 1] = smith_normal_form(cc.boundary_of(k));

    for (int k = -1; k <= cc.top_dim; ++k) {
        long long nk = static_cast<long long>(cc.basis_of(k).size());
        long long rk = (k >= 0) ? snf[static_cast<std::size_t>(k) + 1].rank() : 0;
        long long rk1 = (k + 1 <= cc.top_dim) ? snf[static_cast<std::size_t>(k) + 2].rank() : 0;
        hp.betti[static_cast<std::size_t>(k) + 1] = nk - rk - rk1;
        if (k + 1 <= cc.top_dim)
            for (const auto& d : snf[static_cast<std::size_t>(k) + 2].factors)
                if (d > 1) hp.torsion[static_cast<std::size_t>(k) + 1].push_back(d);
    }

    // Euler characteristic bookkeeping: Σ(-1)^k f_k - 1 == Σ(-1)^k b~_k over k>=0,
    // with the -1 absorbed by b~_{-1} for the empty complex.
    long long chi_f = 0, chi_b = 0;
    for (int k = -1; k <= cc.top_dim; ++k) {
        long long sgn = (k % 2 == 0) ? 1 : -1;
        chi_f += sgn * static_cast<long long>(cc.basis_of(k).size());
        chi_b += sgn * hp.betti_of(k);
    }
    if (chi_f != chi_b) throw Error("reduced_homology: Euler characteristic inconsistency");
    return hp;
}

bool is_homology_spherical(const SimplicialComplex& x, int n, std::size_t max_cells)
{
    if (x.is_void()) return false;
    if (x.dim() != n) return false;
    if (n == -1) return x.is_empty_complex();
    auto hp = reduced_homology(x, max_cells);
    for (int k = -1; k < n; ++k) {
        if (hp.betti_of(k) != 0) return false;
        if (!hp.torsion_of(k).empty()) return false;
    }
    return hp.torsion_of(n).empty();
}

ConnectivityVerdict homotopy_cm_verdict(const SimplicialComplex& x, int jobs,
                                        std::size_t max_cells)
{
    ConnectivityVerdict v;
    if (x.is_void()) return v;
    v.dim = x.dim();
    v.profile = reduced_homology(x, max_cells);
    v.homology_spherical = is_homology_spherical(x, v.dim, max_cells);
    v.noncontractible = v.profile.betti_of(v.dim) != 0 || !v.profile.torsion_of(v.dim).empty();

    auto simplices = x.all_simplices(max_cells);
    std::vector<std::string> fail(simplices.size());
    std::vector<char> bad(simplices.size(), 0);
    parallel_for(simplices.size(), jobs, [&](std::size_t i) {
        const Simplex& s = simplices[i];
        auto lk = x.link(s);
        int want = v.dim - s.dim() - 1;
        if (!is_homology_spherical(lk, want, max_cells)) {
            bad[i] = 1;
            fail[i] = "link of " + s.to_string() + " is not " + std::to_string(want) +
                      "-spherical: " + reduced_homology(lk, max_cells).to_string();
        }
    });
    for (std::size_t i = 0; i < simplices.size(); ++i)
        if (bad[i]) v.cm_failures.emplace_back(simplices[i], fail[i]);
    v.homotopy_cm = v.cm_failures.empty();

    if (v.dim >= 2 && v.profile.betti_of(0) == 0)
        v.pi1 = pi1_trivial(x);
    else
        v.pi1 = Pi1Status::SKIPPED;
    return v;
}

namespace {

// presentation words: generator ids, sign by ±(id+1)
using Word = std::vector<int>;

void free_reduce(Word& w)
{
    Word out;
    for (int g : w) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    w = std::move(out);
}

void cyclic_reduce(Word& w)
{
    free_reduce(w);
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
        free_reduce(w);
    }
}

}  // namespace

Pi1Status pi1_trivial(const SimplicialComplex& x, std::size_t max_rounds)
{
    if (x.is_void() || x.is_empty_complex()) return Pi1Status::SKIPPED;
    if (x.components() != 1) return Pi1Status::SKIPPED;

    // spanning tree over the sorted edge list
    auto simplices = x.all_simplices();
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& s : simplices)
        if (s.dim() == 1) edges.emplace_back(s.vertices()[0], s.vertices()[1]);

    std::map<VertexId, VertexId> parent;
    std::function<VertexId(VertexId)> find = [&](VertexId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (VertexId v : x.vertex_ids()) parent[v] = v;

    std::map<std::pair<VertexId, VertexId>, int> gen_of_edge;  // non-tree edges
    int gens = 0;
    for (const auto& [a, b] : edges) {
        VertexId ra = find(a), rb = find(b);
        if (ra != rb)
            parent[ra] = rb;
        else
            gen_of_edge[{a, b}] = gens++;
    }
    if (gens == 0) return Pi1Status::TRIVIAL;

    auto edge_word = [&](VertexId a, VertexId b) -> Word {
        // +g for (a<b) traversed ascending, inverse otherwise; tree edges vanish
        bool fwd = a < b;
        auto key = fwd ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = gen_of_edge.find(key);
        if (it == gen_of_edge.end()) return {};
        return {fwd ? (it->second + 1) : -(it->second + 1)};
    };

    std::list<Word> rels;
    for (const auto& s : simplices) {
        if (s.dim() != 2) continue;
        VertexId a = s.vertices()[0], b = s.vertices()[1], c = s.vertices()[2];
        Word w;
        for (int g : edge_word(a, b)) w.push_back(g);
        for (int g : edge_word(b, c)) w.push_back(g);
        for (int g : edge_word(a, c)) w.push_back(-g);
        cyclic_reduce(w);
        if (!w.empty()) rels.push_back(std::move(w));
    }

    std::vector<char> alive(static_cast<std::size_t>(gens), 1);
    auto substitute = [&](int g, const Word& repl) {
        // replace generator g (1-based) by repl everywhere
        for (auto& r : rels) {
            Word out;
            for (int s : r) {
                if (s == g)
                    out.insert(out.end(), repl.begin(), repl.end());
                else if (s == -g)
                    for (auto it = repl.rbegin(); it != repl.rend(); ++it) out.push_back(-*it);
                else
                    out.push_back(s);
            }
            cyclic_reduce(out);
            r = std::move(out);
        }
        alive[static_cast<std::size_t>(g - 1)] = 0;
    };

    // a generator occurring exactly once in a relation is defined by it and
    // can be eliminated everywhere; shorter defining relations go first and a
    // total-size budget guards against blowup
    auto eliminate_from = [&](std::list<Word>::iterator it, int g) {
        Word r = *it;
        rels.erase(it);
        // rotate the occurrence of ±g to the front
        std::size_t pos = 0;
        while (std::abs(r[pos]) != g) ++pos;
        std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos), r.end());
        // g^s · w = 1  =>  g = (w^{-1})^s
        int sign = r[0] > 0 ? 1 : -1;
        Word tail(r.begin() + 1, r.end());
        Word repl;
        for (auto rit = tail.rbegin(); rit != tail.rend(); ++rit) repl.push_back(-*rit);
        if (sign < 0) {
            Word inv;
            for (auto rit = repl.rbegin(); rit != repl.rend(); ++rit) inv.push_back(-*rit);
            repl = std::move(inv);
        }
        substitute(g, repl);
    };

    const std::size_t total_budget = 200000;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        rels.remove_if([](const Word& w) { return w.empty(); });

        std::size_t total = 0;
        for (const auto& r : rels) total += r.size();
        if (total > total_budget) break;

        // the cheapest available elimination: a generator with exactly one
        // occurrence in some relation, ranked by defining-relation length
        std::map<int, int> occurrences;
        for (const auto& r : rels)
            for (int s : r) ++occurrences[std::abs(s)];

        std::list<Word>::iterator best = rels.end();
        int best_gen = 0;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (auto it = rels.begin(); it != rels.end(); ++it) {
            std::map<int, int> in_rel;
            for (int s : *it) ++in_rel[std::abs(s)];
            for (const auto& [g, cnt] : in_rel) {
                if (cnt != 1) continue;
                std::size_t cost = it->size() * static_cast<std::size_t>(occurrences[g]);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = it;
                    best_gen = g;
                }
            }
        }
        if (best == rels.end()) break;
        eliminate_from(best, best_gen);
    }
    rels.remove_if([](const Word& w) { return w.empty(); });

    bool all_dead = std::all_of(alive.begin(), alive.end(), [](char c) { return !c; });
    return all_dead ? Pi1Status::TRIVIAL : Pi1Status::UNKNOWN;
}

}  // namespace hemilab
