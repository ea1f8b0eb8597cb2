#include "hemilab/gf.hpp"

#include <algorithm>

namespace hemilab {

bool is_prime(int q)
{
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

int fq_inv(int a, int q)
{
    a %= q;
    if (a < 0) a += q;
    if (a == 0) throw DomainError("fq_inv of zero");
    int t = 0, nt = 1, r = q, nr = a;
    while (nr != 0) {
        int quo = r / nr;
        int tmp = t - quo * nt;
        t = nt;
        nt = tmp;
        tmp = r - quo * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += q;
    return t;
}

std::string Subspace::label() const
{
    std::string s = "<";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += "|";
        for (int c : rows[i]) s += static_cast<char>('0' + c);
    }
    return s + ">";
}

Subspace row_space(int q, int width, std::vector<std::vector<int>> rows)
{
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != width) throw InputError("row_space: bad row width");
        for (auto& c : r) {
            c %= q;
            if (c < 0) c += q;
        }
    }
    int rank = 0;
    for (int col = 0; col < width && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i)
            if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                piv = i;
                break;
            }
        if (piv == -1) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
        int inv = fq_inv(rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)], q);
        for (auto& c : rows[static_cast<std::size_t>(rank)]) c = (c * inv) % q;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank) continue;
            int f = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int cidx = 0; cidx < width; ++cidx) {
                auto& cell = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(cidx)];
                cell = (cell - f * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cidx)]) % q;
                if (cell < 0) cell += q;
            }
        }
        ++rank;
    }
    rows.resize(static_cast<std::size_t>(rank));
    Subspace s;
    s.q = q;
    s.width = width;
    s.rows = std::move(rows);
    return s;
}

bool in_span(const std::vector<int>& v, const Subspace& s)
{
    std::vector<int> w = v;
    for (auto& c : w) {
        c %= s.q;
        if (c < 0) c += s.q;
    }
    for (const auto& r : s.rows) {
        int lead = -1;
        for (int c = 0; c < s.width; ++c)
            if (r[static_cast<std::size_t>(c)] != 0) {
                lead = c;
                break;
            }
        int f = w[static_cast<std::size_t>(lead)];
        if (f == 0) continue;
        for (int c = 0; c < s.width; ++c) {
            w[static_cast<std::size_t>(c)] =
                (w[static_cast<std::size_t>(c)] - f * r[static_cast<std::size_t>(c)]) % s.q;
            if (w[static_cast<std::size_t>(c)] < 0) w[static_cast<std::size_t>(c)] += s.q;
        }
    }
    return std::all_of(w.begin(), w.end(), [](int c) { return c == 0; });
}

bool subspace_leq(const Subspace& u, const Subspace& v)
{
    if (u.dim() > v.dim()) return false;
    for (const auto& r : u.rows)
        if (!in_span(r, v)) return false;
    return true;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v)
{
    std::vector<std::vector<int>> rows = u.rows;
    rows.insert(rows.end(), v.rows.begin(), v.rows.end());
    return row_space(u.q, u.width, std::move(rows));
}

Subspace subspace_intersection(const Subspace& u, const Subspace& v)
{
    // Zassenhaus: RREF of [U|U; V|0] — rows with zero left block carry an
    // intersection basis on the right.
    int w = u.width;
    std::vector<std::vector<int>> big;
    for (const auto& r : u.rows) {
        std::vector<int> row(static_cast<std::size_t>(2 * w), 0);
        for (int c = 0; c < w; ++c) {
            row[static_cast<std::size_t>(c)] = r[static_cast<std::size_t>(c)];
            row[static_cast<std::size_t>(w + c)] = r[static_cast<std::size_t>(c)];
        }
        big.push_back(std::move(row));
    }
    for (const auto& r : v.rows) {
        std::vector<int> row(static_cast<std::size_t>(2 * w), 0);
        for (int c = 0; c < w; ++c) row[static_cast<std::size_t>(c)] = r[static_cast<std::size_t>(c)];
        big.push_back(std::move(row));
    }
    Subspace zs = row_space(u.q, 2 * w, std::move(big));
    std::vector<std::vector<int>> inter;
    for (const auto& r : zs.rows) {
        bool left_zero = true;
        for (int c = 0; c < w; ++c)
            if (r[static_cast<std::size_t>(c)] != 0) {
                left_zero = false;
                break;
            }
        if (left_zero)
            inter.emplace_back(r.begin() + w, r.end());
    }
    return row_space(u.q, w, std::move(inter));
}

std::vector<Subspace> all_subspaces(int q, int width, int k)
{
    if (k < 0 || k > width) return {};
    std::vector<Subspace> out;

    // choose pivot columns, then fill the free cells in mixed-radix order
    std::vector<int> piv(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) piv[static_cast<std::size_t>(i)] = i;
    for (;;) {
        // free cells: entry (i, c) with c > piv[i], c not a pivot column
        std::vector<std::pair<int, int>> free_cells;
        for (int i = 0; i < k; ++i)
            for (int c = piv[static_cast<std::size_t>(i)] + 1; c < width; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end())
                    free_cells.emplace_back(i, c);

        std::vector<int> digits(free_cells.size(), 0);
        for (;;) {
            std::vector<std::vector<int>> rows(
                static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(width), 0));
            for (int i = 0; i < k; ++i)
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] = 1;
            for (std::size_t d = 0; d < free_cells.size(); ++d)
                rows[static_cast<std::size_t>(free_cells[d].first)]
                    [static_cast<std::size_t>(free_cells[d].second)] = digits[d];
            Subspace s;
            s.q = q;
            s.width = width;
            s.rows = std::move(rows);
            out.push_back(std::move(s));

            std::size_t pos = 0;
            while (pos < digits.size()) {
                if (++digits[pos] < q) break;
                digits[pos] = 0;
                ++pos;
            }
            if (pos == digits.size()) break;
        }

        int i = k - 1;
        while (i >= 0 && piv[static_cast<std::size_t>(i)] == width - k + i) --i;
        if (i < 0) break;
        ++piv[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hemilab
