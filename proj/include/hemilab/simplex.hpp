#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace hemilab {

using VertexId = int;

/// An abstract simplex: a strictly sorted set of vertex ids. The empty
/// simplex is a valid value and is a face of everything.
class Simplex {
  public:
    Simplex() = default;

    explicit Simplex(std::vector<VertexId> verts) : v_(std::move(verts))
    {
        std::sort(v_.begin(), v_.end());
        v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
    }

    Simplex(std::initializer_list<VertexId> verts) : Simplex(std::vector<VertexId>(verts)) {}

    const std::vector<VertexId>& vertices() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()) - 1; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    bool contains(VertexId v) const
    {
        return std::binary_search(v_.begin(), v_.end(), v);
    }

    /// this ⊆ other
    bool face_of(const Simplex& other) const
    {
        return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
    }

    bool disjoint(const Simplex& other) const
    {
        auto a = v_.begin();
        auto b = other.v_.begin();
        while (a != v_.end() && b != other.v_.end()) {
            if (*a < *b)
                ++a;
            else if (*b < *a)
                ++b;
            else
                return false;
        }
        return true;
    }

    Simplex set_union(const Simplex& other) const
    {
        std::vector<VertexId> out;
        out.reserve(v_.size() + other.v_.size());
        std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                       std::back_inserter(out));
        Simplex s;
        s.v_ = std::move(out);
        return s;
    }

    Simplex set_minus(const Simplex& other) const
    {
        std::vector<VertexId> out;
        std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                            std::back_inserter(out));
        Simplex s;
        s.v_ = std::move(out);
        return s;
    }

    Simplex set_intersection(const Simplex& other) const
    {
        std::vector<VertexId> out;
        std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                              std::back_inserter(out));
        Simplex s;
        s.v_ = std::move(out);
        return s;
    }

    Simplex without_vertex(VertexId v) const
    {
        std::vector<VertexId> out;
        out.reserve(v_.size());
        for (VertexId u : v_)
            if (u != v) out.push_back(u);
        Simplex s;
        s.v_ = std::move(out);
        return s;
    }

    /// All faces including the empty simplex and the simplex itself.
    std::vector<Simplex> all_faces() const
    {
        std::size_t k = v_.size();
        std::vector<Simplex> out;
        out.reserve(std::size_t(1) << k);
        for (std::size_t m = 0; m < (std::size_t(1) << k); ++m) {
            std::vector<VertexId> f;
            for (std::size_t i = 0; i < k; ++i)
                if (m & (std::size_t(1) << i)) f.push_back(v_[i]);
            Simplex s;
            s.v_ = std::move(f);
            out.push_back(std::move(s));
        }
        return out;
    }

    /// Proper faces only (the boundary of the simplex).
    std::vector<Simplex> proper_faces() const
    {
        auto out = all_faces();
        out.pop_back();  // the last mask is the simplex itself
        return out;
    }

    /// Codimension-1 faces, in ascending order of the omitted position.
    std::vector<Simplex> panels() const
    {
        std::vector<Simplex> out;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            Simplex s;
            s.v_ = v_;
            s.v_.erase(s.v_.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(std::move(s));
        }
        return out;
    }

    std::string to_string() const
    {
        std::string s = "{";
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const Simplex& a, const Simplex& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Simplex& a, const Simplex& b) { return a.v_ != b.v_; }

    /// Order by (dimension, lexicographic); deterministic everywhere.
    friend bool operator<(const Simplex& a, const Simplex& b)
    {
        if (a.v_.size() != b.v_.size()) return a.v_.size() < b.v_.size();
        return a.v_ < b.v_;
    }

  private:
    std::vector<VertexId> v_;
};

}  // namespace hemilab
