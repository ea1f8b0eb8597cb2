#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hemilab/complex.hpp"
#include "hemilab/util.hpp"

namespace hemilab {

/// Dense integer matrix, row-major.
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    BigInt& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const BigInt& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static IntMat identity(int n);
    IntMat mul(const IntMat& other) const;
    friend bool operator==(const IntMat& x, const IntMat& y)
    {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// Smith normal form result. The invariant factors are positive and divide
/// in sequence. When transforms are requested, left * input * right == D
/// (D diagonal with the invariant factors) and left_inv * D * right_inv
/// reassembles the input; all four are unimodular.
struct SnfResult {
    std::vector<BigInt> factors;
    std::optional<IntMat> left, right, left_inv, right_inv;
    int rank() const { return static_cast<int>(factors.size()); }
};

/// Unit-pivot elimination front end followed by general pivoting on the
/// residual; greedy smallest-pivot selection keeps entries small.
SnfResult smith_normal_form(IntMat m, bool with_transforms = false);

/// Ordered simplex bases per dimension and integer boundary matrices with
/// orientation from ascending vertex order; dimension -1 (the empty simplex)
/// is included, so homology computed from this complex is reduced.
struct ChainComplex {
    int top_dim = -2;
    std::vector<std::vector<Simplex>> basis;  // basis[k+1] = k-simplices
    std::vector<IntMat> boundary;             // boundary[k+1] : C_k -> C_{k-1}

    static ChainComplex from_complex(const SimplicialComplex& x, std::size_t max_cells = 0);
    const std::vector<Simplex>& basis_of(int k) const
    {
        return basis[static_cast<std::size_t>(k + 1)];
    }
    const IntMat& boundary_of(int k) const
    {
        return boundary[static_cast<std::size_t>(k + 1)];
    }
};

/// Reduced Betti numbers and torsion coefficients per dimension (from -1 up).
struct HomologyProfile {
    int top_dim = -2;
    std::vector<long long> betti;                    // betti[k+1] = b~_k
    std::vector<std::vector<BigInt>> torsion;        // torsion[k+1]

    long long betti_of(int k) const
    {
        if (k + 1 < 0 || k + 1 >= static_cast<int>(betti.size())) return 0;
        return betti[static_cast<std::size_t>(k + 1)];
    }
    const std::vector<BigInt>& torsion_of(int k) const
    {
        static const std::vector<BigInt> none;
        if (k + 1 < 0 || k + 1 >= static_cast<int>(torsion.size())) return none;
        return torsion[static_cast<std::size_t>(k + 1)];
    }
    bool trivial() const
    {
        for (auto b : betti)
            if (b != 0) return false;
        for (const auto& t : torsion)
            if (!t.empty()) return false;
        return true;
    }
    std::string to_string() const;
};

HomologyProfile reduced_homology(const SimplicialComplex& x, std::size_t max_cells = 0);

/// n-dimensional with vanishing reduced homology below n and torsion-free
/// top homology (possibly zero). n = -1 accepts exactly the empty complex.
bool is_homology_spherical(const SimplicialComplex& x, int n, std::size_t max_cells = 0);

enum class Pi1Status { TRIVIAL, UNKNOWN, SKIPPED };

struct ConnectivityVerdict {
    int dim = -2;
    bool homology_spherical = false;
    bool noncontractible = false;   // nonzero top reduced homology
    bool homotopy_cm = false;       // every link spherical of matching dim
    Pi1Status pi1 = Pi1Status::SKIPPED;
    HomologyProfile profile;
    std::vector<std::pair<Simplex, std::string>> cm_failures;
};

/// Runs the spherical test on the link of every simplex (including ∅) and
/// aggregates. jobs > 1 fans the per-link work out across threads.
ConnectivityVerdict homotopy_cm_verdict(const SimplicialComplex& x, int jobs = 1,
                                        std::size_t max_cells = 0);

/// Edge-path group presentation from a spanning tree of the 1-skeleton with
/// one relation per triangle, then bounded elimination: a generator occurring
/// exactly once in some relation is expressed from it and substituted away,
/// cheapest defining relation first, under a global size budget. Torsion
/// relations (g^k = 1) block elimination and the verdict stays UNKNOWN.
/// Returns TRIVIAL only when every generator has been eliminated.
Pi1Status pi1_trivial(const SimplicialComplex& x, std::size_t max_rounds = 10000);

}  // namespace hemilab
