#pragma once

#include "ddcalc/homology.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddc {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;  // strictly increasing

/// Raised for malformed complex or model input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite ordered simplicial complex, stored face-closed. Simplices of each dimension
/// are kept in lexicographic order; a simplex is addressed by (dimension, index).
class SimplicialComplex {
public:
    /// Face closure of the given simplices; each must be strictly increasing.
    static SimplicialComplex from_simplices(const std::vector<Simplex>& simplices, std::string name = {});
    /// The empty subcomplex (valid only as the A of a pair).
    static SimplicialComplex empty() { return SimplicialComplex(); }

    const std::string& name() const { return name_; }
    bool is_empty() const { return by_dim_.empty(); }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t count(int p) const { return p < 0 || p > dimension() ? 0 : by_dim_[p].size(); }
    const std::vector<Simplex>& simplices(int p) const;
    const Simplex& simplex(int p, std::size_t i) const { return by_dim_.at(p).at(i); }
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }
    /// Largest vertex label + 1.
    std::size_t vertex_bound() const;
    Vertex base_vertex() const { return by_dim_.at(0).front()[0]; }

    long euler_characteristic() const;
    bool is_subcomplex_of(const SimplicialComplex& x) const;
    /// Content hash of the canonical simplex list (FNV-1a).
    std::uint64_t fingerprint() const;

private:
    std::string name_;
    std::vector<std::vector<Simplex>> by_dim_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Parses {"name": ..., "simplices": [[...], ...], "vertex_count": n?}.
SimplicialComplex load_complex(const std::string& text);
SimplicialComplex load_complex_file(const std::string& path);
std::string dump_complex(const SimplicialComplex& x);

SimplicialComplex skeleton(const SimplicialComplex& x, int i);
/// The single vertex v of x as a subcomplex.
SimplicialComplex vertex_subcomplex(const SimplicialComplex& x, Vertex v);
/// Staircase triangulation of |X| x |Y|; vertex (x, y) becomes x * Y.vertex_bound() + y.
SimplicialComplex product_complex(const SimplicialComplex& x, const SimplicialComplex& y);
/// Boundary of the standard n-simplex on vertices 0..n (a sphere of dimension n - 1).
SimplicialComplex simplex_boundary(int n);

/// Cells of X outside A, per degree, as indices into X.simplices(p).
struct RelativeCells {
    std::vector<std::vector<std::size_t>> cells;
    std::vector<std::vector<std::size_t>> position;  // X index -> cell index, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

RelativeCells relative_cells(const SimplicialComplex& x, const SimplicialComplex& a);

/// Cochains of (X, A) over `ring`; degrees 0..dim X. Throws std::invalid_argument if A is
/// not a subcomplex of X.
CochainComplexPresentation relative_cochain_complex(const SimplicialComplex& x, const SimplicialComplex& a,
                                                    const CoefficientRing& ring);

}  // namespace ddc
