#pragma once

#include "ddcalc/abelian_group.hpp"
#include "ddcalc/complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace ddc {

/// A space given by its cohomological data instead of a triangulation.
///
/// Matrices act on coordinates: column j is the image of generator j of the source.
///   rho[p]  : H^p(Z)   -> H^p(Z/2)
///   beta[p] : H^p(Z/2) -> H^{p+1}(Z)
///   sq2[p]  : H^p(Z/2) -> H^{p+2}(Z/2)
///   cup     : (p, q, ring) -> table[i][j] = coordinates of g_i u g_j in H^{p+q}
class AlgebraicModel {
public:
    std::string name;
    int dim = 0;
    /// Dimensions of the cells of a CW structure, when known.
    std::vector<int> cells;

    const FgAbGroup& integral(int p) const;
    const FgAbGroup& mod2(int p) const;
    FgAbGroup localized(int p, const PrimeSet& primes) const;

    /// Zero matrix of the right shape when the model lists none.
    SparseMatrix rho(int p) const;
    SparseMatrix beta(int p) const;
    SparseMatrix sq2(int p) const;
    /// d_3 = beta o Sq^2 o rho : H^p(Z) -> H^{p+3}(Z), reduced into the target.
    SparseMatrix d3(int p) const;
    /// Coordinates of g_i u g_j in H^{p+q}; zero when the table is absent.
    Coords cup(int p, int q, bool mod2, std::size_t i, std::size_t j) const;

    /// Checks shapes, torsion compatibility, beta o rho = 0, Sq^2 = 0 below degree 2, and
    /// graded symmetry of square cup tables. Throws ParseError.
    void validate() const;

private:
    friend AlgebraicModel parse_model(const std::string& text);
    std::map<int, FgAbGroup> h_;
    std::map<int, FgAbGroup> h2_;
    std::map<int, SparseMatrix> rho_, beta_, sq2_;
    struct CupTable {
        std::vector<std::vector<Coords>> table;
    };
    std::map<std::tuple<int, int, bool>, CupTable> cup_;
};

AlgebraicModel parse_model(const std::string& text);
AlgebraicModel load_model_file(const std::string& path);
/// True if the JSON text looks like a model (has "H") rather than a complex.
bool is_model_text(const std::string& text);

}  // namespace ddc
