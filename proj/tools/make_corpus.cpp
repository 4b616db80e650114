// Writes the triangulated part of the corpus: point, spheres, RP^2 and the products.
#include "ddcalc/complex.hpp"

#include <fstream>
#include <iostream>

using namespace ddc;

namespace {

void write(const std::string& dir, const std::string& file, SimplicialComplex x, const std::string& name)
{
    x = SimplicialComplex::from_simplices([&] {
        std::vector<Simplex> all;
        for (int p = 0; p <= x.dimension(); ++p)
            for (const auto& s : x.simplices(p))
                all.push_back(s);
        return all;
    }(), name);
    std::ofstream out(dir + "/" + file);
    out << dump_complex(x) << "\n";
    std::cout << file << ": dim " << x.dimension() << ", " << x.count(x.dimension()) << " top simplices\n";
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string dir = argc > 1 ? argv[1] : "corpus";
    const SimplicialComplex point = SimplicialComplex::from_simplices({{0}}, "point");
    write(dir, "point.json", point, "point");
    for (int n = 1; n <= 6; ++n)
        write(dir, "s" + std::to_string(n) + ".json", simplex_boundary(n + 1), "S" + std::to_string(n));

    const SimplicialComplex rp2 = SimplicialComplex::from_simplices(
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5}, {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}},
        "RP2");
    write(dir, "rp2.json", rp2, "RP2");

    const SimplicialComplex s1 = simplex_boundary(2);
    const SimplicialComplex s2 = simplex_boundary(3);
    const SimplicialComplex t2 = product_complex(s1, s1);
    write(dir, "t2.json", t2, "T2");
    write(dir, "t3.json", product_complex(t2, s1), "T3");
    write(dir, "s1xs2.json", product_complex(s1, s2), "S1xS2");
    write(dir, "rp2xs1.json", product_complex(rp2, s1), "RP2xS1");
    write(dir, "rp2xrp2.json", product_complex(rp2, rp2), "RP2xRP2");
    return 0;
}
