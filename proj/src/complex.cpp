#include "ddcalc/complex.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ddc {

namespace {

void add_faces(const Simplex& s, std::vector<std::set<Simplex>>& out)
{
    const std::size_t n = s.size();
    // every nonempty subset, by bitmask
    if (n > 20)
        throw ParseError("simplex too large");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                f.push_back(s[i]);
        out[f.size() - 1].insert(std::move(f));
    }
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<Simplex>& simplices, std::string name)
{
    std::size_t top = 0;
    for (const auto& s : simplices) {
        if (s.empty())
            throw ParseError("empty simplex");
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i - 1] >= s[i])
                throw ParseError("simplex vertices must be strictly increasing");
        top = std::max(top, s.size());
    }
    std::vector<std::set<Simplex>> faces(top);
    for (const auto& s : simplices)
        add_faces(s, faces);
    SimplicialComplex x;
    x.name_ = std::move(name);
    for (auto& level : faces)
        x.by_dim_.emplace_back(level.begin(), level.end());
    return x;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const
{
    static const std::vector<Simplex> none;
    return p < 0 || p > dimension() ? none : by_dim_[p];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
    if (s.empty() || static_cast<int>(s.size()) - 1 > dimension())
        return std::nullopt;
    const auto& level = by_dim_[s.size() - 1];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s)
        return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
}

std::size_t SimplicialComplex::vertex_bound() const
{
    return is_empty() ? 0 : by_dim_[0].back()[0] + 1;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (int p = 0; p <= dimension(); ++p)
        chi += (p % 2 ? -1 : 1) * static_cast<long>(count(p));
    return chi;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& x) const
{
    for (int p = 0; p <= dimension(); ++p)
        for (const auto& s : by_dim_[p])
            if (!x.contains(s))
                return false;
    return true;
}

std::uint64_t SimplicialComplex::fingerprint() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h ^= (v >> (8 * k)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    for (const auto& level : by_dim_) {
        mix(level.size());
        for (const auto& s : level)
            for (Vertex v : s)
                mix(v);
    }
    return h;
}

SimplicialComplex load_complex(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("simplices") || !j["simplices"].is_array())
        throw ParseError("complex file needs a \"simplices\" array");
    std::optional<long long> bound;
    if (j.contains("vertex_count")) {
        if (!j["vertex_count"].is_number_integer())
            throw ParseError("vertex_count must be an integer");
        bound = j["vertex_count"].get<long long>();
    }
    std::vector<Simplex> simplices;
    for (const auto& js : j["simplices"]) {
        if (!js.is_array())
            throw ParseError("each simplex must be an array of vertex indices");
        Simplex s;
        for (const auto& v : js) {
            if (!v.is_number_integer())
                throw ParseError("vertex indices must be integers");
            const long long k = v.get<long long>();
            if (k < 0 || (bound && k >= *bound) || k > 0xffffffffLL)
                throw ParseError("vertex index out of range: " + std::to_string(k));
            s.push_back(static_cast<Vertex>(k));
        }
        simplices.push_back(std::move(s));
    }
    if (simplices.empty())
        throw ParseError("empty simplex list");
    std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
    return SimplicialComplex::from_simplices(simplices, std::move(name));
}

SimplicialComplex load_complex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_complex(ss.str());
}

std::string dump_complex(const SimplicialComplex& x)
{
    // maximal faces only
    std::vector<Simplex> maximal;
    for (int p = x.dimension(); p >= 0; --p)
        for (const auto& s : x.simplices(p)) {
            bool covered = false;
            for (const auto& m : maximal)
                if (std::includes(m.begin(), m.end(), s.begin(), s.end())) {
                    covered = true;
                    break;
                }
            if (!covered)
                maximal.push_back(s);
        }
    std::sort(maximal.begin(), maximal.end());
    nlohmann::json j;
    if (!x.name().empty())
        j["name"] = x.name();
    j["simplices"] = maximal;
    return j.dump();
}

SimplicialComplex skeleton(const SimplicialComplex& x, int i)
{
    std::vector<Simplex> s;
    for (int p = 0; p <= std::min(i, x.dimension()); ++p)
        for (const auto& t : x.simplices(p))
            s.push_back(t);
    return SimplicialComplex::from_simplices(s, x.name());
}

SimplicialComplex vertex_subcomplex(const SimplicialComplex& x, Vertex v)
{
    if (!x.contains({v}))
        throw std::invalid_argument("vertex not in complex");
    return SimplicialComplex::from_simplices({{v}});
}

SimplicialComplex product_complex(const SimplicialComplex& x, const SimplicialComplex& y)
{
    const Vertex ny = static_cast<Vertex>(y.vertex_bound());
    auto maximal = [](const SimplicialComplex& c) {
        std::vector<Simplex> out;
        for (int p = c.dimension(); p >= 0; --p)
            for (const auto& s : c.simplices(p)) {
                bool covered = false;
                for (const auto& m : out)
                    if (m.size() > s.size() && std::includes(m.begin(), m.end(), s.begin(), s.end())) {
                        covered = true;
                        break;
                    }
                if (!covered)
                    out.push_back(s);
            }
        return out;
    };
    std::vector<Simplex> cells;
    for (const auto& s : maximal(x))
        for (const auto& t : maximal(y)) {
            const std::size_t p = s.size() - 1, q = t.size() - 1;
            // monotone lattice paths from (0,0) to (p,q): choose which of the p+q steps move in x
            std::vector<bool> steps(p + q, false);
            std::fill(steps.begin(), steps.begin() + p, true);
            std::sort(steps.begin(), steps.end());
            do {
                Simplex c;
                std::size_t i = 0, j = 0;
                c.push_back(s[i] * ny + t[j]);
                for (bool in_x : steps) {
                    in_x ? ++i : ++j;
                    c.push_back(s[i] * ny + t[j]);
                }
                cells.push_back(std::move(c));
            } while (std::next_permutation(steps.begin(), steps.end()));
        }
    std::string name = x.name().empty() || y.name().empty() ? "" : x.name() + "x" + y.name();
    return SimplicialComplex::from_simplices(cells, std::move(name));
}

SimplicialComplex simplex_boundary(int n)
{
    std::vector<Simplex> facets;
    for (int skip = 0; skip <= n; ++skip) {
        Simplex s;
        for (int v = 0; v <= n; ++v)
            if (v != skip)
                s.push_back(static_cast<Vertex>(v));
        facets.push_back(std::move(s));
    }
    return SimplicialComplex::from_simplices(facets, "S" + std::to_string(n - 1));
}

RelativeCells relative_cells(const SimplicialComplex& x, const SimplicialComplex& a)
{
    if (!a.is_subcomplex_of(x))
        throw std::invalid_argument("A is not a subcomplex of X");
    RelativeCells rc;
    for (int p = 0; p <= x.dimension(); ++p) {
        std::vector<std::size_t> cells;
        std::vector<std::size_t> pos(x.count(p), RelativeCells::npos);
        for (std::size_t i = 0; i < x.count(p); ++i)
            if (!a.contains(x.simplex(p, i))) {
                pos[i] = cells.size();
                cells.push_back(i);
            }
        rc.cells.push_back(std::move(cells));
        rc.position.push_back(std::move(pos));
    }
    return rc;
}

CochainComplexPresentation relative_cochain_complex(const SimplicialComplex& x, const SimplicialComplex& a,
                                                    const CoefficientRing& ring)
{
    const RelativeCells rc = relative_cells(x, a);
    CochainComplexPresentation cx;
    cx.ring = ring;
    for (const auto& c : rc.cells)
        cx.ranks.push_back(c.size());
    for (int p = 0; p < x.dimension(); ++p) {
        SparseMatrix d(rc.cells[p + 1].size(), rc.cells[p].size());
        for (std::size_t r = 0; r < rc.cells[p + 1].size(); ++r) {
            const Simplex& s = x.simplex(p + 1, rc.cells[p + 1][r]);
            std::vector<std::pair<std::size_t, int>> entries;
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<long>(i));
                const std::size_t col = rc.position[p][*x.index_of(f)];
                if (col == RelativeCells::npos)
                    continue;
                int sign = i % 2 ? -1 : 1;
                if (ring.is_mod2())
                    sign = 1;
                entries.emplace_back(col, sign);
            }
            std::sort(entries.begin(), entries.end());
            SparseVector row;
            for (const auto& [c, v] : entries)
                row.push_back(c, v);
            d.set_row(r, std::move(row));
        }
        cx.coboundary.push_back(std::move(d));
    }
    return cx;
}

}  // namespace ddc
