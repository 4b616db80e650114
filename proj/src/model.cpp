#include "ddcalc/model.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace ddc {

namespace {

const FgAbGroup& group_or_zero(const std::map<int, FgAbGroup>& m, int p, const FgAbGroup& zero)
{
    auto it = m.find(p);
    return it == m.end() ? zero : it->second;
}

std::map<int, FgAbGroup> parse_groups(const nlohmann::json& j, const CoefficientRing& ring)
{
    std::map<int, FgAbGroup> out;
    if (!j.is_object())
        throw ParseError("cohomology table must be an object keyed by degree");
    for (auto it = j.begin(); it != j.end(); ++it) {
        int p;
        try {
            p = std::stoi(it.key());
        } catch (const std::exception&) {
            throw ParseError("bad degree key: " + it.key());
        }
        const auto& g = it.value();
        const std::size_t rank = g.value("rank", 0);
        std::vector<Integer> torsion;
        if (g.contains("torsion"))
            for (const auto& d : g["torsion"])
                torsion.emplace_back(d.get<long>());
        if (ring.is_mod2() && !torsion.empty())
            throw ParseError("mod-2 groups are given by rank only");
        try {
            out.emplace(p, FgAbGroup::abstract(ring, rank, torsion));
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("degree ") + it.key() + ": " + e.what());
        }
    }
    return out;
}

SparseMatrix parse_matrix(const nlohmann::json& m, std::size_t rows, std::size_t cols, const std::string& what)
{
    if (!m.is_array() || m.size() != rows)
        throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
    SparseMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!m[r].is_array() || m[r].size() != cols)
            throw ParseError(what + ": expected " + std::to_string(cols) + " columns");
        for (std::size_t c = 0; c < cols; ++c)
            out.set(r, c, m[r][c].get<long>());
    }
    return out;
}

}  // namespace

const FgAbGroup& AlgebraicModel::integral(int p) const
{
    static const FgAbGroup zero = FgAbGroup::trivial(CoefficientRing::integers());
    return group_or_zero(h_, p, zero);
}

const FgAbGroup& AlgebraicModel::mod2(int p) const
{
    static const FgAbGroup zero = FgAbGroup::trivial(CoefficientRing::mod2());
    return group_or_zero(h2_, p, zero);
}

FgAbGroup AlgebraicModel::localized(int p, const PrimeSet& primes) const
{
    return localize(integral(p), primes);
}

SparseMatrix AlgebraicModel::rho(int p) const
{
    auto it = rho_.find(p);
    return it != rho_.end() ? it->second : SparseMatrix(mod2(p).generator_count(), integral(p).generator_count());
}

SparseMatrix AlgebraicModel::beta(int p) const
{
    auto it = beta_.find(p);
    return it != beta_.end() ? it->second : SparseMatrix(integral(p + 1).generator_count(), mod2(p).generator_count());
}

SparseMatrix AlgebraicModel::sq2(int p) const
{
    auto it = sq2_.find(p);
    return it != sq2_.end() ? it->second : SparseMatrix(mod2(p + 2).generator_count(), mod2(p).generator_count());
}

SparseMatrix AlgebraicModel::d3(int p) const
{
    SparseMatrix m = sq2(p) * rho(p);
    m.reduce(2);
    m = beta(p + 2) * m;
    const FgAbGroup& target = integral(p + 3);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseVector row;
        for (const auto& [c, v] : m.row(r).entries()) {
            Integer x = reduce_mod(v, target.coordinate_modulus(r));
            if (x != 0)
                row.push_back(c, x);
        }
        m.set_row(r, std::move(row));
    }
    return m;
}

Coords AlgebraicModel::cup(int p, int q, bool mod2_ring, std::size_t i, std::size_t j) const
{
    const FgAbGroup& target = mod2_ring ? mod2(p + q) : integral(p + q);
    auto it = cup_.find({p, q, mod2_ring});
    if (it == cup_.end())
        return target.zero();
    return target.reduce(it->second.table.at(i).at(j));
}

void AlgebraicModel::validate() const
{
    for (const auto& [p, g] : h_)
        if (p < 0 || p > dim)
            throw ParseError("cohomology listed outside degrees 0.." + std::to_string(dim));
    for (const auto& [p, g] : h2_)
        if (p < 0 || p > dim)
            throw ParseError("mod-2 cohomology listed outside degrees 0.." + std::to_string(dim));
    auto check_hom = [](const FgAbGroup& src, const FgAbGroup& tgt, const SparseMatrix& m, const std::string& what) {
        auto s = std::make_shared<FgAbGroup>(src);
        auto t = std::make_shared<FgAbGroup>(tgt);
        std::vector<Coords> images;
        for (std::size_t j = 0; j < src.generator_count(); ++j)
            images.push_back(m.column(j).to_dense(tgt.generator_count()));
        try {
            hom_from_images(s, t, images);
        } catch (const std::logic_error& e) {
            throw ParseError(what + ": " + e.what());
        }
    };
    for (int p = 0; p <= dim; ++p) {
        check_hom(integral(p), mod2(p), rho(p), "rho in degree " + std::to_string(p));
        check_hom(mod2(p), integral(p + 1), beta(p), "beta in degree " + std::to_string(p));
        SparseMatrix br = beta(p) * rho(p);
        const FgAbGroup& t = integral(p + 1);
        for (std::size_t r = 0; r < br.rows(); ++r)
            for (const auto& [c, v] : br.row(r).entries())
                if (reduce_mod(v, t.coordinate_modulus(r)) != 0)
                    throw ParseError("beta o rho is nonzero in degree " + std::to_string(p));
        if (p < 2) {
            SparseMatrix s = sq2(p);
            s.reduce(2);
            if (!s.is_zero())
                throw ParseError("Sq^2 must vanish below degree 2");
        }
    }
    for (const auto& [key, tab] : cup_) {
        const auto [p, q, is_mod2] = key;
        if (p != q)
            continue;
        const FgAbGroup& target = is_mod2 ? mod2(p + q) : integral(p + q);
        const Integer sign = (!is_mod2 && p % 2) ? -1 : 1;
        for (std::size_t i = 0; i < tab.table.size(); ++i)
            for (std::size_t j = 0; j < tab.table.size(); ++j)
                if (!target.is_zero(target.add(tab.table[i][j], target.scale(tab.table[j][i], -sign))))
                    throw ParseError("cup table in degree " + std::to_string(p) + " is not graded symmetric");
    }
}

AlgebraicModel parse_model(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    AlgebraicModel m;
    try {
        m.name = j.value("name", "");
        m.dim = j.at("dim").get<int>();
        if (j.contains("cells"))
            m.cells = j["cells"].get<std::vector<int>>();
        m.h_ = parse_groups(j.at("H"), CoefficientRing::integers());
        if (j.contains("H2"))
            m.h2_ = parse_groups(j["H2"], CoefficientRing::mod2());
        auto read_maps = [&](const char* key, std::map<int, SparseMatrix>& dst, auto rows_of, auto cols_of) {
            if (!j.contains(key))
                return;
            for (const auto& e : j[key]) {
                const int p = e.at("deg").get<int>();
                dst[p] = parse_matrix(e.at("matrix"), rows_of(p), cols_of(p), std::string(key) + " in degree " + std::to_string(p));
            }
        };
        read_maps("rho", m.rho_, [&](int p) { return m.mod2(p).generator_count(); },
                  [&](int p) { return m.integral(p).generator_count(); });
        read_maps("beta", m.beta_, [&](int p) { return m.integral(p + 1).generator_count(); },
                  [&](int p) { return m.mod2(p).generator_count(); });
        read_maps("sq2", m.sq2_, [&](int p) { return m.mod2(p + 2).generator_count(); },
                  [&](int p) { return m.mod2(p).generator_count(); });
        if (j.contains("cup"))
            for (const auto& e : j["cup"]) {
                const auto deg = e.at("deg").get<std::vector<int>>();
                if (deg.size() != 2)
                    throw ParseError("cup degree must be a pair");
                const bool is_mod2 = e.value("ring", "Z/2") == "Z/2";
                const int p = deg[0], q = deg[1];
                const auto& src_p = is_mod2 ? m.mod2(p) : m.integral(p);
                const auto& src_q = is_mod2 ? m.mod2(q) : m.integral(q);
                const auto& tgt = is_mod2 ? m.mod2(p + q) : m.integral(p + q);
                const auto& t = e.at("table");
                if (t.size() != src_p.generator_count())
                    throw ParseError("cup table has wrong number of rows");
                AlgebraicModel::CupTable tab;
                for (const auto& row : t) {
                    if (row.size() != src_q.generator_count())
                        throw ParseError("cup table has wrong number of columns");
                    std::vector<Coords> out_row;
                    for (const auto& cell : row) {
                        if (cell.size() != tgt.generator_count())
                            throw ParseError("cup table entry has wrong length");
                        Coords c;
                        for (const auto& v : cell)
                            c.emplace_back(v.get<long>());
                        out_row.push_back(c);
                    }
                    tab.table.push_back(out_row);
                }
                m.cup_[{p, q, is_mod2}] = std::move(tab);
            }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
    m.validate();
    return m;
}

AlgebraicModel load_model_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

bool is_model_text(const std::string& text)
{
    try {
        auto j = nlohmann::json::parse(text);
        return j.is_object() && j.contains("H");
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

}  // namespace ddc
