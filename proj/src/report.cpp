#include "ddcalc/report.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

namespace ddc {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json integer_json(const Integer& v)
{
    if (v.fits_slong_p())
        return v.get_si();
    return v.get_str();
}

Json pieces_json(const AhssResult& r)
{
    Json pieces = Json::array();
    for (const auto& piece : r.pieces)
        pieces.push_back({{"p", piece.p}, {"e2", piece.e2.iso_type()}, {"group", piece.e4.iso_type()}});
    return pieces;
}

Json result_json(const AhssResult& r)
{
    Json j;
    j["status"] = to_string(r.status);
    j["pieces"] = pieces_json(r);
    if (r.assembled)
        j["group"] = r.assembled->iso_type();
    if (!r.candidates.empty()) {
        Json c = Json::array();
        for (const auto& g : r.candidates)
            c.push_back(g.iso_type());
        j["candidates"] = c;
    }
    return j;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
        for (std::size_t k = 0; k < j.size(); ++k)
            flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

Space load_space(const std::string& path)
{
    const std::string text = read_file(path);
    if (is_model_text(text))
        return Space::model(std::make_shared<AlgebraicModel>(parse_model(text)));
    return Space::triangulated(std::make_shared<SimplicialComplex>(load_complex(text)));
}

Json coords_json(const Coords& c)
{
    Json out = Json::array();
    for (const auto& v : c)
        out.push_back(integer_json(v));
    return out;
}

Coords coords_from_json(const Json& j)
{
    if (!j.is_array())
        throw ParseError("coordinates must be a JSON array");
    Coords out;
    for (const auto& e : j) {
        if (e.is_number_integer()) {
            out.emplace_back(e.get<long>());
        } else if (e.is_string()) {
            Integer v;
            if (v.set_str(e.get<std::string>(), 10) != 0)
                throw ParseError("bad integer '" + e.get<std::string>() + "'");
            out.push_back(v);
        } else {
            throw ParseError("coordinates must be integers");
        }
    }
    return out;
}

Json compute_report(const ClassGroup& g)
{
    Json j;
    j["space"] = g.space().name();
    j["algebra"] = g.algebra().to_string();
    j["variant"] = to_string(g.variant());
    Json comps = Json::object();
    for (const auto& c : g.components())
        comps[c.name] = c.group.iso_type();
    j["components"] = comps;
    if (g.has("kappa"))
        j["kappa_status"] = to_string(g.kappa_status());
    if (g.partial()) {
        j["partial"] = true;
    } else {
        const auto abstract = abstract_iso_type(g);
        j["group"] = abstract.front().iso_type();
        j["abstract"] = abstract.front().iso_type();
        if (abstract.size() > 1) {
            Json c = Json::array();
            for (const auto& a : abstract)
                c.push_back(a.iso_type());
            j["candidates"] = c;
        }
    }
    if (g.twisted()) {
        Json table = Json::array();
        for (std::size_t i = 0; i < g.w_rank(); ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < g.w_rank(); ++k)
                row.push_back(coords_json(g.twist(i, k)));
            table.push_back(row);
        }
        j["twist"] = table;
    }
    return j;
}

Json ktheory_report(const KGroupReport& k)
{
    Json j;
    j["i"] = k.i;
    j["reduced"] = k.reduced;
    const Json body = result_json(k.result);
    for (auto it = body.begin(); it != body.end(); ++it)
        j[it.key()] = it.value();
    if (k.localized) {
        Json l = result_json(*k.localized);
        l["primes"] = k.primes->to_string();
        j["localized"] = l;
    }
    return j;
}

Json cohomology_report(const Space& x, const CoefficientRing& ring)
{
    Json j;
    j["space"] = x.name();
    j["ring"] = ring.display();
    Json groups = Json::object();
    for (int n = 0; n <= x.dimension(); ++n)
        groups[std::to_string(n)] = x.with_ring(n, ring)->iso_type();
    j["groups"] = groups;
    return j;
}

Json coefficient_report(const AlgebraSpec& d, int max_i)
{
    Json table = Json::array();
    for (int i = 0; i <= max_i; ++i)
        table.push_back(coefficients(d, i));
    return {{"algebra", d.to_string()}, {"table", table}};
}

BundleClass element_from_json(const ClassGroup& g, const Json& j)
{
    if (!j.is_object())
        throw ParseError("element must be an object keyed by summand name");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!g.has(it.key()))
            throw ParseError("no '" + it.key() + "' summand in this group");
    std::vector<Coords> parts;
    for (const auto& c : g.components())
        parts.push_back(j.contains(c.name) ? coords_from_json(j.at(c.name)) : c.group.zero());
    try {
        return g.element(std::move(parts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Json element_json(const BundleClass& x)
{
    Json j = Json::object();
    for (std::size_t k = 0; k < x.parts.size(); ++k)
        j[x.group->components()[k].name] = coords_json(x.parts[k]);
    return j;
}

std::string render_text(const Json& j)
{
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t width = 0;
    for (const auto& [k, v] : rows)
        width = std::max(width, k.size());
    std::string out;
    for (const auto& [k, v] : rows)
        out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    return out;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::filesystem::create_directories(dir_);
}

std::filesystem::path ResultCache::path_for(std::uint64_t fingerprint, const std::string& tag) const
{
    std::ostringstream name;
    name << std::hex << fnv1a(std::string(kToolVersion) + "|" + std::to_string(fingerprint) + "|" + tag) << ".json";
    return dir_ / name.str();
}

std::optional<Json> ResultCache::get(std::uint64_t fingerprint, const std::string& tag) const
{
    std::ifstream in(path_for(fingerprint, tag));
    if (!in)
        return std::nullopt;
    Json j = Json::parse(in, nullptr, false);
    // entries carry their key; anything else is treated as a miss
    if (j.is_discarded() || !j.is_object() || j.value("version", "") != kToolVersion || j.value("tag", "") != tag ||
        j.value("fingerprint", std::uint64_t{0}) != fingerprint || !j.contains("value"))
        return std::nullopt;
    return j["value"];
}

void ResultCache::put(std::uint64_t fingerprint, const std::string& tag, const Json& value) const
{
    const auto target = path_for(fingerprint, tag);
    auto tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << Json{{"version", kToolVersion}, {"fingerprint", fingerprint}, {"tag", tag}, {"value", value}}.dump();
        if (!out)
            return;
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace ddc
