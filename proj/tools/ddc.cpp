#include "selftest.hpp"

#include "ddcalc/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ddc;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitApproximate = 4;

struct Options {
    bool pretty = false;
    bool strict = false;
    bool verbose = false;
    std::string cache_dir;
};

struct Loaded {
    Space space;
    std::uint64_t key;
};

Loaded load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::uint64_t h = 1469598103934665603ull;
    for (char c : ss.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    Space x = load_space(path);
    return {x, h ^ x.fingerprint()};
}

void emit(const Options& o, const Json& j)
{
    if (o.pretty)
        std::cout << render_text(j);
    else
        std::cout << j.dump() << "\n";
}

Json cached(const Options& o, std::uint64_t key, const std::string& tag, const std::function<Json()>& compute)
{
    if (o.cache_dir.empty())
        return compute();
    ResultCache cache(o.cache_dir);
    if (auto hit = cache.get(key, tag)) {
        if (o.verbose)
            std::cerr << "cache hit " << cache.path_for(key, tag).string() << "\n";
        return *hit;
    }
    Json j = compute();
    cache.put(key, tag, j);
    return j;
}

Variant variant_of(bool bar, bool hat)
{
    if (bar && hat)
        throw ParseError("--bar and --hat are exclusive");
    return bar ? Variant::Bar : hat ? Variant::Hat : Variant::Plain;
}

CoefficientRing parse_ring(const std::string& s)
{
    if (s == "Z")
        return CoefficientRing::integers();
    if (s == "Z/2")
        return CoefficientRing::mod2();
    try {
        return CoefficientRing::localized(parse_prime_set(s));
    } catch (const std::invalid_argument& e) {
        throw ParseError("bad ring '" + s + "' (expected Z, Z/2 or a prime set such as {2,3})");
    }
}

Json parse_json_arg(const std::string& s)
{
    Json j = Json::parse(s, nullptr, false);
    if (j.is_discarded())
        throw ParseError("malformed element JSON: " + s);
    return j;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bundles of strongly self-absorbing C*-algebras: cohomology, connective K-theory, classification"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--pretty", o.pretty, "aligned text instead of JSON");
    app.add_flag("--json", [&](std::int64_t) { o.pretty = false; }, "JSON output (default)");
    app.add_option("--cache", o.cache_dir, "directory for cached results");
    app.add_flag("--strict", o.strict, "exit 4 when a result is only approximate");
    app.add_flag("--verbose", o.verbose, "timings and cache activity on stderr");

    std::string path, algebra, x_text, y_text, ring_text = "Z", level = "quick", corpus = "corpus", localize_text;
    bool bar = false, hat = false, inv = false, reduced = false, crosscheck = false;
    int max_i = 0, degree = 0;

    auto* compute = app.add_subcommand("compute", "classification group of bundles with fibre D (x) K");
    compute->add_option("space", path, "complex or model JSON")->required();
    compute->add_option("algebra", algebra, "C, Z, M{p,...}, Oinf or M{p,...}xOinf")->required();
    compute->add_flag("--bar", bar, "identity-component variant");
    compute->add_flag("--hat", hat, "graded variant");

    auto* mul = app.add_subcommand("mul", "multiply two elements, or invert one");
    mul->add_option("space", path)->required();
    mul->add_option("algebra", algebra)->required();
    mul->add_option("x", x_text, "element JSON, e.g. {\"w\":[1,0]}")->required();
    mul->add_option("y", y_text, "second element JSON");
    mul->add_flag("--inverse", inv, "print the inverse of x");
    mul->add_flag("--bar", bar);
    mul->add_flag("--hat", hat);

    auto* coeffs = app.add_subcommand("coeffs", "homotopy groups of Aut(D (x) K)");
    coeffs->add_option("algebra", algebra)->required();
    coeffs->add_option("max_i", max_i)->required()->check(CLI::NonNegativeNumber);

    auto* cohom = app.add_subcommand("cohomology", "cohomology groups in every degree");
    cohom->add_option("space", path)->required();
    cohom->add_option("--ring", ring_text, "Z, Z/2 or a prime set {2,3}");

    auto* kth = app.add_subcommand("ktheory", "connective K-theory k^i");
    kth->add_option("space", path)->required();
    kth->add_option("i", degree)->required()->check(CLI::NonNegativeNumber);
    kth->add_flag("--reduced", reduced, "reduced group (matters for i = 0, 1)");
    kth->add_option("--localize", localize_text, "also report the localization at a prime set");
    kth->add_flag("--crosscheck", crosscheck, "for i = 5: compare with ker(k^3 -> H^3)");

    auto* self = app.add_subcommand("selftest", "invariant suites over the corpus");
    self->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));
    self->add_option("--corpus", corpus, "corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (*compute) {
            const Variant v = variant_of(bar, hat);
            const AlgebraSpec d = parse_algebra(algebra);
            const Loaded in = load(path);
            const Json j = cached(o, in.key, "compute|" + d.to_string() + "|" + to_string(v),
                                  [&] { return compute_report(*classification_group(in.space, d, v)); });
            emit(o, j);
            if (o.strict && j.value("kappa_status", "") == "approximate")
                rc = kExitApproximate;
        } else if (*mul) {
            const auto g = classification_group(load(path).space, parse_algebra(algebra), variant_of(bar, hat));
            const BundleClass x = element_from_json(*g, parse_json_arg(x_text));
            if (inv) {
                emit(o, element_json(inverse(x)));
            } else {
                if (y_text.empty())
                    throw ParseError("mul needs two elements unless --inverse is given");
                emit(o, element_json(multiply(x, element_from_json(*g, parse_json_arg(y_text)))));
            }
        } else if (*coeffs) {
            emit(o, coefficient_report(parse_algebra(algebra), max_i));
        } else if (*cohom) {
            const CoefficientRing ring = parse_ring(ring_text);
            const Loaded in = load(path);
            emit(o, cached(o, in.key, "cohomology|" + ring.display(), [&] { return cohomology_report(in.space, ring); }));
        } else if (*kth) {
            const Loaded in = load(path);
            std::optional<PrimeSet> primes;
            if (!localize_text.empty())
                primes = parse_ring(localize_text).primes();
            const std::string tag = "ktheory|" + std::to_string(degree) + "|" + (reduced ? "r" : "u") + "|" +
                                    (primes ? primes->to_string() : "") + (crosscheck ? "|cc" : "");
            const Json j = cached(o, in.key, tag, [&] {
                KGroupReport k = connective_k(in.space, degree, reduced);
                if (primes) {
                    k.primes = primes;
                    k.localized = localize_result(k.result, *primes);
                }
                Json out = ktheory_report(k);
                if (crosscheck) {
                    if (degree != 5)
                        throw ParseError("--crosscheck applies to i = 5 only");
                    const CrosscheckReport cc = k5_crosscheck(in.space);
                    out["crosscheck"] = {{"outcome", to_string(cc.outcome)},
                                         {"k5", cc.k5_type},
                                         {"kernel", cc.kernel_type},
                                         {"detail", cc.detail}};
                }
                return out;
            });
            emit(o, j);
            if (o.strict && j.value("status", "") == "approximate")
                rc = kExitApproximate;
        } else if (*self) {
            const auto failures =
                run_selftest(corpus, level == "full" ? SelftestLevel::Full : SelftestLevel::Quick, std::cout, o.verbose);
            rc = failures == 0 ? 0 : 1;
        }
    } catch (const UnsupportedAlgebra& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (o.verbose)
        std::cerr << "elapsed "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count()
                  << " ms\n";
    return rc;
}
