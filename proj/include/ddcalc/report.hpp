#pragma once

#include "ddcalc/classify.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace ddc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Complex or algebraic model, decided by content. Throws ParseError.
Space load_space(const std::string& path);

Json coords_json(const Coords& c);
/// Accepts integers and decimal strings; throws ParseError.
Coords coords_from_json(const Json& j);

Json compute_report(const ClassGroup& g);
Json ktheory_report(const KGroupReport& k);
/// Groups H^n(X; ring) for 0 <= n <= dim X.
Json cohomology_report(const Space& x, const CoefficientRing& ring);
Json coefficient_report(const AlgebraSpec& d, int max_i);

/// {"u": [...], "w": [...], ...}; summands missing from the input are zero.
BundleClass element_from_json(const ClassGroup& g, const Json& j);
Json element_json(const BundleClass& x);

/// Aligned "key  value" lines, nested keys joined with '.'.
std::string render_text(const Json& j);

/// Content-addressed store of JSON results, keyed by (tool version, fingerprint, tag).
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);
    std::optional<Json> get(std::uint64_t fingerprint, const std::string& tag) const;
    /// Writes a temporary file, then renames it into place.
    void put(std::uint64_t fingerprint, const std::string& tag, const Json& value) const;
    std::filesystem::path path_for(std::uint64_t fingerprint, const std::string& tag) const;

private:
    std::filesystem::path dir_;
};

}  // namespace ddc
