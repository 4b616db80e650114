#pragma once

#include <filesystem>
#include <ostream>

namespace ddc {

enum class SelftestLevel { Quick, Full };

/// Runs the invariant suites over the corpus in `dir`; returns the number of failures.
/// Throws ParseError when the directory holds no corpus files.
std::size_t run_selftest(const std::filesystem::path& dir, SelftestLevel level, std::ostream& out, bool verbose);

}  // namespace ddc
