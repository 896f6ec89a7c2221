#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>

namespace chsh::cli {

/// Runs every cross-validation battery, one PASS/FAIL line each.
/// Returns true iff all pass.
bool run_verify(std::size_t trials, std::uint64_t seed, std::ostream& out);

}  // namespace chsh::cli
