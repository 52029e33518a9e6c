#pragma once

namespace qts {

/// Whether model searches estimate an intercept, omit it, or try both.
enum class InterceptPolicy { Always, Never, Search };

}  // namespace qts
