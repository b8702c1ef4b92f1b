#pragma once

#include "hardy_means/generator.hpp"

namespace hardy_means {

/// g_+(0) = limsup_{s->0} g(s). Returns the declared value when present,
/// otherwise estimate_limsup_at_zero(). Throws InconsistencyError when the
/// estimate exceeds -1 + 1e-6 (incompatible with g(t) <= t - 1).
[[nodiscard]] double limsup_at_zero(const GeneratorSpec& g);

/// q = limsup_{s->inf} g(s)/s, declared or estimated; must lie in [0, 1].
[[nodiscard]] double limsup_slope_at_inf(const GeneratorSpec& g);

/// sup of g over (0, inf), declared or estimated; +inf when unbounded.
[[nodiscard]] double supremum(const GeneratorSpec& g);

/// Purely numeric estimates, ignoring any declared value.
///
/// Window maxima of g over the geometric points s0 * 2^-k (or s0 * 2^k at
/// infinity) are refined until successive estimates differ by less than 1e-9;
/// geometric convergence is finished with an Aitken step. Sequences whose
/// differences stop shrinking are reported as infinite in the direction of drift.
[[nodiscard]] double estimate_limsup_at_zero(const GeneratorSpec& g);
[[nodiscard]] double estimate_limsup_slope_at_inf(const GeneratorSpec& g);
[[nodiscard]] double estimate_supremum(const GeneratorSpec& g);

/// Copy of g with every "estimate" limit replaced by its estimate.
[[nodiscard]] GeneratorSpec resolve_limits(const GeneratorSpec& g);

}  // namespace hardy_means
