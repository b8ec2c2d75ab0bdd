#pragma once

#include "vfern/universal.hpp"

#include <random>

namespace vfern {

using Rng = std::mt19937_64;

Subspace random_subspace(const VectorSpace& amb, const Subspace& W, unsigned d, Rng& rng);
// Random complement of A inside W, as a basis.
std::vector<Vec> random_complement(const VectorSpace& amb, const Subspace& W, const Subspace& A, Rng& rng);

// Values on a basis that extend to an injective map; needs dim <= m.
std::vector<Elem> random_injective(const ExtField& F, const FernSpace& S, Rng& rng);

// Random V-fern on W from a pipeline of fibers, smooth ferns, grafts and
// contractions; `depth` bounds the nesting of grafts and contractions.
Fern random_fern(const ExtFieldPtr& F, const VectorSpace& amb, const Subspace& W, Rng& rng, int depth = 2);

// Stable tree with marks 0..marks-1 built by random stabilizations.
MarkedTree random_tree(const ExtFieldPtr& F, int marks, Rng& rng);

}  // namespace vfern
