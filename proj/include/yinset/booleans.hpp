#pragma once

#include "yinset/brep.hpp"
#include "yinset/cutting.hpp"

namespace yinset {

// Complement: cut at the improper intersections, reverse every orientation,
// paste. Reversing surfaces without re-pasting is not sound in general.
GElement complement(const GElement& g, Rng& rng, const Tolerance& tol);

GElement meet(const GElement& g1, const GElement& g2, Rng& rng, const Tolerance& tol);

// (g1' /\ g2')'.
GElement join(const GElement& g1, const GElement& g2, Rng& rng, const Tolerance& tol);

// g1 /\ g2'.
GElement difference(const GElement& g1, const GElement& g2, Rng& rng,
                    const Tolerance& tol);

}  // namespace yinset
