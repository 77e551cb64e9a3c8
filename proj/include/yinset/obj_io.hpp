#pragma once

#include <iosfwd>
#include <string>

#include "yinset/brep.hpp"

namespace yinset {

// Wavefront OBJ as the boundary exchange format. Each `o` record is one
// closed surface; the face winding encodes the orientation (signed volume
// positive means a positive surface). The sentinels are spelled as a lone
// header line "# yinset: empty" or "# yinset: full".
GElement readObjStream(std::istream& in, Rng& rng,
                       const Tolerance* tol = nullptr);
GElement readObjFile(const std::string& path, Rng& rng,
                     const Tolerance* tol = nullptr);

// Objects are named atom<K>_pos / atom<K>_neg<J> by structure.
void writeObjStream(std::ostream& out, const GElement& g);
void writeObjFile(const std::string& path, const GElement& g);

// Graphviz rendering of the inclusion diagram; positive nodes are filled.
void writeHasseDot(std::ostream& out, const HasseDiagram& d);

}  // namespace yinset
