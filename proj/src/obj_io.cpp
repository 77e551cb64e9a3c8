#include "yinset/obj_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace yinset {

namespace {

// Leading vertex index of an OBJ face corner like "12", "12/3" or "12//4".
int cornerIndex(const std::string& tok, int nVertices) {
  std::size_t slash = tok.find('/');
  std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
  int idx = 0;
  try {
    idx = std::stoi(head);
  } catch (const std::exception&) {
    throw ParseError("bad face corner '" + tok + "'");
  }
  if (idx < 0) idx = nVertices + idx + 1;  // relative indexing
  if (idx < 1 || idx > nVertices)
    throw ParseError("face corner '" + tok + "' out of range");
  return idx - 1;
}

// Remaps one object's faces onto a compact local vertex array.
TriMesh extractObject(const std::vector<Vec3>& verts,
                      const std::vector<std::array<int, 3>>& faces) {
  TriMesh m;
  std::map<int, int> remap;
  for (const auto& f : faces) {
    std::array<int, 3> lf;
    for (int k = 0; k < 3; ++k) {
      auto it = remap.find(f[k]);
      if (it == remap.end()) {
        it = remap.emplace(f[k], int(m.V.size())).first;
        m.V.push_back(verts[f[k]]);
      }
      lf[k] = it->second;
    }
    m.F.push_back(lf);
  }
  return m;
}

void requireClosed(const TriMesh& m, const std::string& name) {
  auto open = m.unmatchedEdges();
  if (open.empty()) return;
  std::ostringstream os;
  os << "surface '" << name << "' is not closed; " << open.size()
     << " unmatched directed edge(s), first at ("
     << m.V[open[0].first].transpose() << ") -> ("
     << m.V[open[0].second].transpose() << ")";
  throw NotClosedError(os.str());
}

}  // namespace

GElement readObjStream(std::istream& in, Rng& rng, const Tolerance* tol) {
  std::vector<Vec3> verts;
  std::vector<std::pair<std::string, std::vector<std::array<int, 3>>>> objects;
  auto current = [&]() -> std::vector<std::array<int, 3>>& {
    if (objects.empty()) objects.push_back({"default", {}});
    return objects.back().second;
  };

  std::string line;
  bool sawContent = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# yinset:", 0) == 0 && !sawContent) {
      std::string rest = line.substr(9);
      std::istringstream rs(rest);
      std::string word;
      rs >> word;
      if (word == "empty") return GElement::bottom();
      if (word == "full") return GElement::top();
      throw ParseError("unknown sentinel header '" + line + "'");
    }
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string rec;
    ls >> rec;
    if (rec == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw ParseError("bad vertex line '" + line + "'");
      verts.emplace_back(x, y, z);
      sawContent = true;
    } else if (rec == "o" || rec == "g") {
      std::string name;
      ls >> name;
      objects.push_back({name.empty() ? "unnamed" : name, {}});
      sawContent = true;
    } else if (rec == "f") {
      std::vector<int> poly;
      std::string tok;
      while (ls >> tok) poly.push_back(cornerIndex(tok, int(verts.size())));
      if (poly.size() < 3) throw ParseError("face with <3 corners: '" + line + "'");
      for (std::size_t k = 1; k + 1 < poly.size(); ++k)
        current().push_back({poly[0], poly[int(k)], poly[int(k) + 1]});
      sawContent = true;
    }
    // vn/vt/s/usemtl/mtllib are irrelevant here and skipped.
  }

  std::vector<GluedSurface> surfaces;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].second.empty()) continue;
    TriMesh m = extractObject(verts, objects[i].second);
    requireClosed(m, objects[i].first);
    surfaces.push_back(makeGluedSurface(std::move(m), int(surfaces.size())));
  }
  if (surfaces.empty()) return GElement::bottom();

  std::vector<const GluedSurface*> ptrs;
  for (const auto& s : surfaces) ptrs.push_back(&s);
  Tolerance t = tol ? *tol : defaultTolerance(ptrs);
  return GElement::of(decomposeAtoms(surfaces, rng, t));
}

GElement readObjFile(const std::string& path, Rng& rng, const Tolerance* tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return readObjStream(in, rng, tol);
}

void writeObjStream(std::ostream& out, const GElement& g) {
  if (g.isBottom()) {
    out << "# yinset: empty\n";
    return;
  }
  if (g.isTop()) {
    out << "# yinset: full\n";
    return;
  }
  out << "# boundary surfaces; face winding encodes orientation\n";
  int base = 1;
  auto emit = [&](const TriMesh& oriented, const std::string& name) {
    out << "o " << name << "\n";
    for (const auto& v : oriented.V)
      out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& f : oriented.F)
      out << "f " << base + f[0] << " " << base + f[1] << " " << base + f[2]
          << "\n";
    base += int(oriented.V.size());
  };
  out.precision(17);
  for (std::size_t k = 0; k < g.shape.atoms.size(); ++k) {
    const auto& atom = g.shape.atoms[k];
    if (atom.positive)
      emit(atom.positive->oriented(), "atom" + std::to_string(k) + "_pos");
    for (std::size_t j = 0; j < atom.negatives.size(); ++j)
      emit(atom.negatives[j].oriented(),
           "atom" + std::to_string(k) + "_neg" + std::to_string(j));
  }
}

void writeObjFile(const std::string& path, const GElement& g) {
  std::ofstream out(path);
  if (!out) throw CannotSerializeError("cannot open '" + path + "' for writing");
  writeObjStream(out, g);
}

void writeHasseDot(std::ostream& out, const HasseDiagram& d) {
  out << "digraph inclusion {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& n = d.nodes[i];
    out << "  n" << i << " [label=\"s" << n.surface_id
        << (n.sign == Orientation::Positive ? "+" : "-") << "\""
        << (n.sign == Orientation::Positive ? ", style=filled" : "") << "];\n";
  }
  std::vector<std::pair<int, int>> edges = d.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
}

}  // namespace yinset
