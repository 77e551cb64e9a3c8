#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "yinset/booleans.hpp"
#include "yinset/cli.hpp"
#include "yinset/obj_io.hpp"
#include "yinset/shapes.hpp"
#include "yinset/verify.hpp"

using namespace yinset;

namespace {

const Tolerance tol{1e-9};

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = std::string("/tmp/yinset_test_") + name;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("write then read reproduces structure, signs and volume") {
  Rng rng(1);
  GElement shell = shapes::shell(Vec3(1, 2, 3), 1.0, 0.5, 2, rng, tol);
  std::stringstream ss;
  writeObjStream(ss, shell);
  GElement back = readObjStream(ss, rng);
  REQUIRE(back.isShape());
  REQUIRE(back.shape.atoms.size() == 1);
  CHECK(back.shape.atoms[0].positive.has_value());
  CHECK(back.shape.atoms[0].negatives.size() == 1);
  CHECK(meshVolume(back) == doctest::Approx(meshVolume(shell)).epsilon(1e-12));
  CHECK(topology(back) == topology(shell));
}

TEST_CASE("serialization is idempotent after one round trip") {
  Rng rng(2);
  GElement g = shapes::solid(shapes::icosphere(Vec3::Zero(), 1.0, 2), rng, tol);
  std::stringstream s1, s2, s3;
  writeObjStream(s1, g);
  GElement g1 = readObjStream(s1, rng);
  writeObjStream(s2, g1);
  GElement g2 = readObjStream(s2, rng);
  writeObjStream(s3, g2);
  CHECK(s2.str() == s3.str());
}

TEST_CASE("sentinel headers round-trip") {
  Rng rng(3);
  std::stringstream se, sf;
  writeObjStream(se, GElement::bottom());
  writeObjStream(sf, GElement::top());
  CHECK(readObjStream(se, rng).isBottom());
  CHECK(readObjStream(sf, rng).isTop());
}

TEST_CASE("open meshes and garbage are rejected with detail") {
  Rng rng(4);
  std::stringstream open("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  CHECK_THROWS_AS(readObjStream(open, rng), NotClosedError);

  std::stringstream bad("v 0 0 zero\n");
  CHECK_THROWS_AS(readObjStream(bad, rng), ParseError);

  std::stringstream badIdx("v 0 0 0\nf 1 2 9\n");
  CHECK_THROWS_AS(readObjStream(badIdx, rng), ParseError);
}

TEST_CASE("quads are fan-triangulated on read") {
  Rng rng(5);
  // A cube written with quad faces.
  std::stringstream ss;
  ss << "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
        "v 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
        "f 4 3 2 1\nf 5 6 7 8\nf 1 2 6 5\nf 2 3 7 6\nf 3 4 8 7\nf 4 1 5 8\n";
  GElement g = readObjStream(ss, rng);
  REQUIRE(g.isShape());
  CHECK(meshVolume(g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inclusion diagram renders deterministically") {
  Rng rng(6);
  GElement shell = shapes::shell(Vec3::Zero(), 1.0, 0.5, 2, rng, tol);
  HasseDiagram d = hasse(shell.shape.surfacesCopy(), rng, tol);
  std::stringstream s1, s2;
  writeHasseDot(s1, d);
  writeHasseDot(s2, d);
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().find("digraph") != std::string::npos);
  CHECK(s1.str().find("style=filled") != std::string::npos);
  CHECK(s1.str().find("->") != std::string::npos);
}

TEST_CASE("cli end to end: meet, topology, oracle and error paths") {
  Rng rng(7);
  TempFile fa("a.obj"), fb("b.obj"), fout("out.obj");
  writeObjFile(fa.path, shapes::solid(
      shapes::icosphere(Vec3(-0.5, 0, 0), 1.0, 2), rng, tol));
  writeObjFile(fb.path, shapes::solid(
      shapes::icosphere(Vec3(0.5, 0, 0), 1.0, 2), rng, tol));

  CHECK(runCli({"meet", fa.path, fb.path, "-o", fout.path}) == 0);
  GElement lens = readObjFile(fout.path, rng);
  CHECK(lens.isShape());

  CHECK(runCli({"topology", fout.path}) == 0);
  CHECK(runCli({"validate", fout.path}) == 0);
  CHECK(runCli({"oracle", "meet", fa.path, fout.path, "--second", fb.path,
                "--samples", "2000"}) == 0);
  // Passing the wrong result must fail the oracle.
  CHECK(runCli({"oracle", "meet", fa.path, fa.path, "--second", fb.path,
                "--samples", "2000"}) == 1);

  CHECK(runCli({"frobnicate"}) == 2);
  CHECK(runCli({"meet", "/nonexistent.obj", fb.path}) == 3);

  CHECK(runCli({"meet", "@empty", fb.path, "-o", fout.path}) == 0);
  CHECK(slurp(fout.path).find("empty") != std::string::npos);

  TempFile fdot("h.dot");
  CHECK(runCli({"hasse", fa.path, "-o", fdot.path}) == 0);
  CHECK(slurp(fdot.path).find("digraph") != std::string::npos);
}
