#include "yinset/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "yinset/booleans.hpp"
#include "yinset/mars.hpp"
#include "yinset/obj_io.hpp"
#include "yinset/verify.hpp"

namespace yinset {

namespace {

Tolerance pickTolerance(double eps, std::initializer_list<const GElement*> gs) {
  if (eps > 0) return Tolerance{eps};
  std::vector<const GluedSurface*> ptrs;
  for (const GElement* g : gs)
    if (g->isShape())
      for (const auto* s : g->shape.surfaces()) ptrs.push_back(s);
  if (ptrs.empty()) return Tolerance{1e-9};
  return defaultTolerance(ptrs);
}

std::string formatTopology(const TopologyReport& t) {
  std::string s = "components=" + std::to_string(t.components) + " holes=[";
  for (std::size_t i = 0; i < t.holes_per_component.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.holes_per_component[i]);
  }
  return s + "]";
}

}  // namespace

int runCli(const std::vector<std::string>& args) {
  CLI::App app{"Boolean algebra on solids bounded by oriented closed surfaces"};
  app.require_subcommand(1);

  double eps = 0;
  std::uint64_t seed = 20260826;
  app.add_option("--epsilon", eps,
                 "length tolerance (default: 1e-9 x joint bbox diagonal)");
  app.add_option("--seed", seed, "random seed");

  std::string inA, inB, inR, outPath = "-";
  int samples = 10000;
  double threshold = 0.999;

  auto addBinary = [&](const std::string& name, const std::string& desc) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("A", inA, "first operand (.obj, @empty, @full)")->required();
    sc->add_option("B", inB, "second operand")->required();
    sc->add_option("-o,--output", outPath, "output path ('-' = stdout)");
    return sc;
  };
  CLI::App* scMeet = addBinary("meet", "intersection of two solids");
  CLI::App* scJoin = addBinary("join", "union of two solids");
  CLI::App* scDiff = addBinary("diff", "first solid minus the second");

  CLI::App* scComp = app.add_subcommand("complement", "complement of a solid");
  scComp->add_option("A", inA, "operand")->required();
  scComp->add_option("-o,--output", outPath, "output path ('-' = stdout)");

  CLI::App* scTopo = app.add_subcommand("topology", "component and hole counts");
  scTopo->add_option("A", inA, "operand")->required();

  CLI::App* scValid = app.add_subcommand("validate", "check structural invariants");
  scValid->add_option("A", inA, "operand")->required();

  CLI::App* scHasse = app.add_subcommand("hasse", "inclusion diagram as Graphviz");
  scHasse->add_option("A", inA, "operand")->required();
  scHasse->add_option("-o,--output", outPath, "output path ('-' = stdout)");

  std::string oracleOp = "meet";
  CLI::App* scOracle = app.add_subcommand(
      "oracle", "pointwise membership check of a Boolean result");
  scOracle->add_option("op", oracleOp, "meet|join|diff|complement")->required();
  scOracle->add_option("A", inA, "first operand")->required();
  scOracle->add_option("RESULT", inR, "result to verify")->required();
  scOracle->add_option("-b,--second", inB, "second operand (binary ops)");
  scOracle->add_option("--samples", samples, "sample count");
  scOracle->add_option("--threshold", threshold, "required agreement rate");

  double t1 = 1.0, period = 1.0, hL = 1.0 / 32, rTiny = 0.1, alpha = 15.0;
  CLI::App* scTrack = app.add_subcommand(
      "track", "advect a solid through the time-reversed vortex field");
  scTrack->add_option("A", inA, "initial solid")->required();
  scTrack->add_option("-o,--output", outPath, "output path ('-' = stdout)");
  scTrack->add_option("--t1", t1, "end time");
  scTrack->add_option("--period", period, "field reversal period");
  scTrack->add_option("--edge-length", hL, "target edge length");
  scTrack->add_option("--r-tiny", rTiny, "collapse threshold ratio");
  scTrack->add_option("--min-angle", alpha, "triangle quality target (degrees)");

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Rng rng(seed);
  auto loadIn = [&](const std::string& p) -> GElement {
    if (p == "@empty") return GElement::bottom();
    if (p == "@full") return GElement::top();
    Tolerance t{eps};
    return readObjFile(p, rng, eps > 0 ? &t : nullptr);
  };
  auto emit = [&](const GElement& g) {
    if (outPath == "-") {
      writeObjStream(std::cout, g);
    } else {
      writeObjFile(outPath, g);
    }
  };

  try {
    if (*scMeet || *scJoin || *scDiff) {
      GElement a = loadIn(inA), b = loadIn(inB);
      Tolerance tol = pickTolerance(eps, {&a, &b});
      GElement r = *scMeet  ? meet(a, b, rng, tol)
                   : *scJoin ? join(a, b, rng, tol)
                             : difference(a, b, rng, tol);
      emit(r);
    } else if (*scComp) {
      GElement a = loadIn(inA);
      Tolerance tol = pickTolerance(eps, {&a});
      emit(complement(a, rng, tol));
    } else if (*scTopo) {
      GElement a = loadIn(inA);
      std::cout << formatTopology(topology(a)) << "\n";
    } else if (*scValid) {
      GElement a = loadIn(inA);
      Tolerance tol = pickTolerance(eps, {&a});
      auto violations = validate(a, rng, tol);
      for (const auto& v : violations) std::cout << "violation: " << v << "\n";
      if (!violations.empty()) return 1;
      std::cout << "ok\n";
    } else if (*scHasse) {
      GElement a = loadIn(inA);
      Tolerance tol = pickTolerance(eps, {&a});
      HasseDiagram d =
          a.isShape() ? hasse(a.shape.surfacesCopy(), rng, tol) : HasseDiagram{};
      if (outPath == "-") {
        writeHasseDot(std::cout, d);
      } else {
        std::ofstream out(outPath);
        if (!out) throw CannotSerializeError("cannot open '" + outPath + "'");
        writeHasseDot(out, d);
      }
    } else if (*scOracle) {
      GElement a = loadIn(inA), r = loadIn(inR);
      GElement b = inB.empty() ? GElement::bottom() : loadIn(inB);
      LawOp op;
      if (oracleOp == "meet") op = LawOp::Meet;
      else if (oracleOp == "join") op = LawOp::Join;
      else if (oracleOp == "diff") op = LawOp::Difference;
      else if (oracleOp == "complement") op = LawOp::Complement;
      else {
        std::cerr << "error: ParseError: unknown oracle op '" << oracleOp << "'\n";
        return 2;
      }
      if (op != LawOp::Complement && inB.empty()) {
        std::cerr << "error: ParseError: binary oracle op needs --second\n";
        return 2;
      }
      Tolerance tol = pickTolerance(eps, {&a, &b, &r});
      OracleReport rep = pointwiseLawCheck(r, a, b, op, samples, rng, tol);
      std::cout << rep.summary() << "\n";
      if (rep.agreementRate() < threshold) return 1;
    } else if (*scTrack) {
      GElement a = loadIn(inA);
      MarsParams params;
      params.hL = hL;
      params.rTiny = rTiny;
      params.minAngleDeg = alpha;
      GElement r = trackInterface(a, VelocityField::deformation(period), 0.0,
                                  t1, params);
      emit(r);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace yinset
