#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coverlab/json_io.hpp"
#include "coverlab/oracle.hpp"
#include "coverlab/render.hpp"
#include "coverlab/witness.hpp"

using namespace coverlab;

namespace {

constexpr int kOk = 0;        // ACCEPT / FOUND / SAT / consistent
constexpr int kNegative = 1;  // REJECT / NONE / UNSAT
constexpr int kUsage = 2;     // bad flags or malformed inputs
constexpr int kInternal = 3;  // the pipeline contradicted itself

std::string assignmentBits(const Assignment& a) {
  std::string s;
  for (bool v : a.values) s += v ? 'T' : 'F';
  return s;
}

struct GenOpts {
  std::string formula, out;
  int retries = 16;
};

int runGen(const GenOpts& o) {
  const MonotoneFormula f = formulaFromJson(readJsonFile(o.formula));
  BuildParams params;
  params.retries = o.retries;
  const ReductionInstance inst = buildInstance(f, params);
  writeJsonFile(o.out, instanceToJson(inst));
  std::cout << "instance: " << inst.points.size() << " points, budget "
            << inst.budget << " -> " << o.out << "\n";
  return kOk;
}

struct SatOpts {
  std::string formula, out;
};

int runSat(const SatOpts& o) {
  const MonotoneFormula f = validate(formulaFromJson(readJsonFile(o.formula)));
  const auto model = satSolve(f);
  if (!model) {
    std::cout << "UNSAT\n";
    return kNegative;
  }
  if (!o.out.empty()) writeJsonFile(o.out, assignmentToJson(*model));
  std::cout << "SAT " << assignmentBits(*model) << "\n";
  return kOk;
}

struct WitnessOpts {
  std::string instance, assignment, cover, cuts;
};

int runWitness(const WitnessOpts& o) {
  const ReductionInstance inst = instanceFromJson(readJsonFile(o.instance));
  const Assignment a = assignmentFromJson(readJsonFile(o.assignment));
  if (static_cast<int>(a.values.size()) != inst.formula.variableCount)
    throw JsonFormatError("assignment has " + std::to_string(a.values.size()) +
                          " values but the formula has " +
                          std::to_string(inst.formula.variableCount) +
                          " variables");
  const SegmentCover cover = assignmentToCover(inst, a);
  const CutSequence cuts = coverToGuillotine(inst, cover);
  writeJsonFile(o.cover, coverToJson(cover));
  writeJsonFile(o.cuts, cutsToJson(cuts));
  std::cout << "cover: " << cover.segments.size() << " segments -> " << o.cover
            << "\n";
  std::cout << "cuts: " << cuts.cuts.size() << " cuts -> " << o.cuts << "\n";
  return kOk;
}

struct VerifyOpts {
  std::string instance, cover, cuts, out;
  int limit = -1;  // -1: use the instance budget
};

int runVerify(const VerifyOpts& o) {
  if (o.cover.empty() == o.cuts.empty())
    throw CLI::ValidationError("verify needs exactly one of --cover / --cuts");
  const ReductionInstance inst = instanceFromJson(readJsonFile(o.instance));
  const int budget = o.limit >= 0 ? o.limit : inst.budget;
  const std::vector<Point> points = inst.plainPoints();
  Verdict verdict;
  if (!o.cover.empty()) {
    verdict = verifySegmentCover(points, coverFromJson(readJsonFile(o.cover)),
                                 budget);
  } else {
    verdict = verifyGuillotineSequence(
        points, cutsFromJson(readJsonFile(o.cuts)), budget);
  }
  if (!o.out.empty()) writeJsonFile(o.out, verdictToJson(verdict));
  if (verdict.accepted) {
    std::cout << "ACCEPT (budget " << budget << ")\n";
    return kOk;
  }
  std::cout << "REJECT " << violationCodeName(verdict.code);
  if (verdict.indexA >= 0) std::cout << " index_a=" << verdict.indexA;
  if (verdict.indexB >= 0) std::cout << " index_b=" << verdict.indexB;
  std::cout << ": " << verdict.detail << "\n";
  return kNegative;
}

struct OracleOpts {
  std::string points, instance, mode = "segments";
  std::string out = "oracle-report.json";
  int limit = 0;
  int capPoints = 0;
  int threads = 1;
};

int runOracle(const OracleOpts& o) {
  if (o.points.empty() == o.instance.empty())
    throw CLI::ValidationError(
        "oracle needs exactly one of --points / --instance");
  const std::vector<Point> pts =
      o.points.empty()
          ? instanceFromJson(readJsonFile(o.instance)).plainPoints()
          : pointsFromJson(readJsonFile(o.points));
  OracleCaps caps;
  if (o.capPoints > 0) {
    caps.maxSegmentPoints = o.capPoints;
    caps.maxGuillotinePoints = o.capPoints;
  }
  std::string result;
  Json witness;
  std::int64_t nodes = 0;
  if (o.mode == "segments") {
    const SegmentSearchResult r = minSegmentCover(pts, o.limit, caps);
    result = r.cover ? "FOUND" : "NONE";
    witness = r.cover ? coverToJson(*r.cover) : Json(nullptr);
    nodes = r.nodesExplored;
    if (r.cover)
      std::cout << "FOUND " << r.cover->segments.size() << " segments";
    else
      std::cout << "NONE: no disjoint cover with at most " << o.limit
                << " segments";
  } else {
    const GuillotineSearchResult r = boundedGuillotineSearch(pts, o.limit, caps);
    result = r.cuts ? "FOUND" : "NONE_IN_FAMILY";
    witness = r.cuts ? cutsToJson(*r.cuts) : Json(nullptr);
    nodes = r.nodesExplored;
    if (r.cuts)
      std::cout << "FOUND " << r.cuts->cuts.size() << " cuts";
    else
      std::cout << "NONE_IN_FAMILY: no sequence of at most " << o.limit
                << " cuts over the candidate line family";
  }
  std::cout << " (nodes=" << nodes << ")\n";
  writeJsonFile(o.out, oracleReportToJson(o.mode, o.limit, result, witness,
                                          nodes));
  return result == "FOUND" ? kOk : kNegative;
}

struct CertifyOpts {
  std::string formula, out;
  int capPoints = 0;
  int threads = 1;
};

int runCertify(const CertifyOpts& o) {
  const MonotoneFormula f = validate(formulaFromJson(readJsonFile(o.formula)));
  OracleCaps caps;
  if (o.capPoints > 0) caps.maxSegmentPoints = o.capPoints;
  const EquivalenceReport rep = certifyReduction(f, caps);
  const std::string verdict = rep.satisfiable ? "FOUND" : "NONE";
  Json witness;
  if (rep.satisfiable)
    witness = Json{{"assignment", assignmentToJson(*rep.model)},
                   {"cover", coverToJson(*rep.cover)}};
  if (!o.out.empty())
    writeJsonFile(o.out, oracleReportToJson("certify", rep.budget, verdict,
                                            witness, rep.nodesExplored));
  std::cout << (rep.satisfiable ? "SAT ∧ FOUND@" : "UNSAT ∧ NONE@")
            << rep.budget;
  if (rep.oracleSearched) std::cout << " (nodes=" << rep.nodesExplored << ")";
  std::cout << "\n";
  return kOk;
}

struct RenderOpts {
  std::string instance, cover, cuts, out;
  std::string scale = "1";
  std::vector<std::string> layers;
  bool labelCuts = true;
};

int runRender(const RenderOpts& o) {
  const ReductionInstance inst = instanceFromJson(readJsonFile(o.instance));
  std::optional<SegmentCover> cover;
  if (!o.cover.empty()) cover = coverFromJson(readJsonFile(o.cover));
  std::optional<CutSequence> cuts;
  if (!o.cuts.empty()) cuts = cutsFromJson(readJsonFile(o.cuts));
  RenderSpec spec;
  spec.scale = ratFromString(o.scale);
  spec.labelCuts = o.labelCuts;
  if (!o.layers.empty()) {
    spec.points = spec.drawing = spec.cover = spec.cuts = false;
    for (const std::string& layer : o.layers) {
      if (layer == "points")
        spec.points = true;
      else if (layer == "drawing")
        spec.drawing = true;
      else if (layer == "cover")
        spec.cover = true;
      else if (layer == "cuts")
        spec.cuts = true;
      else if (layer == "gadget-zoom")
        spec.gadgetZoom = true;
      else
        throw CLI::ValidationError("unknown layer \"" + layer +
                                   "\"; expected points, gadget-zoom, "
                                   "drawing, cover, cuts");
    }
  }
  const std::string svg = renderSvg(inst, cover ? &*cover : nullptr,
                                    cuts ? &*cuts : nullptr, spec);
  std::ofstream outFile(o.out, std::ios::binary);
  if (!outFile) throw CLI::ValidationError("cannot open " + o.out);
  outFile << svg;
  std::cout << "svg -> " << o.out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "coverlab: builds point-covering instances from planar monotone "
      "formulas, verifies segment covers and guillotine cut sequences, and "
      "certifies the SAT/cover equivalence with an exact search"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* genCmd =
      app.add_subcommand("gen", "build an instance from a formula");
  genCmd->add_option("--formula", gen.formula, "formula.json")
      ->required()
      ->check(CLI::ExistingFile);
  genCmd->add_option("--out", gen.out, "instance.json to write")->required();
  genCmd->add_option("--retries", gen.retries,
                     "construction retries, halving the offsets each time")
      ->check(CLI::PositiveNumber);

  SatOpts sat;
  CLI::App* satCmd =
      app.add_subcommand("sat", "decide satisfiability of a formula");
  satCmd->add_option("--formula", sat.formula, "formula.json")
      ->required()
      ->check(CLI::ExistingFile);
  satCmd->add_option("--out", sat.out, "assignment.json to write when SAT");

  WitnessOpts wit;
  CLI::App* witCmd = app.add_subcommand(
      "witness", "turn a satisfying assignment into a cover and cut sequence");
  witCmd->add_option("--instance", wit.instance, "instance.json")
      ->required()
      ->check(CLI::ExistingFile);
  witCmd->add_option("--assignment", wit.assignment, "assignment.json")
      ->required()
      ->check(CLI::ExistingFile);
  witCmd->add_option("--cover", wit.cover, "cover.json to write")->required();
  witCmd->add_option("--cuts", wit.cuts, "cuts.json to write")->required();

  VerifyOpts ver;
  CLI::App* verCmd = app.add_subcommand(
      "verify", "check a cover or cut sequence against an instance");
  verCmd->add_option("--instance", ver.instance, "instance.json")
      ->required()
      ->check(CLI::ExistingFile);
  verCmd->add_option("--cover", ver.cover, "cover.json to check")
      ->check(CLI::ExistingFile);
  verCmd->add_option("--cuts", ver.cuts, "cuts.json to check")
      ->check(CLI::ExistingFile);
  verCmd->add_option("--limit", ver.limit, "budget override")
      ->check(CLI::NonNegativeNumber);
  verCmd->add_option("--out", ver.out, "verdict.json to write");

  OracleOpts ora;
  CLI::App* oraCmd = app.add_subcommand(
      "oracle", "exhaustive bounded search for covers or cut sequences");
  oraCmd->add_option("--points", ora.points, "points.json")
      ->check(CLI::ExistingFile);
  oraCmd->add_option("--instance", ora.instance,
                     "instance.json (search its point set)")
      ->check(CLI::ExistingFile);
  oraCmd->add_option("--limit", ora.limit, "size bound to search under")
      ->required()
      ->check(CLI::NonNegativeNumber);
  oraCmd->add_option("--mode", ora.mode, "segments | guillotine")
      ->check(CLI::IsMember({"segments", "guillotine"}));
  oraCmd->add_option("--cap-points", ora.capPoints,
                     "override the point-count cap")
      ->check(CLI::PositiveNumber);
  oraCmd->add_option("--threads", ora.threads,
                     "worker threads (results are deterministic regardless)")
      ->check(CLI::PositiveNumber);
  oraCmd->add_option("--out", ora.out, "report path");

  CertifyOpts cert;
  CLI::App* certCmd = app.add_subcommand(
      "certify", "prove SAT with a verified cover or UNSAT with a "
                 "certified exhaustive search at the instance budget");
  certCmd->add_option("--formula", cert.formula, "formula.json")
      ->required()
      ->check(CLI::ExistingFile);
  certCmd->add_option("--cap-points", cert.capPoints,
                      "override the search point-count cap")
      ->check(CLI::PositiveNumber);
  certCmd->add_option("--threads", cert.threads,
                      "worker threads (results are deterministic regardless)")
      ->check(CLI::PositiveNumber);
  certCmd->add_option("--out", cert.out, "report path");

  RenderOpts ren;
  CLI::App* renCmd =
      app.add_subcommand("render", "emit an SVG picture of an instance");
  renCmd->add_option("--instance", ren.instance, "instance.json")
      ->required()
      ->check(CLI::ExistingFile);
  renCmd->add_option("--cover", ren.cover, "cover.json to draw")
      ->check(CLI::ExistingFile);
  renCmd->add_option("--cuts", ren.cuts, "cuts.json to draw")
      ->check(CLI::ExistingFile);
  renCmd->add_option("--out", ren.out, "svg path to write")->required();
  renCmd->add_option("--scale", ren.scale,
                     "pixels per unit multiplier, integer or p/q");
  renCmd
      ->add_option("--layers", ren.layers,
                   "layers to draw: points, gadget-zoom, drawing, cover, cuts")
      ->delimiter(',');
  renCmd->add_flag("--label-cuts,!--no-label-cuts", ren.labelCuts,
                   "number the cuts in sequence order");

  int rc = kOk;
  genCmd->callback([&] { rc = runGen(gen); });
  satCmd->callback([&] { rc = runSat(sat); });
  witCmd->callback([&] { rc = runWitness(wit); });
  verCmd->callback([&] { rc = runVerify(ver); });
  oraCmd->callback([&] { rc = runOracle(ora); });
  certCmd->callback([&] { rc = runCertify(cert); });
  renCmd->callback([&] { rc = runRender(ren); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const JsonFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormulaError& e) {
    std::cerr << "formula error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsatisfiedAssignment& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const OrderingFailure& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const ExtensionCollision& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const WitnessError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const InconsistentInputs& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const OracleInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const ReductionError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const TargetBlocked& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}
