// trireg: construct, verify, enumerate, and refute triangle-regular graphs,
// flip colorings, and their abelian Cayley realizations.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "trireg/abelian.hpp"
#include "trireg/constructions.hpp"
#include "trireg/graph.hpp"
#include "trireg/lp.hpp"
#include "trireg/reductions.hpp"
#include "trireg/spectrum.hpp"

using json = nlohmann::json;
using namespace trireg;

namespace {

// Exit codes: 0 success / feasible / verified, 1 verified negative
// (Infeasible / Unsat / NonUniform), 2 error, 3 unknown / timeout.
constexpr int kOk = 0, kNegative = 1, kError = 2, kUnknown = 3;

int defaultThreads() {
    if (const char* env = std::getenv("TRIREG_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Minimal structural validation against the checked-in report schema: every
// report carries "command" and "status" strings plus a "data" object.
void emitReport(bool wantJson, const json& report) {
    if (!wantJson) return;
    if (!report.contains("command") || !report["command"].is_string() || !report.contains("status") ||
        !report["status"].is_string() || !report.contains("data") || !report["data"].is_object())
        throw std::logic_error("internal: report does not match the schema");
    std::cout << report.dump(2) << "\n";
}

std::vector<long long> parseVec(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(std::stoll(piece));
    return out;
}

std::vector<int> parseVecInt(const std::string& s) {
    std::vector<int> out;
    for (long long v : parseVec(s)) out.push_back(static_cast<int>(v));
    return out;
}

SymmetricSet loadSymmetricSet(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AbelianError("cannot open " + path);
    std::string word;
    if (!(in >> word) || word != "group") throw AbelianError("expected 'group' header in " + path);
    std::string rest;
    std::getline(in, rest);
    std::vector<int> moduli;
    {
        std::stringstream ss(rest);
        int m;
        while (ss >> m) moduli.push_back(m);
    }
    if (!(in >> word) || word != "set") throw AbelianError("expected 'set <k>' in " + path);
    long long k;
    in >> k;
    std::vector<GroupElement> members;
    for (long long i = 0; i < k; ++i) {
        GroupElement e(moduli.size());
        for (auto& v : e)
            if (!(in >> v)) throw AbelianError("truncated set in " + path);
        members.push_back(std::move(e));
    }
    return SymmetricSet(AbelianGroup(moduli), std::move(members));
}

void saveSymmetricSet(const SymmetricSet& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw AbelianError("cannot open " + path + " for writing");
    out << "group";
    for (int m : s.group().moduli()) out << " " << m;
    out << "\nset " << s.size() << "\n";
    for (const auto& e : s.members()) {
        for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
        out << "\n";
    }
}

json profileJson(const RegularityCheck& check) {
    json j;
    j["uniform"] = check.uniform;
    if (check.uniform) {
        j["r"] = check.r;
        j["c"] = check.c;
    } else {
        j["witnessA"] = check.witnessA;
        j["witnessB"] = check.witnessB;
    }
    return j;
}

std::string fmtVec(const std::vector<long long>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"triangle-regular graph toolkit"};
    app.require_subcommand(1);
    bool wantJson = false;
    app.add_flag("--json", wantJson, "emit a JSON report on stdout");

    // ----- verify -----------------------------------------------------------
    std::string verifyPath;
    bool verifyFlip = false;
    auto* cmdVerify = app.add_subcommand("verify", "check triangle-regularity (or the flip condition) of a graph file");
    cmdVerify->add_option("graph", verifyPath)->required();
    cmdVerify->add_flag("--flip", verifyFlip, "check the flip condition instead");

    // ----- product ----------------------------------------------------------
    std::string prodA, prodB, prodOut;
    auto* cmdProduct = app.add_subcommand("product", "cartesian product of two graph files");
    cmdProduct->add_option("a", prodA)->required();
    cmdProduct->add_option("b", prodB)->required();
    cmdProduct->add_option("--out", prodOut)->required();

    // ----- construct --------------------------------------------------------
    auto* cmdConstruct = app.add_subcommand("construct", "paper constructions");
    cmdConstruct->require_subcommand(1);
    long long cpR = 0, cpC = 0;
    std::string cpOut, cpSetOut;
    auto* cmdClique = cmdConstruct->add_subcommand("clique-product", "clique-product realization of (r, c)");
    cmdClique->add_option("--r", cpR)->required();
    cmdClique->add_option("--c", cpC)->required();
    cmdClique->add_option("--out", cpOut, "write the cayley graph here");
    cmdClique->add_option("--set-out", cpSetOut, "write the generating set here");

    long long t13R = 0, t13X = 0, t13Y = 0;
    bool t13Diag = false;
    std::string t13SetOut;
    auto* cmdThm13 = cmdConstruct->add_subcommand("thm13", "near-clique Cayley construction");
    cmdThm13->add_option("--r", t13R)->required();
    cmdThm13->add_option("--x", t13X)->required();
    cmdThm13->add_option("--y", t13Y)->required();
    cmdThm13->add_flag("--diagnostic", t13Diag, "skip the theorem's y-range gate");
    cmdThm13->add_option("--set-out", t13SetOut);

    long long f3A1 = 0;
    auto* cmdFlip3 = cmdConstruct->add_subcommand("flip3", "three-color flip construction");
    cmdFlip3->add_option("--a1", f3A1)->required();

    int ufT = 4;
    long long ufScale = 3;
    auto* cmdUnbounded = cmdConstruct->add_subcommand("unbounded-flip", "unbounded-top-degree flip construction");
    cmdUnbounded->add_option("--t", ufT)->required();
    cmdUnbounded->add_option("--scale", ufScale);

    std::string lbR, lbC, lbOut;
    auto* cmdLpBuild = cmdConstruct->add_subcommand("lp-build", "build a graph from a feasible density vector");
    cmdLpBuild->add_option("--r", lbR)->required();
    cmdLpBuild->add_option("--c", lbC)->required();
    cmdLpBuild->add_option("--out", lbOut);

    // ----- spectrum ---------------------------------------------------------
    long long spR = 4;
    long long spMaxOrder = 40;
    int spThreads = defaultThreads();
    std::string spOut;
    bool spBand = false;
    auto* cmdSpectrum = app.add_subcommand("spectrum", "enumerate achievable c for abelian Cayley graphs of degree r");
    cmdSpectrum->add_option("--r", spR)->required();
    cmdSpectrum->add_option("--max-order", spMaxOrder);
    cmdSpectrum->add_option("--threads", spThreads);
    cmdSpectrum->add_option("--out", spOut, "write records as CSV");
    cmdSpectrum->add_flag("--band", spBand, "also run the forbidden-band check");

    // ----- lp ---------------------------------------------------------------
    auto* cmdLp = app.add_subcommand("lp", "exact rational feasibility");
    cmdLp->require_subcommand(1);
    std::string lpR, lpC;
    auto* cmdFeasible = cmdLp->add_subcommand("feasible", "necessary system for (r, c)");
    cmdFeasible->add_option("--r", lpR)->required();
    cmdFeasible->add_option("--c", lpC)->required();

    int fsT = 4;
    long long fsR1 = 2, fsRt = 60;
    bool fsCuts = false;
    int fsThreads = defaultThreads();
    auto* cmdScan = cmdLp->add_subcommand("flip-scan", "fixed-degree flip feasibility scan");
    cmdScan->add_option("--t", fsT)->required();
    cmdScan->add_option("--r1-max", fsR1);
    cmdScan->add_option("--rt-max", fsRt);
    cmdScan->add_flag("--cuts", fsCuts, "add supersaturation cuts");
    cmdScan->add_option("--threads", fsThreads);

    std::string cutR;
    int cutRounds = 50;
    auto* cmdCuts = cmdLp->add_subcommand("cuts", "cut-augmented refutation of a fixed-degree flip system");
    cmdCuts->add_option("--r", cutR)->required();
    cmdCuts->add_option("--max-rounds", cutRounds);

    // ----- reduce / solve ---------------------------------------------------
    std::string redVariant = "flip", redIn, redOut;
    int redCopies = 16;
    bool redCluster = false;
    auto* cmdReduce = app.add_subcommand("reduce", "build a hardness reduction from a pcnf formula");
    cmdReduce->add_option("--variant", redVariant)->check(CLI::IsMember({"rc", "flip"}));
    cmdReduce->add_option("--in", redIn)->required();
    cmdReduce->add_option("--out", redOut);
    cmdReduce->add_option("--copies", redCopies);
    cmdReduce->add_flag("--cluster", redCluster, "single-copy cluster variant");

    std::string solMode = "flip", solIn;
    long long solBudget = 10000000;
    std::string solRc = "1,6", solCc = "1,2";
    auto* cmdSolve = app.add_subcommand("solve", "search for a valid 2-coloring of a graph file");
    cmdSolve->add_option("--mode", solMode)->check(CLI::IsMember({"rc", "flip"}));
    cmdSolve->add_option("--in", solIn)->required();
    cmdSolve->add_option("--budget", solBudget);
    cmdSolve->add_option("--r", solRc, "rc mode degree targets");
    cmdSolve->add_option("--c", solCc, "rc mode neighborhood targets");

    // ----- subgroup / dft ---------------------------------------------------
    std::string sgGroup, sgSet;
    auto* cmdSubgroup = app.add_subcommand("subgroup", "approximate-subgroup procedure on a symmetric set");
    cmdSubgroup->add_option("--set", sgSet)->required();
    cmdSubgroup->add_option("--group", sgGroup, "cross-check the file's group moduli");

    std::string dftSet;
    auto* cmdDft = app.add_subcommand("dft", "Fourier coefficients of a symmetric set's indicator");
    cmdDft->add_option("--set", dftSet)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmdVerify) {
            auto g = loadGraph(verifyPath);
            json rep{{"command", "verify"}, {"status", ""}, {"data", json::object()}};
            if (verifyFlip) {
                auto check = checkFlip(g);
                rep["status"] = check.valid ? "valid" : "violation";
                rep["data"]["flipValid"] = check.valid;
                if (!check.valid) {
                    rep["data"]["vertex"] = check.violation->vertex;
                    rep["data"]["reason"] = check.violation->reason;
                    std::cout << "flip violation at vertex " << check.violation->vertex << ": "
                              << check.violation->reason << "\n";
                } else {
                    std::cout << "flip coloring valid\n";
                }
                emitReport(wantJson, rep);
                return check.valid ? kOk : kNegative;
            }
            auto check = checkTriangleRegular(g);
            rep["status"] = check.uniform ? "uniform" : "non-uniform";
            rep["data"] = profileJson(check);
            if (check.uniform)
                std::cout << "(r=" << fmtVec(check.r) << ", c=" << fmtVec(check.c) << ") uniform\n";
            else
                std::cout << "non-uniform: vertices " << check.witnessA << " and " << check.witnessB
                          << " have different profiles\n";
            emitReport(wantJson, rep);
            return check.uniform ? kOk : kNegative;
        }

        if (*cmdProduct) {
            auto g = cartesianProduct(loadGraph(prodA), loadGraph(prodB));
            saveGraph(g, prodOut);
            auto check = checkTriangleRegular(g);
            json rep{{"command", "product"}, {"status", "ok"}, {"data", profileJson(check)}};
            std::cout << "wrote " << prodOut << " (" << g.vertexCount() << " vertices)\n";
            emitReport(wantJson, rep);
            return kOk;
        }

        if (*cmdClique) {
            auto plan = cliqueProductDecompose(cpR, cpC);
            json rep{{"command", "construct clique-product"}, {"status", ""}, {"data", json::object()}};
            if (!plan) {
                rep["status"] = "none";
                std::cout << "no clique-product plan realizes (r=" << cpR << ", c=" << cpC << ")\n";
                emitReport(wantJson, rep);
                return kNegative;
            }
            rep["status"] = "ok";
            rep["data"]["cliqueSizes"] = plan->cliqueSizes;
            auto set = buildCliqueProduct(*plan);
            auto triples = additiveTriples(set);
            rep["data"]["tripleCount"] = triples.tripleCount;
            rep["data"]["c"] = triples.tripleCount / 2;
            std::cout << "plan:";
            for (int a : plan->cliqueSizes) std::cout << " K_" << a;
            std::cout << "  (c = " << triples.tripleCount / 2 << ")\n";
            if (!cpSetOut.empty()) saveSymmetricSet(set, cpSetOut);
            if (!cpOut.empty()) saveGraph(cayleyGraph(set), cpOut);
            emitReport(wantJson, rep);
            return kOk;
        }

        if (*cmdThm13) {
            auto res = theorem13GeneratingSet({t13R, t13X, t13Y}, !t13Diag);
            json rep{{"command", "construct thm13"}, {"status", "ok"}, {"data", json::object()}};
            rep["data"]["case"] = res.caseTag;
            rep["data"]["targetC"] = res.targetC;
            rep["data"]["achievedC"] = res.achievedC;
            rep["data"]["innerCliques"] = res.innerPlan.cliqueSizes;
            std::cout << "case " << res.caseTag << ": achieved c = " << res.achievedC << " (target " << res.targetC
                      << ")\n";
            if (!t13SetOut.empty()) saveSymmetricSet(res.set, t13SetOut);
            emitReport(wantJson, rep);
            return res.achievedC == res.targetC ? kOk : kNegative;
        }

        if (*cmdFlip3 || *cmdUnbounded) {
            auto repData = *cmdFlip3 ? flip3Construction(f3A1) : unboundedFlipConstruction(ufT, ufScale);
            json rep{{"command", *cmdFlip3 ? "construct flip3" : "construct unbounded-flip"},
                     {"status", repData.flipValid ? "flip-valid" : "not-flip-valid"},
                     {"data", json::object()}};
            rep["data"]["degrees"] = repData.degrees;
            rep["data"]["closedCounts"] = repData.closedCounts;
            json factors = json::array();
            for (const auto& f : repData.factors) factors.push_back(f.factorDescription);
            rep["data"]["factors"] = factors;
            std::cout << "degrees " << fmtVec(repData.degrees) << ", closed counts " << fmtVec(repData.closedCounts)
                      << (repData.flipValid ? " : flip-valid\n" : " : NOT flip-valid\n");
            emitReport(wantJson, rep);
            return repData.flipValid ? kOk : kNegative;
        }

        if (*cmdLpBuild) {
            auto r = parseVec(lbR);
            auto c = parseVec(lbC);
            auto sys = buildSystem(r, c);
            auto sol = solveFeasibility(sys);
            json rep{{"command", "construct lp-build"}, {"status", ""}, {"data", json::object()}};
            if (sol.verdict != FeasibilityResult::Verdict::Feasible) {
                rep["status"] = "infeasible";
                std::cout << "necessary system infeasible; nothing to build\n";
                emitReport(wantJson, rep);
                return kNegative;
            }
            TriangleDensityVector x;
            x.t = static_cast<int>(r.size());
            auto triples = allTriples(x.t);
            for (std::size_t i = 0; i < triples.size(); ++i) x.values[triples[i]] = sol.witness[i];
            auto built = lpToGraph(r, c, x);
            rep["status"] = "ok";
            rep["data"]["achievedC"] = built.achievedC;
            rep["data"]["requestedC"] = built.requestedC;
            rep["data"]["guaranteeFloor"] = built.guaranteeFloor;
            rep["data"]["vertices"] = built.graph.vertexCount();
            std::cout << "built " << built.graph.vertexCount() << " vertices, achieved c' = "
                      << fmtVec(built.achievedC) << " of requested " << fmtVec(built.requestedC) << "\n";
            if (!lbOut.empty()) saveGraph(built.graph, lbOut);
            emitReport(wantJson, rep);
            return kOk;
        }

        if (*cmdSpectrum) {
            json rep{{"command", "spectrum"}, {"status", "ok"}, {"data", json::object()}};
            auto records = spectrumForR(spR, static_cast<std::uint64_t>(spMaxOrder), spThreads);
            std::vector<long long> cs;
            for (const auto& r : records) cs.push_back(r.c);
            rep["data"]["r"] = spR;
            rep["data"]["achievedC"] = cs;
            std::cout << "r = " << spR << ": achieved c " << fmtVec(cs) << "\n";
            if (!spOut.empty()) emitSpectrumCsv(records, spOut);
            if (spBand) {
                auto band = forbiddenBandCheck(spR, static_cast<std::uint64_t>(spMaxOrder), spThreads);
                rep["data"]["bandLo"] = band.bandLo;
                rep["data"]["bandHi"] = band.bandHi;
                rep["data"]["violations"] = band.violations;
                std::cout << "forbidden band [" << band.bandLo << ", " << band.bandHi << "]: "
                          << (band.violations.empty() ? "no witnesses (consistent)" : "VIOLATED") << "\n";
                emitReport(wantJson, rep);
                return band.violations.empty() ? kOk : kNegative;
            }
            emitReport(wantJson, rep);
            return kOk;
        }

        if (*cmdFeasible) {
            auto sys = buildSystem(parseVec(lpR), parseVec(lpC));
            auto res = solveFeasibility(sys);
            json rep{{"command", "lp feasible"}, {"status", ""}, {"data", json::object()}};
            if (res.verdict == FeasibilityResult::Verdict::Feasible) {
                rep["status"] = "feasible";
                json w = json::object();
                for (int j = 0; j < sys.varCount(); ++j) w[sys.varNames[j]] = toString(res.witness[j]);
                rep["data"]["witness"] = w;
                std::cout << "feasible\n";
                for (int j = 0; j < sys.varCount(); ++j)
                    if (res.witness[j] != 0) std::cout << "  " << sys.varNames[j] << " = " << toString(res.witness[j]) << "\n";
                emitReport(wantJson, rep);
                return kOk;
            }
            rep["status"] = "infeasible";
            json mult = json::array();
            for (std::size_t i = 0; i < res.certificate.rowMultipliers.size(); ++i)
                if (res.certificate.rowMultipliers[i] != 0)
                    mult.push_back({{"row", sys.constraints[i].label}, {"multiplier", toString(res.certificate.rowMultipliers[i])}});
            rep["data"]["farkas"] = mult;
            rep["data"]["verified"] = verifyCertificate(sys, res.certificate);
            std::cout << "infeasible; farkas certificate:\n";
            for (std::size_t i = 0; i < res.certificate.rowMultipliers.size(); ++i)
                if (res.certificate.rowMultipliers[i] != 0)
                    std::cout << "  " << toString(res.certificate.rowMultipliers[i]) << " x " << sys.constraints[i].label
                              << "\n";
            emitReport(wantJson, rep);
            return kNegative;
        }

        if (*cmdScan) {
            auto repData = flipBoundedScan(fsT, fsR1, fsRt, fsCuts, fsThreads);
            json rep{{"command", "lp flip-scan"}, {"status", "ok"}, {"data", json::object()}};
            rep["data"]["rows"] = repData.rows.size();
            rep["data"]["feasible"] = repData.feasibleCount;
            rep["data"]["infeasible"] = repData.infeasibleCount;
            rep["data"]["unknown"] = repData.unknownCount;
            json feas = json::array();
            for (const auto& row : repData.rows)
                if (row.verdict == FeasibilityResult::Verdict::Feasible) feas.push_back(row.r);
            rep["data"]["feasibleRows"] = feas;
            std::cout << repData.rows.size() << " degree vectors: " << repData.feasibleCount << " feasible, "
                      << repData.infeasibleCount << " infeasible, " << repData.unknownCount << " unknown\n";
            emitReport(wantJson, rep);
            if (repData.unknownCount > 0) return kUnknown;
            return repData.feasibleCount == 0 ? kNegative : kOk;
        }

        if (*cmdCuts) {
            auto r = parseVec(cutR);
            std::vector<int> colors;
            for (int i = 1; i <= static_cast<int>(r.size()); ++i)
                if (r[i - 1] >= 3) colors.push_back(i);
            auto res = refuteWithCuts(buildFlipSystem(r), r, colors, cutRounds);
            json rep{{"command", "lp cuts"}, {"status", ""}, {"data", json::object()}};
            rep["data"]["cutRounds"] = res.cutRounds;
            switch (res.verdict) {
                case FeasibilityResult::Verdict::Infeasible:
                    rep["status"] = "infeasible";
                    std::cout << "refuted after " << res.cutRounds << " cut rounds\n";
                    emitReport(wantJson, rep);
                    return kNegative;
                case FeasibilityResult::Verdict::Feasible:
                    rep["status"] = "feasible";
                    std::cout << "feasible for the cut-augmented system (" << res.cutRounds << " rounds)\n";
                    emitReport(wantJson, rep);
                    return kOk;
                default:
                    rep["status"] = "unknown";
                    std::cout << "round cap reached without a verdict\n";
                    emitReport(wantJson, rep);
                    return kUnknown;
            }
        }

        if (*cmdReduce) {
            auto f = loadFormula(redIn);
            json rep{{"command", "reduce"}, {"status", "ok"}, {"data", json::object()}};
            if (redVariant == "rc") {
                buildRcReduction(f);  // throws with the obstruction
                return kError;
            }
            auto red = redCluster ? buildFlipCluster(f) : buildFlipReduction(f, redCopies);
            rep["data"]["vertices"] = red.graph.vertexCount();
            rep["data"]["edges"] = red.graph.edges().size();
            rep["data"]["copies"] = red.copyCount;
            rep["data"]["pairingEdges"] = red.pairingLedger.size();
            std::cout << "built flip reduction: " << red.graph.vertexCount() << " vertices, "
                      << red.graph.edges().size() << " edges, " << red.copyCount << " copies\n";
            if (!redOut.empty()) saveGraph(red.graph, redOut);
            emitReport(wantJson, rep);
            return kOk;
        }

        if (*cmdSolve) {
            auto g = loadGraph(solIn);
            ColoringMode mode = solMode == "flip" ? ColoringMode::flipMode()
                                                  : ColoringMode::rcMode(parseVec(solRc), parseVec(solCc));
            auto res = solveColoring(g, mode, solBudget);
            json rep{{"command", "solve"}, {"status", ""}, {"data", json::object()}};
            rep["data"]["nodes"] = res.nodes;
            switch (res.kind) {
                case SolveResult::Kind::Colored:
                    rep["status"] = "colored";
                    std::cout << "found a valid coloring in " << res.nodes << " nodes\n";
                    emitReport(wantJson, rep);
                    return kOk;
                case SolveResult::Kind::Unsat:
                    rep["status"] = "unsat";
                    std::cout << "no valid coloring exists (exhausted in " << res.nodes << " nodes)\n";
                    emitReport(wantJson, rep);
                    return kNegative;
                default:
                    rep["status"] = "timeout";
                    std::cout << "budget exhausted after " << res.nodes << " nodes\n";
                    emitReport(wantJson, rep);
                    return kUnknown;
            }
        }

        if (*cmdSubgroup) {
            auto s = loadSymmetricSet(sgSet);
            if (!sgGroup.empty() && parseVecInt(sgGroup) != s.group().moduli())
                throw AbelianError("--group does not match the set file's group");
            auto res = approxSubgroup(s);
            json rep{{"command", "subgroup"}, {"status", "ok"}, {"data", json::object()}};
            rep["data"]["epsilon"] = res.epsilon.str();
            rep["data"]["setSize"] = s.size();
            rep["data"]["subgroupSize"] = res.subgroup.size();
            rep["data"]["sizeRatio"] = res.sizeRatio.str();
            rep["data"]["overlapRatio"] = res.overlapRatio.str();
            rep["data"]["superGoodCount"] = res.superGoodCount;
            long long overlapCount = res.overlapRatio.num * (s.size() / res.overlapRatio.den);
            rep["data"]["overlapCount"] = overlapCount;
            std::cout << "eps = " << res.epsilon.str() << ", |S| = " << s.size() << ", |H| = " << res.subgroup.size()
                      << ", |H n S| = " << overlapCount << ", |H n S|/|S| = " << res.overlapRatio.str()
                      << ", |H|/|S| = " << res.sizeRatio.str() << "\n";
            emitReport(wantJson, rep);
            return kOk;
        }

        if (*cmdDft) {
            auto s = loadSymmetricSet(dftSet);
            auto coeffs = dftIndicator(s);
            auto [chi, value] = maxNontrivialCoefficient(s);
            json rep{{"command", "dft"}, {"status", "ok"}, {"data", json::object()}};
            rep["data"]["trivialCoefficient"] = coeffs[0];
            rep["data"]["maxNontrivial"] = value;
            rep["data"]["maxImaginary"] = maxImaginaryPart(s);
            std::cout << "hat1_S(triv) = " << coeffs[0] << ", max nontrivial = " << value << " at chi index ";
            for (std::size_t j = 0; j < chi.index.size(); ++j) std::cout << (j ? "," : "") << chi.index[j];
            std::cout << "\n";
            emitReport(wantJson, rep);
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
