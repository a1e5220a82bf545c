#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trireg/graph.hpp"

namespace trireg {

class ReductionError : public std::runtime_error {
public:
    explicit ReductionError(const std::string& what) : std::runtime_error(what) {}
};

// Monotone 3-CNF, variables 1-based.
struct PositiveCnf {
    int varCount = 0;
    std::vector<std::array<int, 3>> clauses;
};

enum class SatVariant { OneInThreeE4, NaeE4 };

struct FormulaCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

FormulaCheck validateFormula(const PositiveCnf& f, SatVariant variant);
std::vector<std::uint32_t> bruteForceSat(const PositiveCnf& f, SatVariant variant);  // bit i = var i+1

PositiveCnf parseFormula(std::istream& in);
PositiveCnf loadFormula(const std::string& path);
void saveFormula(const PositiveCnf& f, const std::string& path);

// Known unsatisfiable E4 fixtures (verified by bruteForceSat in tests):
// the NAE one extends a Fano-plane hypergraph to exact degree 4.
PositiveCnf unsatNaeE4Fixture();
std::optional<PositiveCnf> searchUnsatOneInThreeE4(int varCount, int attempts, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Gadget templates and the coloring-enumeration harness.

struct RcMode {
    std::vector<long long> r;  // per-color degree at every internal vertex
    std::vector<long long> c;  // per-color open-neighborhood edge count
};
struct FlipMode {};

struct ColoringMode {
    bool flip = false;
    RcMode rc;  // used when !flip
    static ColoringMode flipMode() { return ColoringMode{true, {}}; }
    static ColoringMode rcMode(std::vector<long long> r, std::vector<long long> c) {
        return ColoringMode{false, RcMode{std::move(r), std::move(c)}};
    }
};

struct GadgetTemplate {
    int vertexCount = 0;
    std::vector<std::pair<int, int>> edges;   // wiring, u < v
    std::vector<int> internalVertices;        // vertices whose constraints are enforced
    std::vector<int> attachmentVertices;
    std::vector<int> danglingCounts;          // per vertex, dangling half-edges
    bool danglersForcedBlue = false;          // boundary assumption
    std::vector<std::pair<int, int>> boundaryBlueEdges;  // wired edges pre-forced blue
    std::string requiredColorings;
    long long expectedColoringCount = -1;
};

void saveTemplate(const GadgetTemplate& t, const std::string& path);
GadgetTemplate loadTemplate(const std::string& path);

// The template expanded with one leaf vertex per dangling half-edge.
struct ExpandedGadget {
    int vertexCount = 0;
    std::vector<std::pair<int, int>> edges;  // template edges first, danglers after
    std::size_t templateEdgeCount = 0;
    std::vector<int> forced;  // per edge: 0 free, 1 red, 2 blue
    std::vector<bool> constrained;
};
ExpandedGadget expandGadget(const GadgetTemplate& t);

// All 2-colorings (1=red, 2=blue per edge of the expanded gadget) satisfying
// the mode's constraints at internal vertices. Throws when the search exceeds
// the node budget.
std::vector<std::vector<int>> enumerateGadgetColorings(const GadgetTemplate& t, const ColoringMode& mode,
                                                       long long budget = 50'000'000);

struct GadgetSearchSpec {
    int internalCount = 0;
    int internalDegree = 0;          // including danglers and attachment arms
    long long internalTriangles = -1;  // -1 = unconstrained
    int attachmentCount = 0;
    int attachmentDegree = 0;
    // require each attachment's neighbors to be pairwise adjacent (the merged
    // clause vertex draws its triangles from these closed wedges)
    bool attachmentWedgesClosed = false;
    bool allowDanglers = true;
    ColoringMode mode = ColoringMode::flipMode();
    long long requiredColoringCount = -1;  // -1 = any nonzero
};

std::optional<GadgetTemplate> searchGadget(const GadgetSearchSpec& spec, long long budget = 50'000'000);

// The concrete flip-side gadgets.
GadgetTemplate blueDanglerGeneratorTemplate();
// Auxiliary rigid gadget: vertex A joined to two triangles plus a matching
// between them; the glued host vertex is the unconstrained attachment.
GadgetTemplate auxGadgetTemplate();
GadgetTemplate flipVariableTemplate();
// Binary state carrier for the rc mode ((1,6),(1,2)): the {±1,±2} circulant
// ring, whose valid colorings are exactly the two alternating cycle matchings.
GadgetTemplate rcVariableRingTemplate();

// ---------------------------------------------------------------------------
// Reductions.

struct ReductionOutput {
    ColoredGraph graph;           // monochrome; colors are the solver's job
    int colorTarget = 2;
    int copyCount = 0;
    // vertexRole[v]: free-form label for diagnostics
    std::vector<std::string> vertexRole;
    // per copy and variable: the 8 cycle vertices
    std::vector<std::vector<std::array<int, 8>>> variableCycles;
    // per copy and clause: the L and R reader vertices
    std::vector<std::vector<std::pair<int, int>>> clauseReaders;
    std::vector<std::pair<int, int>> pairingLedger;  // pairing edges
};

// NAE reduction, paper layout: `copies` copies plus shared blue dangler
// generators, each generator sending one edge to each copy.
ReductionOutput buildFlipReduction(const PositiveCnf& f, int copies = 16);
// Single-copy variant with generator-absorbed pairing, for solver-scale tests.
ReductionOutput buildFlipCluster(const PositiveCnf& f);

// The 1-in-3 reduction with (r,c) = ((1,6),(1,2)) requires a variable gadget
// family that the counting identities rule out; this always throws with the
// obstruction, and searchGadget on the target spec returns nullopt. See the
// repository tests for the machine-checkable identity.
ReductionOutput buildRcReduction(const PositiveCnf& f);

// Edge coloring keyed by (u, v) with u < v.
using EdgeColoring = std::map<std::pair<int, int>, int>;

// Colors a flip reduction from a satisfying NAE assignment and verifies it.
ColoredGraph assignmentToColoring(const ReductionOutput& red, const PositiveCnf& f, std::uint32_t assignment);

// Reads the per-variable states of copy 0 back out of a colored graph.
std::uint32_t decodeFlipAssignment(const ReductionOutput& red, const ColoredGraph& colored);

struct SolveResult {
    enum class Kind { Colored, Unsat, Timeout } kind = Kind::Timeout;
    std::vector<int> colors;  // per edge of the input graph, 1..t
    long long nodes = 0;
};

// Backtracking 2-coloring solver with per-vertex budget propagation. The
// input's colors are ignored; only its adjacency matters.
SolveResult solveColoring(const ColoredGraph& g, const ColoringMode& mode, long long budget = 10'000'000);

}  // namespace trireg
