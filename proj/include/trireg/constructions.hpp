#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trireg/abelian.hpp"
#include "trireg/graph.hpp"
#include "trireg/lp.hpp"

namespace trireg {

class ConstructionError : public std::runtime_error {
public:
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Multiset of clique sizes a_i >= 2 realizing r = sum(a_i - 1), c = sum C(a_i-1, 2).
struct CliqueProductPlan {
    std::vector<int> cliqueSizes;
    long long r() const;
    long long c() const;
};

// Exact DP: a plan exists iff the minimum total degree realizing c fits under r.
std::optional<CliqueProductPlan> cliqueProductDecompose(long long r, long long c);

// Group = product of Z_{a_i}; members are the elements nonzero in exactly one coordinate.
SymmetricSet buildCliqueProduct(const CliqueProductPlan& plan);

struct Theorem13Params {
    long long r = 0;
    long long x = 0;
    long long y = 0;
};

int theorem13Case(const Theorem13Params& p);  // 1, 2, or 3 from parity
// Lower/upper bounds of the admissible y-range (upper is floor(x^2/4 - 4 x^{3/2})).
long long theorem13YLower(long long x);
long long theorem13YUpper(long long x);

struct Theorem13Result {
    SymmetricSet set;
    int caseTag;
    long long targetC;    // C(r,2) - r*x/2 + y
    long long achievedC;  // additive triples / 2
    CliqueProductPlan innerPlan;
};

// strict = enforce the theorem's y-range; diagnostic mode only checks that the
// case shapes are constructible for the given parameters.
Theorem13Result theorem13GeneratingSet(const Theorem13Params& p, bool strict = true);

struct LpBuildReport {
    ColoredGraph graph;
    std::vector<long long> achievedC;
    std::vector<long long> requestedC;
    std::vector<long long> guaranteeFloor;  // floor(c_i / (8 t^3))
};

// Builds the near-sufficiency construction from a feasible density vector and
// pads with complete bipartite factors to reach the exact degrees.
LpBuildReport lpToGraph(const std::vector<long long>& r, const std::vector<long long>& c,
                        const TriangleDensityVector& x);

struct FlipConstructionReport {
    std::vector<ProfileTerm> factors;
    ProfileTerm total;
    bool flipValid = false;
    std::vector<long long> degrees;       // total.r
    std::vector<long long> closedCounts;  // total.c + total.r per color
};

// Three-color flip graph with a3 = (a1 - 2*ceil(sqrt(a1)))^2.
FlipConstructionReport flip3Construction(long long a1);

// t in {4,5,6}: scaled construction showing a_t unbounded; s generalizes the
// paper's scale constant. Composes with a small flip graph on colors 2..t.
FlipConstructionReport unboundedFlipConstruction(int t, long long s, int flipGraphVertexCap = 200000);

// Searches clique/bipartite factor combinations for a t-color flip graph with
// at most nMax vertices; materializes and verifies the winner.
std::optional<ColoredGraph> findFlipGraph(int t, long long nMax = 200000, long long budget = 5'000'000);

// Profile algebra for the same search without materialization.
struct FlipFactorPlan {
    // per color: optional clique size (>= 2) and bipartite half-degree (>= 0)
    std::vector<int> cliqueSize;
    std::vector<int> bipDegree;
    long long vertexCount = 0;
};
std::optional<FlipFactorPlan> findFlipFactorPlan(int t, long long nMax, long long budget);
ColoredGraph materializeFlipPlan(const FlipFactorPlan& plan, int t);

}  // namespace trireg
