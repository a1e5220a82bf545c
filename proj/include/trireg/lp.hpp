#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trireg/graph.hpp"
#include "trireg/rational.hpp"

namespace trireg {

// Unordered color triple i <= j <= k, colors 1-based.
struct ColorTriple {
    int i = 1, j = 1, k = 1;
    friend bool operator==(const ColorTriple&, const ColorTriple&) = default;
    friend auto operator<=>(const ColorTriple&, const ColorTriple&) = default;
};

ColorTriple makeTriple(int a, int b, int c);
std::vector<ColorTriple> allTriples(int t);

// x_{ijk} >= 0 for each unordered triple; C(t+2,3) entries.
struct TriangleDensityVector {
    int t = 1;
    std::map<ColorTriple, Rational> values;

    Rational get(const ColorTriple& tr) const {
        auto it = values.find(tr);
        return it == values.end() ? Rational(0) : it->second;
    }
};

enum class Rel { Le, Eq };

struct Constraint {
    std::vector<Rational> coeffs;
    Rel rel = Rel::Le;
    Rational rhs;
    std::string label;
};

// All variables are implicitly >= 0.
struct RationalLinearSystem {
    std::vector<std::string> varNames;
    std::vector<Constraint> constraints;

    int varCount() const { return static_cast<int>(varNames.size()); }
    void addConstraint(std::vector<Rational> coeffs, Rel rel, Rational rhs, std::string label);
};

struct FarkasCertificate {
    // One multiplier per constraint row; rows with rel == Le have multiplier >= 0,
    // equality rows may carry either sign. varMultipliers are the (>= 0)
    // coefficients on the x_j >= 0 rows. Together they combine to 0 <= -1:
    //   sum_i rowMultipliers[i] * row_i  -  sum_j varMultipliers[j] * x_j  ==  (0 <= -1)
    std::vector<Rational> rowMultipliers;
    std::vector<Rational> varMultipliers;
};

struct FeasibilityResult {
    enum class Verdict { Feasible, Infeasible, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<Rational> witness;         // Feasible
    FarkasCertificate certificate;         // Infeasible
    std::vector<Rational> bestPoint;       // Unknown (cut loop exhausted)
    int cutRounds = 0;
};

// True iff the point satisfies every constraint exactly (and is nonnegative).
bool satisfiesSystem(const RationalLinearSystem& sys, const std::vector<Rational>& x);
// True iff the certificate exactly combines the rows to 0 <= -c with c > 0.
bool verifyCertificate(const RationalLinearSystem& sys, const FarkasCertificate& cert);

// Exact phase-1 simplex with Bland's rule. Never returns Unknown.
FeasibilityResult solveFeasibility(const RationalLinearSystem& sys);

// Necessary system for an (r,c)-triangle-regular t-colored graph.
// Variables: x_{ijk}, one per unordered triple.
RationalLinearSystem buildSystem(const std::vector<long long>& r, const std::vector<long long>& c);

// Exact per-color triangle counts of a graph, divided by n.
TriangleDensityVector graphDensityVector(const ColoredGraph& g);

// Fixed-degree flip system: variables are the triples followed by c_1..c_t.
// Encodes the necessary system plus the strict flip chain
// r[i]+c[i] >= r[i+1]+c[i+1]+1 (strictness as +1 on integer quantities).
RationalLinearSystem buildFlipSystem(const std::vector<long long>& r);

// Slack of the triangle-supersaturation constraint for color i (1-based):
//   r_i * sum_{j,k,l != i} x_{jkl}  -  C(r_i,3) * rho * (2*rho - 1),
// with rho = (sum_{j != i} x_{iij}) / C(r_i,2). nullopt when r_i < 3 (vacuous).
std::optional<Rational> supersaturationCheck(const std::vector<long long>& r, const TriangleDensityVector& x, int i);

// Tangent cut of the supersaturation constraint at `point`, valid for every
// density vector of a real graph (the right-hand side is convex). Systems
// built here lay the triple variables out first, in allTriples order.
Constraint supersaturationCut(const std::vector<long long>& r, int t, const std::vector<Rational>& point, int i,
                              int varCount);

// Iterated LP + supersaturation cuts. cutColors are 1-based.
FeasibilityResult refuteWithCuts(RationalLinearSystem sys, const std::vector<long long>& r,
                                 const std::vector<int>& cutColors, int maxRounds = 50);

struct FlipScanRow {
    std::vector<long long> r;
    FeasibilityResult::Verdict verdict;
    int cutRounds = 0;
};

struct FlipScanReport {
    std::vector<FlipScanRow> rows;
    long long feasibleCount = 0;
    long long infeasibleCount = 0;
    long long unknownCount = 0;
};

// Enumerates strictly increasing degree vectors with r[0] <= r1Max and
// r[t-1] <= rtMax, solving the fixed-degree flip system for each.
FlipScanReport flipBoundedScan(int t, long long r1Max, long long rtMax, bool withCuts = false, int threads = 1);

}  // namespace trireg
