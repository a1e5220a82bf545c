#include "trireg/constructions.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>

namespace trireg {

namespace {

long long choose2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

long long isqrtFloor(long long n) {
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

long long ceilSqrt(long long n) {
    long long r = isqrtFloor(n);
    return r * r == n ? r : r + 1;
}

}  // namespace

long long CliqueProductPlan::r() const {
    long long sum = 0;
    for (int a : cliqueSizes) sum += a - 1;
    return sum;
}

long long CliqueProductPlan::c() const {
    long long sum = 0;
    for (int a : cliqueSizes) sum += choose2(a - 1);
    return sum;
}

std::optional<CliqueProductPlan> cliqueProductDecompose(long long r, long long c) {
    if (r < 0 || c < 0) throw ConstructionError("negative parameters");
    if (c > choose2(r)) throw ConstructionError("c exceeds C(r,2)");
    // f[v] = minimum sum of parts b >= 2 with sum C(b,2) = v; remaining degree
    // is filled with b = 1 parts (K_2 factors), which add no triangles.
    const long long cap = c;
    std::vector<long long> f(cap + 1, -1);
    std::vector<int> parent(cap + 1, 0);
    f[0] = 0;
    for (long long b = 2; choose2(b) <= cap; ++b) {
        long long w = choose2(b);
        for (long long v = w; v <= cap; ++v) {
            if (f[v - w] < 0) continue;
            long long cand = f[v - w] + b;
            if (f[v] < 0 || cand < f[v]) {
                f[v] = cand;
                parent[v] = static_cast<int>(b);
            }
        }
    }
    if (f[c] < 0 || f[c] > r) return std::nullopt;
    CliqueProductPlan plan;
    long long v = c;
    while (v > 0) {
        int b = parent[v];
        plan.cliqueSizes.push_back(b + 1);
        v -= choose2(b);
    }
    for (long long left = r - f[c]; left > 0; --left) plan.cliqueSizes.push_back(2);
    std::sort(plan.cliqueSizes.rbegin(), plan.cliqueSizes.rend());
    return plan;
}

SymmetricSet buildCliqueProduct(const CliqueProductPlan& plan) {
    if (plan.cliqueSizes.empty()) throw ConstructionError("empty clique-product plan");
    std::vector<int> moduli(plan.cliqueSizes.begin(), plan.cliqueSizes.end());
    AbelianGroup g(moduli);
    std::vector<GroupElement> members;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        for (int v = 1; v < moduli[i]; ++v) {
            GroupElement e(moduli.size(), 0);
            e[i] = v;
            members.push_back(e);
        }
    }
    return SymmetricSet(std::move(g), std::move(members));
}

int theorem13Case(const Theorem13Params& p) {
    if (p.x % 2 == 0) return 1;
    long long m = ((2 * p.r - p.x) % 4 + 4) % 4;
    if (m == 3) return 2;
    if (m == 1) return 3;
    throw ConstructionError("unreachable parity");
}

long long theorem13YLower(long long x) {
    // ceil(x^2/8) + 3x
    return (x * x + 7) / 8 + 3 * x;
}

long long theorem13YUpper(long long x) {
    // largest y with x^2/4 - y >= 4 x^{3/2}, i.e. (x^2 - 4y)^2 >= 256 x^3
    if (x < 0) return -1;
    auto ok = [&](long long y) {
        long long d = x * x - 4 * y;
        if (d < 0) return false;
        return static_cast<__int128>(d) * d >= static_cast<__int128>(256) * x * x * x;
    };
    if (!ok(0)) return -1;
    long long lo = 0, hi = x * x / 4;
    while (lo < hi) {
        long long mid = lo + (hi - lo + 1) / 2;
        if (ok(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Theorem13Result theorem13GeneratingSet(const Theorem13Params& p, bool strict) {
    if (p.x < 0 || p.x > p.r) throw ConstructionError("requires 0 <= x <= r");
    if ((p.r * p.x) % 2 != 0) throw ConstructionError("r*x must be even for an integral c");
    if (strict) {
        long long lo = theorem13YLower(p.x), hi = theorem13YUpper(p.x);
        if (lo > hi) throw ConstructionError("empty y-range for x = " + std::to_string(p.x));
        if (p.y < lo || p.y > hi)
            throw ConstructionError("y outside the admissible range [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }
    const int tag = theorem13Case(p);
    long long targetC = choose2(p.r) - p.r * p.x / 2 + p.y;

    long long outerMod = 0, innerR = 0;
    std::vector<long long> excluded;
    switch (tag) {
        case 1:
            outerMod = p.r - p.x / 2 + 1;
            innerR = p.x / 2;
            break;
        case 2:
            outerMod = (2 * p.r - p.x + 5) / 2;
            excluded = {(2 * p.r - p.x + 5) / 4};
            innerR = (p.x - 1) / 2;
            break;
        case 3:
            outerMod = (2 * p.r - p.x + 11) / 2;
            excluded = {(2 * p.r - p.x + 7) / 4, (2 * p.r - p.x + 11) / 4, (2 * p.r - p.x + 15) / 4};
            innerR = (p.x - 3) / 2;
            break;
    }
    if (outerMod < 2) throw ConstructionError("outer group collapses");
    if (innerR < 0) throw ConstructionError("negative inner degree");
    for (long long e : excluded)
        if (e <= 0 || e >= outerMod) throw ConstructionError("excluded residue out of range");
    if (tag == 3) {
        // The removed triple must be sum-free so the removed 3-factor is triangle-free.
        for (long long a : excluded)
            for (long long b : excluded)
                for (long long s : excluded)
                    if ((a + b) % outerMod == s % outerMod)
                        throw ConstructionError("removed set is not sum-free at modulus " + std::to_string(outerMod));
    }

    long long outerDeg = outerMod - 1 - static_cast<long long>(excluded.size());
    long long innerC = targetC;
    {
        // outer open-neighborhood count, computed by direct pair counting below;
        // inner budget k = targetC - outerC.
        AbelianGroup outer({static_cast<int>(outerMod)});
        std::vector<GroupElement> outerMembers;
        for (long long v = 1; v < outerMod; ++v)
            if (std::find(excluded.begin(), excluded.end(), v) == excluded.end())
                outerMembers.push_back({static_cast<int>(v)});
        SymmetricSet outerSet(outer, outerMembers);
        long long outerC = additiveTriples(outerSet).tripleCount / 2;
        innerC -= outerC;
    }
    if (innerC < 0) throw ConstructionError("inner triangle budget is negative (y too small for the case shape)");
    auto innerPlan = cliqueProductDecompose(innerR, innerC);
    if (!innerPlan)
        throw ConstructionError("no clique-product realization of inner (" + std::to_string(innerR) + ", " +
                                std::to_string(innerC) + ")");
    if (innerPlan->cliqueSizes.empty() && innerR > 0) throw ConstructionError("inner plan collapsed");

    // Assemble the product generating set: outer coordinate 0, inner coordinates after.
    std::vector<int> moduli{static_cast<int>(outerMod)};
    for (int a : innerPlan->cliqueSizes) moduli.push_back(a);
    AbelianGroup g(moduli);
    std::vector<GroupElement> members;
    for (long long v = 1; v < outerMod; ++v) {
        if (std::find(excluded.begin(), excluded.end(), v) != excluded.end()) continue;
        GroupElement e(moduli.size(), 0);
        e[0] = static_cast<int>(v);
        members.push_back(e);
    }
    for (std::size_t i = 0; i < innerPlan->cliqueSizes.size(); ++i) {
        for (int v = 1; v < innerPlan->cliqueSizes[i]; ++v) {
            GroupElement e(moduli.size(), 0);
            e[i + 1] = v;
            members.push_back(e);
        }
    }
    SymmetricSet set(std::move(g), std::move(members));
    if (set.size() != p.r) throw ConstructionError("generating set has wrong size");
    long long achieved = additiveTriples(set).tripleCount / 2;
    if (strict && achieved != targetC)
        throw ConstructionError("achieved c " + std::to_string(achieved) + " != target " + std::to_string(targetC));
    (void)outerDeg;
    return Theorem13Result{std::move(set), tag, targetC, achieved, *innerPlan};
}

namespace {

// One G_T factor of the near-sufficiency construction, or nullopt if it collapses.
std::optional<ColoredGraph> buildTripleFactor(const std::vector<long long>& r, int t, const ColorTriple& tr,
                                              const Rational& x) {
    if (x <= 0) return std::nullopt;
    const long long t2 = static_cast<long long>(t) * t;
    if (tr.i == tr.j && tr.j == tr.k) {
        int i = tr.i;
        // per-vertex triangle share of this triple is 3*x_iii; the largest
        // clique size y with C(y-1, 2) <= 3*x_iii realizes up to that share
        Rational budget = 3 * x;
        long long size = 2;
        while (Rational(choose2(size)) <= budget) ++size;
        size = std::min(size, r[i - 1] / t2 + 1);
        if (size < 2) return std::nullopt;
        return completeGraph(static_cast<int>(size), i, t);
    }
    // distinct or doubled colors: four parts with j-colored and k-colored
    // complete bipartite pairs and an i-colored regular bipartite pair
    int ci, cj, ck;
    bool halve = false;
    if (tr.i == tr.j || tr.j == tr.k) {
        // doubled color plays both the i and j roles
        int dbl = tr.i == tr.j ? tr.i : tr.j;
        int other = tr.i == tr.j ? tr.k : tr.i;
        ci = dbl;
        cj = dbl;
        ck = other;
        halve = true;
    } else {
        // all distinct: sort roles by degree, smallest degree takes the sparse pair
        std::vector<int> cs{tr.i, tr.j, tr.k};
        std::sort(cs.begin(), cs.end(), [&](int a, int b) { return r[a - 1] < r[b - 1]; });
        ci = cs[0];
        cj = cs[1];
        ck = cs[2];
    }
    long long d = r[ci - 1] / t2;
    long long partCap = r[cj - 1] / t2;
    long long y;
    if (d == 0)
        y = partCap;
    else {
        // largest y with 2*y*d <= x, capped at the part size it will be min'd with
        Rational lim = x / (2 * d);
        y = 0;
        while (y < partCap && Rational(y + 1) <= lim) ++y;
    }
    long long part = std::min(y, partCap);
    if (halve) part /= 2;
    if (part < 1) return std::nullopt;
    long long dreg = std::min(d, part);
    const int P = static_cast<int>(part);
    std::vector<Edge> edges;
    auto vid = [P](int partIdx, int v) { return partIdx * P + v; };
    auto addComplete = [&](int pa, int pb, int color) {
        for (int u = 0; u < P; ++u)
            for (int v = 0; v < P; ++v) {
                int a = vid(pa, u), b = vid(pb, v);
                edges.push_back({std::min(a, b), std::max(a, b), color});
            }
    };
    auto addRegular = [&](int pa, int pb, int color) {
        for (int u = 0; u < P; ++u)
            for (long long s = 0; s < dreg; ++s) {
                int a = vid(pa, u), b = vid(pb, static_cast<int>((u + s) % P));
                edges.push_back({std::min(a, b), std::max(a, b), color});
            }
    };
    addComplete(0, 1, cj);
    addComplete(2, 3, cj);
    addComplete(0, 2, ck);
    addComplete(1, 3, ck);
    if (dreg > 0) {
        addRegular(0, 3, ci);
        addRegular(1, 2, ci);
    }
    return ColoredGraph(t, 4 * P, std::move(edges));
}

}  // namespace

LpBuildReport lpToGraph(const std::vector<long long>& r, const std::vector<long long>& c,
                        const TriangleDensityVector& x) {
    const int t = static_cast<int>(r.size());
    if (c.size() != r.size()) throw ConstructionError("r and c must have equal lengths");
    // Precondition: x satisfies the necessary system for (r, c).
    {
        auto sys = buildSystem(r, c);
        auto triples = allTriples(t);
        std::vector<Rational> point;
        for (const auto& tr : triples) point.push_back(x.get(tr));
        if (!satisfiesSystem(sys, point))
            throw ConstructionError("density vector does not satisfy the necessary system for (r, c)");
    }

    ColoredGraph acc = singleVertex(t);
    for (const auto& tr : allTriples(t)) {
        auto factor = buildTripleFactor(r, t, tr, x.get(tr));
        if (!factor) continue;
        auto check = checkTriangleRegular(*factor);
        if (!check.uniform) throw ConstructionError("triple factor is not triangle-regular");
        acc = cartesianProduct(acc, *factor);
    }
    // Pad each color with a complete bipartite factor up to the exact degree.
    auto profile = checkTriangleRegular(acc);
    if (!profile.uniform) throw ConstructionError("product of factors is not triangle-regular");
    for (int i = 1; i <= t; ++i) {
        long long deficit = r[i - 1] - profile.r[i - 1];
        if (deficit < 0) throw ConstructionError("factor degrees exceed the requested r");
        if (deficit > 0)
            acc = cartesianProduct(acc, completeBipartite(static_cast<int>(deficit), static_cast<int>(deficit), i, t));
    }
    auto finalCheck = checkTriangleRegular(acc);
    if (!finalCheck.uniform) throw ConstructionError("padded product is not triangle-regular");
    LpBuildReport report{std::move(acc), finalCheck.c, c, {}};
    for (int i = 0; i < t; ++i) {
        long long tcube = 8LL * t * t * t;
        report.guaranteeFloor.push_back(c[i] / tcube);
        if (report.achievedC[i] > c[i])
            throw ConstructionError("achieved c exceeds the requested c in color " + std::to_string(i + 1));
        if (report.achievedC[i] < report.guaranteeFloor[i])
            throw ConstructionError("construction collapsed below the floor(c/8t^3) guarantee in color " +
                                    std::to_string(i + 1) + " (degree too small relative to t^2)");
    }
    if (finalCheck.r != r) throw ConstructionError("padded product has wrong degrees");
    return report;
}

namespace {

ProfileTerm termOf(const ColoredGraph& g, const std::string& desc) {
    auto check = checkTriangleRegular(g);
    if (!check.uniform) throw ConstructionError("factor is not triangle-regular: " + desc);
    return ProfileTerm{check.r, check.c, desc};
}

bool flipValidProfile(const ProfileTerm& total) {
    const std::size_t t = total.r.size();
    for (std::size_t i = 0; i + 1 < t; ++i) {
        if (!(total.r[i] < total.r[i + 1])) return false;
        long long ci = total.c[i] + total.r[i];
        long long cj = total.c[i + 1] + total.r[i + 1];
        if (!(ci > cj)) return false;
    }
    return true;
}

FlipConstructionReport buildReport(std::vector<ProfileTerm> factors) {
    FlipConstructionReport rep;
    rep.factors = std::move(factors);
    rep.total = rep.factors.front();
    for (std::size_t i = 1; i < rep.factors.size(); ++i) rep.total = addProfiles(rep.total, rep.factors[i]);
    rep.flipValid = flipValidProfile(rep.total);
    rep.degrees = rep.total.r;
    for (std::size_t i = 0; i < rep.total.r.size(); ++i) rep.closedCounts.push_back(rep.total.c[i] + rep.total.r[i]);
    return rep;
}

}  // namespace

FlipConstructionReport flip3Construction(long long a1) {
    if (a1 < 9) throw ConstructionError("flip3 construction requires a1 >= 9");
    const long long q = ceilSqrt(a1);
    const long long m = a1 - 2 * q + 1;
    const long long d = a1 - 2 * q;
    if (m < 2 || d < 1) throw ConstructionError("factor size underflow");

    // Two color-1 cliques K_m joined by a color-2 complete bipartite graph.
    std::vector<Edge> es;
    const int mi = static_cast<int>(m);
    for (int u = 0; u < mi; ++u)
        for (int v = u + 1; v < mi; ++v) {
            es.push_back({u, v, 1});
            es.push_back({mi + u, mi + v, 1});
        }
    for (int u = 0; u < mi; ++u)
        for (int v = 0; v < mi; ++v) es.push_back({u, mi + v, 2});
    ColoredGraph twoCliques(3, 2 * mi, std::move(es));

    std::vector<ProfileTerm> factors;
    factors.push_back(termOf(twoCliques, "two K_" + std::to_string(m) + " cliques (color 1) + bipartite join (color 2)"));
    factors.push_back(termOf(completeGraph(static_cast<int>(2 * q + 1), 1, 3), "K_" + std::to_string(2 * q + 1) + " color 1"));
    factors.push_back(termOf(completeBipartite(static_cast<int>(2 * q), static_cast<int>(2 * q), 2, 3),
                             "K_{" + std::to_string(2 * q) + "," + std::to_string(2 * q) + "} color 2"));
    factors.push_back(termOf(completeBipartite(static_cast<int>(d * d), static_cast<int>(d * d), 3, 3),
                             "K_{" + std::to_string(d * d) + "," + std::to_string(d * d) + "} color 3"));
    return buildReport(std::move(factors));
}

std::optional<FlipFactorPlan> findFlipFactorPlan(int t, long long nMax, long long budget) {
    if (t < 1) return std::nullopt;
    // Per-color candidate factors: a clique K_a (color degree a-1, closed count
    // C(a,2)) optionally crossed with a complete bipartite K_{q,q} (degree and
    // closed count +q). Ordered by vertex-count multiplier for branch & bound.
    struct Cand {
        int a, q;
        long long d, k, mult;
    };
    std::vector<Cand> cands;
    const int aCap = 12, qCap = 24;
    for (int a = 0; a <= aCap; ++a) {
        if (a == 1) continue;
        for (int q = 0; q <= qCap; ++q) {
            long long d = (a >= 2 ? a - 1 : 0) + q;
            long long k = (a >= 2 ? static_cast<long long>(a) * (a - 1) / 2 : 0) + q;
            if (d < 1) continue;
            long long mult = (a >= 2 ? a : 1) * (q > 0 ? 2LL * q : 1LL);
            cands.push_back({a, q, d, k, mult});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.mult < y.mult; });

    FlipFactorPlan best;
    best.vertexCount = -1;
    FlipFactorPlan cur;
    cur.cliqueSize.assign(t, 0);
    cur.bipDegree.assign(t, 0);
    long long nodes = 0;

    std::function<void(int, long long, long long, long long)> rec = [&](int color, long long dPrev, long long kPrev,
                                                                        long long size) {
        if (nodes++ > budget) return;
        if (color == t) {
            if (best.vertexCount < 0 || size < best.vertexCount) {
                best = cur;
                best.vertexCount = size;
            }
            return;
        }
        for (const auto& cand : cands) {
            long long sz = size * cand.mult;
            if (sz > nMax) break;
            if (best.vertexCount >= 0 && sz >= best.vertexCount) break;
            if (cand.d <= dPrev) continue;
            if (cand.k >= kPrev) continue;
            cur.cliqueSize[color] = cand.a;
            cur.bipDegree[color] = cand.q;
            rec(color + 1, cand.d, cand.k, sz);
        }
    };
    rec(0, 0, LLONG_MAX, 1);
    if (best.vertexCount < 0) return std::nullopt;
    return best;
}

ColoredGraph materializeFlipPlan(const FlipFactorPlan& plan, int t) {
    ColoredGraph acc = singleVertex(t);
    for (int i = 0; i < t; ++i) {
        if (plan.cliqueSize[i] >= 2) acc = cartesianProduct(acc, completeGraph(plan.cliqueSize[i], i + 1, t));
        if (plan.bipDegree[i] > 0)
            acc = cartesianProduct(acc, completeBipartite(plan.bipDegree[i], plan.bipDegree[i], i + 1, t));
    }
    return acc;
}

std::optional<ColoredGraph> findFlipGraph(int t, long long nMax, long long budget) {
    if (t == 1) return completeGraph(2, 1, 1);  // flip condition is vacuous for one color
    auto plan = findFlipFactorPlan(t, nMax, budget);
    if (!plan) return std::nullopt;
    auto g = materializeFlipPlan(*plan, t);
    auto check = checkFlip(g);
    if (!check.valid) throw ConstructionError("flip plan failed verification");
    return g;
}

FlipConstructionReport unboundedFlipConstruction(int t, long long s, int flipGraphVertexCap) {
    if (t < 4 || t > 6) throw ConstructionError("unbounded flip construction requires t in {4,5,6}");
    if (s < 1) throw ConstructionError("scale must be >= 1");
    const long long cliqueSize = 8 - t;       // size of each color-1 clique
    const long long groupCount = s * (t - 1);  // cliques per side
    const long long sideSize = groupCount * cliqueSize;

    // Paper inequality behind the construction: (t-1) C(8-t,2) > (8-t)^2.
    if (!((t - 1) * choose2(cliqueSize) > cliqueSize * cliqueSize))
        throw ConstructionError("core inequality fails");

    // Analytic core profile.
    ProfileTerm core;
    core.r.assign(t, 0);
    core.c.assign(t, 0);
    core.r[0] = cliqueSize - 1;
    for (int i = 1; i < t; ++i) core.r[i] = s * cliqueSize;
    long long closed1 = (groupCount + 1) * choose2(cliqueSize);
    core.c[0] = closed1 - core.r[0];
    for (int i = 1; i < t; ++i) {
        long long closedI = s * cliqueSize * cliqueSize;
        core.c[i] = closedI - core.r[i];
    }
    core.factorDescription = "core: " + std::to_string(2 * groupCount) + " K_" + std::to_string(cliqueSize) +
                             " (color 1) + matching-colored bipartite join";

    // Cross-check the analytic profile against a materialized core when small.
    if (2 * sideSize <= 2000) {
        std::vector<Edge> es;
        const int n1 = static_cast<int>(sideSize);
        for (long long g = 0; g < 2 * groupCount; ++g) {
            int base = static_cast<int>(g * cliqueSize);
            for (int u = 0; u < cliqueSize; ++u)
                for (int v = u + 1; v < cliqueSize; ++v) es.push_back({base + u, base + v, 1});
        }
        const long long perColor = s * cliqueSize;  // matchings per color
        for (int u = 0; u < n1; ++u)
            for (int v = 0; v < n1; ++v) {
                long long shift = ((v - u) % n1 + n1) % n1;
                int color = static_cast<int>(shift / perColor) + 2;
                es.push_back({u, n1 + v, color});
            }
        ColoredGraph coreGraph(t, 2 * n1, std::move(es));
        auto check = checkTriangleRegular(coreGraph);
        if (!check.uniform || check.r != core.r || check.c != core.c)
            throw ConstructionError("materialized core disagrees with the analytic profile");
    }

    auto plan = findFlipFactorPlan(t - 1, flipGraphVertexCap, 5'000'000);
    if (!plan) throw ConstructionError("no small flip graph found within search budget");
    // Shift the small flip graph's colors up by one (it lives on colors 2..t).
    ProfileTerm flipPart;
    flipPart.r.assign(t, 0);
    flipPart.c.assign(t, 0);
    for (int i = 0; i < t - 1; ++i) {
        long long a = plan->cliqueSize[i], q = plan->bipDegree[i];
        flipPart.r[i + 1] = (a >= 2 ? a - 1 : 0) + q;
        flipPart.c[i + 1] = (a >= 2 ? choose2(a - 1) : 0);
    }
    flipPart.factorDescription = "small flip graph on colors 2.." + std::to_string(t) + " (" +
                                 std::to_string(plan->vertexCount) + " vertices)";
    return buildReport({core, flipPart});
}

}  // namespace trireg
