#include "trireg/lp.hpp"

#include <algorithm>
#include <cassert>
#include <thread>

namespace trireg {

ColorTriple makeTriple(int a, int b, int c) {
    int v[3] = {a, b, c};
    std::sort(v, v + 3);
    return ColorTriple{v[0], v[1], v[2]};
}

std::vector<ColorTriple> allTriples(int t) {
    std::vector<ColorTriple> out;
    for (int i = 1; i <= t; ++i)
        for (int j = i; j <= t; ++j)
            for (int k = j; k <= t; ++k) out.push_back({i, j, k});
    return out;
}

void RationalLinearSystem::addConstraint(std::vector<Rational> coeffs, Rel rel, Rational rhs, std::string label) {
    coeffs.resize(varNames.size(), Rational(0));
    constraints.push_back(Constraint{std::move(coeffs), rel, std::move(rhs), std::move(label)});
}

bool satisfiesSystem(const RationalLinearSystem& sys, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != sys.varCount()) return false;
    for (const auto& xi : x)
        if (xi < 0) return false;
    for (const auto& con : sys.constraints) {
        Rational lhs(0);
        for (int j = 0; j < sys.varCount(); ++j) lhs += con.coeffs[j] * x[j];
        if (con.rel == Rel::Le && lhs > con.rhs) return false;
        if (con.rel == Rel::Eq && lhs != con.rhs) return false;
    }
    return true;
}

bool verifyCertificate(const RationalLinearSystem& sys, const FarkasCertificate& cert) {
    if (cert.rowMultipliers.size() != sys.constraints.size()) return false;
    if (cert.varMultipliers.size() != static_cast<std::size_t>(sys.varCount())) return false;
    for (std::size_t i = 0; i < sys.constraints.size(); ++i)
        if (sys.constraints[i].rel == Rel::Le && cert.rowMultipliers[i] < 0) return false;
    for (const auto& m : cert.varMultipliers)
        if (m < 0) return false;
    Rational val(0);
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) val += cert.rowMultipliers[i] * sys.constraints[i].rhs;
    if (val != Rational(-1)) return false;
    for (int j = 0; j < sys.varCount(); ++j) {
        Rational cj(0);
        for (std::size_t i = 0; i < sys.constraints.size(); ++i)
            cj += cert.rowMultipliers[i] * sys.constraints[i].coeffs[j];
        if (cj != cert.varMultipliers[j]) return false;
    }
    return true;
}

namespace {

// Phase-1 tableau. Column order: original vars, slack/surplus, artificials, rhs.
struct Tableau {
    int m = 0;
    int cols = 0;  // excluding rhs
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> obj;  // reduced costs; obj[cols] = -objective value
    std::vector<int> basis;

    void pivot(int row, int col) {
        Rational p = a[row][col];
        for (auto& v : a[row]) v /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            Rational f = a[i][col];
            if (f == 0) continue;
            for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[row][j];
        }
        Rational f = obj[col];
        if (f != 0)
            for (int j = 0; j <= cols; ++j) obj[j] -= f * a[row][j];
        basis[row] = col;
    }
};

}  // namespace

FeasibilityResult solveFeasibility(const RationalLinearSystem& sys) {
    const int n = sys.varCount();
    const int m = static_cast<int>(sys.constraints.size());
    FeasibilityResult res;
    if (m == 0) {
        res.verdict = FeasibilityResult::Verdict::Feasible;
        res.witness.assign(n, Rational(0));
        return res;
    }

    // Standardize rows to have nonnegative rhs; flipped[] remembers sign flips.
    enum class RowKind { Le, Ge, Eq };
    std::vector<RowKind> kind(m);
    std::vector<bool> flipped(m, false);
    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(n));
    std::vector<Rational> b(m);
    for (int i = 0; i < m; ++i) {
        const auto& con = sys.constraints[i];
        A[i] = con.coeffs;
        b[i] = con.rhs;
        kind[i] = con.rel == Rel::Le ? RowKind::Le : RowKind::Eq;
        if (b[i] < 0) {
            for (auto& v : A[i]) v = -v;
            b[i] = -b[i];
            flipped[i] = true;
            if (kind[i] == RowKind::Le) kind[i] = RowKind::Ge;
        }
    }

    int slackCount = 0;
    for (int i = 0; i < m; ++i)
        if (kind[i] != RowKind::Eq) ++slackCount;
    int artCount = 0;
    for (int i = 0; i < m; ++i)
        if (kind[i] != RowKind::Le) ++artCount;

    Tableau t;
    t.m = m;
    t.cols = n + slackCount + artCount;
    t.a.assign(m, std::vector<Rational>(t.cols + 1, Rational(0)));
    t.basis.assign(m, -1);
    std::vector<int> slackCol(m, -1), artCol(m, -1);
    int next = n;
    for (int i = 0; i < m; ++i) {
        if (kind[i] != RowKind::Eq) slackCol[i] = next++;
    }
    for (int i = 0; i < m; ++i) {
        if (kind[i] != RowKind::Le) artCol[i] = next++;
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t.a[i][j] = A[i][j];
        t.a[i][t.cols] = b[i];
        if (kind[i] == RowKind::Le) t.a[i][slackCol[i]] = 1;
        if (kind[i] == RowKind::Ge) t.a[i][slackCol[i]] = -1;
        if (artCol[i] >= 0) t.a[i][artCol[i]] = 1;
        t.basis[i] = kind[i] == RowKind::Le ? slackCol[i] : artCol[i];
    }
    // Phase-1 objective: minimize sum of artificials.
    t.obj.assign(t.cols + 1, Rational(0));
    for (int i = 0; i < m; ++i)
        if (artCol[i] >= 0) t.obj[artCol[i]] = 1;
    for (int i = 0; i < m; ++i)
        if (artCol[i] >= 0)
            for (int j = 0; j <= t.cols; ++j) t.obj[j] -= t.a[i][j];

    long long pivotGuard = 0;
    const long long pivotCap = 2'000'000;
    while (true) {
        int enter = -1;
        for (int j = 0; j < t.cols; ++j) {
            if (t.obj[j] < 0) {
                enter = j;
                break;  // Bland: smallest index
            }
        }
        if (enter < 0) break;
        int leave = -1;
        Rational bestRatio(0);
        for (int i = 0; i < m; ++i) {
            if (t.a[i][enter] > 0) {
                Rational ratio = t.a[i][t.cols] / t.a[i][enter];
                if (leave < 0 || ratio < bestRatio || (ratio == bestRatio && t.basis[i] < t.basis[leave])) {
                    leave = i;
                    bestRatio = ratio;
                }
            }
        }
        if (leave < 0) throw std::logic_error("phase-1 LP unbounded");
        t.pivot(leave, enter);
        if (++pivotGuard > pivotCap) throw std::logic_error("simplex pivot cap exceeded");
    }

    Rational objValue = -t.obj[t.cols];
    if (objValue == 0) {
        // Feasible: pivot remaining artificials out where possible.
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] >= n + slackCount) {
                for (int j = 0; j < n + slackCount; ++j) {
                    if (t.a[i][j] != 0) {
                        t.pivot(i, j);
                        break;
                    }
                }
            }
        }
        res.verdict = FeasibilityResult::Verdict::Feasible;
        res.witness.assign(n, Rational(0));
        for (int i = 0; i < m; ++i)
            if (t.basis[i] < n) res.witness[t.basis[i]] = t.a[i][t.cols];
        if (!satisfiesSystem(sys, res.witness)) throw std::logic_error("simplex witness failed exact re-check");
        return res;
    }

    // Infeasible: recover the dual from the optimal reduced-cost row.
    //   slack col i (Le):    obj = -y_i        => y_i = -obj
    //   surplus col i (Ge):  obj = +y_i        => y_i = +obj
    //   artificial col i:    obj = 1 - y_i     => y_i = 1 - obj
    std::vector<Rational> y(m);
    for (int i = 0; i < m; ++i) {
        if (kind[i] == RowKind::Le)
            y[i] = -t.obj[slackCol[i]];
        else if (kind[i] == RowKind::Ge)
            y[i] = t.obj[slackCol[i]];
        else
            y[i] = Rational(1) - t.obj[artCol[i]];
    }
    // lambda over standardized rows is -y; map back through the sign flips.
    FarkasCertificate cert;
    cert.rowMultipliers.assign(m, Rational(0));
    Rational val(0);
    for (int i = 0; i < m; ++i) {
        Rational lam = -y[i];
        if (flipped[i]) lam = -lam;
        cert.rowMultipliers[i] = lam;
        val += lam * sys.constraints[i].rhs;
    }
    if (val >= 0) throw std::logic_error("farkas extraction failed: nonnegative combined rhs");
    Rational scale = Rational(-1) / val;
    for (auto& lam : cert.rowMultipliers) lam *= scale;
    cert.varMultipliers.assign(n, Rational(0));
    for (int j = 0; j < n; ++j) {
        Rational cj(0);
        for (int i = 0; i < m; ++i) cj += cert.rowMultipliers[i] * sys.constraints[i].coeffs[j];
        cert.varMultipliers[j] = cj;
    }
    if (!verifyCertificate(sys, cert)) throw std::logic_error("farkas certificate failed verification");
    res.verdict = FeasibilityResult::Verdict::Infeasible;
    res.certificate = std::move(cert);
    return res;
}

namespace {

long long choose2(long long r) { return r * (r - 1) / 2; }

std::string tripleName(const ColorTriple& tr) {
    return "x_" + std::to_string(tr.i) + std::to_string(tr.j) + std::to_string(tr.k);
}

int multiplicity(const ColorTriple& tr, int color) {
    return (tr.i == color) + (tr.j == color) + (tr.k == color);
}

}  // namespace

RationalLinearSystem buildSystem(const std::vector<long long>& r, const std::vector<long long>& c) {
    if (r.size() != c.size() || r.empty()) throw std::invalid_argument("r and c must be nonempty and equal length");
    const int t = static_cast<int>(r.size());
    auto triples = allTriples(t);
    RationalLinearSystem sys;
    for (const auto& tr : triples) sys.varNames.push_back(tripleName(tr));

    // Edges between the i- and j-neighborhoods of a vertex: at most r_i * r_j.
    for (int i = 1; i <= t; ++i) {
        for (int j = i + 1; j <= t; ++j) {
            std::vector<Rational> row(triples.size(), Rational(0));
            for (std::size_t idx = 0; idx < triples.size(); ++idx) {
                const auto& tr = triples[idx];
                int mi = multiplicity(tr, i), mj = multiplicity(tr, j);
                if (mi >= 1 && mj >= 1 && mi + mj == 3)
                    row[idx] = (mi == 2 || mj == 2) ? 2 : 1;
                else if (mi == 1 && mj == 1)
                    row[idx] = 1;
            }
            sys.addConstraint(std::move(row), Rel::Le, Rational(r[i - 1] * r[j - 1]),
                              "pair(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    // Triangles within the i-neighborhood wedge: at most C(r_i, 2).
    for (int i = 1; i <= t; ++i) {
        std::vector<Rational> row(triples.size(), Rational(0));
        for (std::size_t idx = 0; idx < triples.size(); ++idx) {
            int mi = multiplicity(triples[idx], i);
            if (mi == 2) row[idx] = 1;
            if (mi == 3) row[idx] = 3;
        }
        sys.addConstraint(std::move(row), Rel::Le, Rational(choose2(r[i - 1])), "wedge(" + std::to_string(i) + ")");
    }
    // Average color-i edges per neighborhood equals c_i.
    for (int i = 1; i <= t; ++i) {
        std::vector<Rational> row(triples.size(), Rational(0));
        for (std::size_t idx = 0; idx < triples.size(); ++idx) row[idx] = multiplicity(triples[idx], i);
        sys.addConstraint(std::move(row), Rel::Eq, Rational(c[i - 1]), "count(" + std::to_string(i) + ")");
    }
    return sys;
}

TriangleDensityVector graphDensityVector(const ColoredGraph& g) {
    if (g.vertexCount() == 0) throw GraphError(GraphError::Code::Mismatch, "density vector of an empty graph");
    TriangleDensityVector x;
    x.t = g.colorCount();
    std::map<ColorTriple, long long> counts;
    for (const auto& e : g.edges()) {
        g.forEachCommonNeighbor(e.u, e.v, [&](int w) {
            if (w <= e.v) return;  // count each triangle once: u < v < w
            int c1 = e.color;
            int c2 = g.edgeColor(e.u, w);
            int c3 = g.edgeColor(e.v, w);
            ++counts[makeTriple(c1, c2, c3)];
        });
    }
    for (const auto& [tr, cnt] : counts) x.values[tr] = Rational(cnt, g.vertexCount());
    return x;
}

RationalLinearSystem buildFlipSystem(const std::vector<long long>& r) {
    const int t = static_cast<int>(r.size());
    if (t < 1) throw std::invalid_argument("empty degree vector");
    for (int i = 0; i + 1 < t; ++i)
        if (!(r[i] < r[i + 1])) throw std::invalid_argument("flip system requires strictly increasing degrees");
    auto triples = allTriples(t);
    RationalLinearSystem sys;
    for (const auto& tr : triples) sys.varNames.push_back(tripleName(tr));
    for (int i = 1; i <= t; ++i) sys.varNames.push_back("c_" + std::to_string(i));
    const int nt = static_cast<int>(triples.size());

    for (int i = 1; i <= t; ++i) {
        for (int j = i + 1; j <= t; ++j) {
            std::vector<Rational> row(sys.varNames.size(), Rational(0));
            for (int idx = 0; idx < nt; ++idx) {
                const auto& tr = triples[idx];
                int mi = multiplicity(tr, i), mj = multiplicity(tr, j);
                if (mi >= 1 && mj >= 1 && mi + mj == 3)
                    row[idx] = (mi == 2 || mj == 2) ? 2 : 1;
                else if (mi == 1 && mj == 1)
                    row[idx] = 1;
            }
            sys.addConstraint(std::move(row), Rel::Le, Rational(r[i - 1] * r[j - 1]),
                              "pair(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    for (int i = 1; i <= t; ++i) {
        std::vector<Rational> row(sys.varNames.size(), Rational(0));
        for (int idx = 0; idx < nt; ++idx) {
            int mi = multiplicity(triples[idx], i);
            if (mi == 2) row[idx] = 1;
            if (mi == 3) row[idx] = 3;
        }
        sys.addConstraint(std::move(row), Rel::Le, Rational(choose2(r[i - 1])), "wedge(" + std::to_string(i) + ")");
    }
    for (int i = 1; i <= t; ++i) {
        std::vector<Rational> row(sys.varNames.size(), Rational(0));
        for (int idx = 0; idx < nt; ++idx) row[idx] = multiplicity(triples[idx], i);
        row[nt + i - 1] = -1;
        sys.addConstraint(std::move(row), Rel::Eq, Rational(0), "count(" + std::to_string(i) + ")");
    }
    // Flip chain: r_i + c_i >= r_{i+1} + c_{i+1} + 1, as -c_i + c_{i+1} <= r_i - r_{i+1} - 1.
    for (int i = 1; i < t; ++i) {
        std::vector<Rational> row(sys.varNames.size(), Rational(0));
        row[nt + i - 1] = -1;
        row[nt + i] = 1;
        sys.addConstraint(std::move(row), Rel::Le, Rational(r[i - 1] - r[i] - 1),
                          "flip(" + std::to_string(i) + "," + std::to_string(i + 1) + ")");
    }
    return sys;
}

std::optional<Rational> supersaturationCheck(const std::vector<long long>& r, const TriangleDensityVector& x, int i) {
    long long ri = r[i - 1];
    if (ri < 3) return std::nullopt;
    Rational noI(0), s(0);
    for (const auto& [tr, v] : x.values) {
        int mi = multiplicity(tr, i);
        if (mi == 0) noI += v;
        if (mi == 2) s += v;
    }
    Rational B(choose2(ri));
    Rational C3(ri * (ri - 1) * (ri - 2) / 6);
    Rational rho = s / B;
    Rational rhs = C3 * rho * (2 * rho - 1);
    return Rational(ri) * noI - rhs;
}

Constraint supersaturationCut(const std::vector<long long>& r, int t, const std::vector<Rational>& point, int i,
                              int varCount) {
    auto triples = allTriples(t);
    long long ri = r[i - 1];
    Rational B(choose2(ri));
    Rational C3(ri * (ri - 1) * (ri - 2) / 6);
    Rational s0(0);
    for (std::size_t idx = 0; idx < triples.size(); ++idx)
        if (multiplicity(triples[idx], i) == 2) s0 += point[idx];
    // f(s) = C3 * (2 s^2 / B^2 - s / B); tangent at s0 underestimates f (convexity).
    Rational f0 = C3 * (2 * s0 * s0 / (B * B) - s0 / B);
    Rational fp = C3 * (4 * s0 / (B * B) - Rational(1) / B);
    // r_i * sum_{no i} x - fp * s >= f0 - fp*s0   ==>   -r_i*sum + fp*s <= -(f0 - fp*s0)
    Constraint cut;
    cut.coeffs.assign(varCount, Rational(0));
    for (std::size_t idx = 0; idx < triples.size(); ++idx) {
        int mi = multiplicity(triples[idx], i);
        if (mi == 0) cut.coeffs[idx] -= Rational(ri);
        if (mi == 2) cut.coeffs[idx] += fp;
    }
    cut.rel = Rel::Le;
    cut.rhs = -(f0 - fp * s0);
    cut.label = "supersat-cut(" + std::to_string(i) + ")";
    return cut;
}

FeasibilityResult refuteWithCuts(RationalLinearSystem sys, const std::vector<long long>& r,
                                 const std::vector<int>& cutColors, int maxRounds) {
    const int t = static_cast<int>(r.size());
    auto triples = allTriples(t);
    FeasibilityResult last;
    for (int round = 0; round <= maxRounds; ++round) {
        last = solveFeasibility(sys);
        last.cutRounds = round;
        if (last.verdict == FeasibilityResult::Verdict::Infeasible) return last;
        TriangleDensityVector x;
        x.t = t;
        for (std::size_t idx = 0; idx < triples.size(); ++idx) x.values[triples[idx]] = last.witness[idx];
        bool violated = false;
        for (int color : cutColors) {
            auto slack = supersaturationCheck(r, x, color);
            if (slack && *slack < 0) {
                sys.constraints.push_back(supersaturationCut(r, t, last.witness, color, sys.varCount()));
                violated = true;
            }
        }
        if (!violated) return last;  // feasible for the augmented convex system
    }
    last.verdict = FeasibilityResult::Verdict::Unknown;
    last.bestPoint = last.witness;
    last.witness.clear();
    return last;
}

namespace {

void enumerateIncreasing(int t, long long r1Max, long long rtMax, std::vector<long long>& cur,
                         std::vector<std::vector<long long>>& out) {
    if (static_cast<int>(cur.size()) == t) {
        out.push_back(cur);
        return;
    }
    long long lo = cur.empty() ? 0 : cur.back() + 1;
    long long hi = rtMax - (t - 1 - static_cast<long long>(cur.size()));
    if (cur.empty()) hi = std::min(hi, r1Max);
    for (long long v = lo; v <= hi; ++v) {
        cur.push_back(v);
        enumerateIncreasing(t, r1Max, rtMax, cur, out);
        cur.pop_back();
    }
}

}  // namespace

FlipScanReport flipBoundedScan(int t, long long r1Max, long long rtMax, bool withCuts, int threads) {
    std::vector<std::vector<long long>> tuples;
    std::vector<long long> cur;
    enumerateIncreasing(t, r1Max, rtMax, cur, tuples);
    FlipScanReport report;
    report.rows.resize(tuples.size());

    auto work = [&](int tid, int nThreads) {
        for (std::size_t idx = tid; idx < tuples.size(); idx += nThreads) {
            const auto& r = tuples[idx];
            auto sys = buildFlipSystem(r);
            FeasibilityResult res;
            if (withCuts) {
                std::vector<int> colors;
                for (int i = 1; i <= t; ++i)
                    if (r[i - 1] >= 3) colors.push_back(i);
                res = refuteWithCuts(std::move(sys), r, colors);
            } else {
                res = solveFeasibility(sys);
            }
            report.rows[idx] = FlipScanRow{r, res.verdict, res.cutRounds};
        }
    };
    int nThreads = std::max(1, threads);
    if (nThreads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nThreads; ++i) pool.emplace_back(work, i, nThreads);
        for (auto& th : pool) th.join();
    }
    for (const auto& row : report.rows) {
        switch (row.verdict) {
            case FeasibilityResult::Verdict::Feasible: ++report.feasibleCount; break;
            case FeasibilityResult::Verdict::Infeasible: ++report.infeasibleCount; break;
            case FeasibilityResult::Verdict::Unknown: ++report.unknownCount; break;
        }
    }
    return report;
}

}  // namespace trireg
