#include "trireg/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

namespace trireg {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct ElemHash {
    std::size_t operator()(const GroupElement& e) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : e) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using ElemSet = std::unordered_set<GroupElement, ElemHash>;

std::uint64_t lcmModuli(const std::vector<int>& moduli) {
    std::uint64_t l = 1;
    for (int m : moduli) l = std::lcm(l, static_cast<std::uint64_t>(m));
    return l;
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    for (int m : moduli_)
        if (m < 2) throw AbelianError("moduli must be >= 2");
    std::uint64_t o = 1;
    bool fits = true;
    for (int m : moduli_) {
        if (o > UINT64_MAX / static_cast<std::uint64_t>(m)) {
            fits = false;
            break;
        }
        o *= static_cast<std::uint64_t>(m);
    }
    if (moduli_.empty()) fits = false;  // trivial group not allowed (order >= 2)
    if (moduli_.empty()) throw AbelianError("group must have order >= 2");
    order_ = fits ? std::optional<std::uint64_t>(o) : std::nullopt;
}

std::uint64_t AbelianGroup::orderOrThrow() const {
    if (!order_) throw AbelianError("group order exceeds uint64 range");
    return *order_;
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        int s = a[j] + b[j];
        if (s >= moduli_[j]) s -= moduli_[j];
        r[j] = s;
    }
    return r;
}

GroupElement AbelianGroup::neg(const GroupElement& a) const {
    GroupElement r(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j) r[j] = a[j] == 0 ? 0 : moduli_[j] - a[j];
    return r;
}

bool AbelianGroup::isZero(const GroupElement& a) const {
    return std::all_of(a.begin(), a.end(), [](int v) { return v == 0; });
}

void AbelianGroup::validate(const GroupElement& a) const {
    if (a.size() != moduli_.size()) throw AbelianError("element rank mismatch");
    for (std::size_t j = 0; j < moduli_.size(); ++j)
        if (a[j] < 0 || a[j] >= moduli_[j]) throw AbelianError("residue out of range");
}

std::uint64_t AbelianGroup::index(const GroupElement& a) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) idx = idx * moduli_[j] + a[j];
    return idx;
}

GroupElement AbelianGroup::element(std::uint64_t idx) const {
    GroupElement a(moduli_.size());
    for (std::size_t j = moduli_.size(); j-- > 0;) {
        a[j] = static_cast<int>(idx % moduli_[j]);
        idx /= moduli_[j];
    }
    return a;
}

SymmetricSet::SymmetricSet(AbelianGroup group, std::vector<GroupElement> members)
    : group_(std::move(group)), members_(std::move(members)) {
    for (const auto& x : members_) {
        group_.validate(x);
        if (group_.isZero(x)) throw AbelianError("0 must not be a member of a symmetric set");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    auto order = group_.order();
    if (order && *order <= kBitTableCap) {
        useTable_ = true;
        table_.assign((*order + 63) / 64, 0);
        for (const auto& x : members_) {
            auto i = group_.index(x);
            table_[i / 64] |= std::uint64_t(1) << (i % 64);
        }
    }
    for (const auto& x : members_)
        if (!contains(group_.neg(x))) throw AbelianError("set is not symmetric: missing inverse");
}

bool SymmetricSet::contains(const GroupElement& x) const {
    if (useTable_) {
        auto i = group_.index(x);
        return (table_[i / 64] >> (i % 64)) & 1;
    }
    return std::binary_search(members_.begin(), members_.end(), x);
}

TripleCount additiveTriples(const SymmetricSet& s) {
    long long count = 0;
    const auto& g = s.group();
    for (const auto& a : s.members())
        for (const auto& b : s.members())
            if (s.contains(g.add(a, b))) ++count;
    TripleCount tc;
    tc.tripleCount = count;
    long long sz = s.size();
    if (sz == 0)
        tc.epsilon = Fraction(1, 1);
    else
        tc.epsilon = Fraction(sz * sz - count, sz * sz);
    return tc;
}

ColoredGraph cayleyGraph(const SymmetricSet& s) {
    const auto& g = s.group();
    std::uint64_t n = g.orderOrThrow();
    if (n > 1'000'000) throw AbelianError("cayley graph too large to materialize");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * s.members().size() / 2);
    for (std::uint64_t i = 0; i < n; ++i) {
        GroupElement x = g.element(i);
        for (const auto& m : s.members()) {
            std::uint64_t j = g.index(g.add(x, m));
            if (i < j) edges.push_back({static_cast<int>(i), static_cast<int>(j), 1});
        }
    }
    return ColoredGraph(1, static_cast<int>(n), std::move(edges));
}

namespace {

// Integer phase k with chi_t(x) = exp(2*pi*i*k/L), L = lcm(moduli).
std::uint64_t phaseIndex(const AbelianGroup& g, const GroupElement& t, const GroupElement& x, std::uint64_t L) {
    std::uint64_t k = 0;
    const auto& mod = g.moduli();
    for (std::size_t j = 0; j < mod.size(); ++j) {
        std::uint64_t term = (static_cast<std::uint64_t>(t[j]) * static_cast<std::uint64_t>(x[j])) % mod[j];
        k = (k + term * (L / mod[j])) % L;
    }
    return k;
}

}  // namespace

std::vector<double> dftIndicator(const SymmetricSet& s) {
    const auto& g = s.group();
    std::uint64_t n = g.orderOrThrow();
    if (n > 4'000'000) throw AbelianError("group too large for a full DFT");
    std::uint64_t L = lcmModuli(g.moduli());
    std::vector<double> cosTable(L);
    for (std::uint64_t k = 0; k < L; ++k) cosTable[k] = std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(L));
    std::vector<double> out(n, 0.0);
    for (std::uint64_t ti = 0; ti < n; ++ti) {
        GroupElement t = g.element(ti);
        double sum = 0.0;
        for (const auto& x : s.members()) sum += cosTable[phaseIndex(g, t, x, L)];
        out[ti] = sum;
    }
    return out;
}

double fourierCoefficient(const SymmetricSet& s, const CharacterIndex& chi) {
    const auto& g = s.group();
    g.validate(chi.index);
    std::uint64_t L = lcmModuli(g.moduli());
    double sum = 0.0;
    for (const auto& x : s.members())
        sum += std::cos(2.0 * kPi * static_cast<double>(phaseIndex(g, chi.index, x, L)) / static_cast<double>(L));
    return sum;
}

double maxImaginaryPart(const SymmetricSet& s) {
    const auto& g = s.group();
    std::uint64_t n = g.orderOrThrow();
    if (n > 4'000'000) throw AbelianError("group too large for a full DFT");
    std::uint64_t L = lcmModuli(g.moduli());
    std::vector<double> sinTable(L);
    for (std::uint64_t k = 0; k < L; ++k) sinTable[k] = std::sin(2.0 * kPi * static_cast<double>(k) / static_cast<double>(L));
    double worst = 0.0;
    for (std::uint64_t ti = 0; ti < n; ++ti) {
        GroupElement t = g.element(ti);
        double sum = 0.0;
        for (const auto& x : s.members()) sum += sinTable[phaseIndex(g, t, x, L)];
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

std::pair<CharacterIndex, double> maxNontrivialCoefficient(const SymmetricSet& s) {
    auto coeffs = dftIndicator(s);
    const auto& g = s.group();
    if (coeffs.size() < 2) throw AbelianError("no nontrivial characters");
    std::uint64_t best = 1;
    for (std::uint64_t ti = 2; ti < coeffs.size(); ++ti)
        if (coeffs[ti] > coeffs[best]) best = ti;
    return {CharacterIndex{g.element(best)}, coeffs[best]};
}

std::vector<GroupElement> goodElements(const SymmetricSet& s, const Fraction& threshold, ThresholdMode mode) {
    if (!(Fraction(0, 1) < threshold && threshold < Fraction(1, 1))) throw AbelianError("threshold must lie in (0,1)");
    std::vector<GroupElement> out;
    const auto& g = s.group();
    const long long sz = s.size();
    for (const auto& x : s.members()) {
        long long count = 0;
        for (const auto& y : s.members())
            if (s.contains(g.add(x, y))) ++count;
        // strict: count/|S| > threshold; non-strict: >=
        long long lhs = count * threshold.den;
        long long rhs = threshold.num * sz;
        if (mode == ThresholdMode::Strict ? lhs > rhs : lhs >= rhs) out.push_back(x);
    }
    return out;
}

std::vector<GroupElement> subgroupClosure(const AbelianGroup& g, const std::vector<GroupElement>& seed) {
    ElemSet members;
    members.insert(g.zero());
    std::vector<GroupElement> queue{g.zero()};
    std::vector<GroupElement> gens;
    for (const auto& s : seed) {
        g.validate(s);
        gens.push_back(s);
    }
    // BFS under generator addition; a finite group closes under inverses automatically.
    for (std::size_t head = 0; head < queue.size(); ++head) {
        GroupElement x = queue[head];
        for (const auto& s : gens) {
            GroupElement y = g.add(x, s);
            if (members.insert(y).second) queue.push_back(y);
        }
    }
    std::vector<GroupElement> out(members.begin(), members.end());
    std::sort(out.begin(), out.end());
    return out;
}

SubgroupApproximation approxSubgroup(const SymmetricSet& s) {
    if (s.size() < 1) throw AbelianError("approxSubgroup requires a nonempty set");
    SubgroupApproximation res;
    res.epsilon = additiveTriples(s).epsilon;
    auto superGood = goodElements(s, Fraction(2, 3), ThresholdMode::NonStrict);
    res.superGoodCount = static_cast<long long>(superGood.size());
    res.subgroup = subgroupClosure(s.group(), superGood);
    ElemSet inH(res.subgroup.begin(), res.subgroup.end());
    long long overlap = 0;
    for (const auto& x : s.members())
        if (inH.count(x)) ++overlap;
    res.sizeRatio = Fraction(static_cast<long long>(res.subgroup.size()), s.size());
    res.overlapRatio = Fraction(overlap, s.size());
    return res;
}

std::vector<std::vector<GroupElement>> enumerateSubgroups(const AbelianGroup& g, std::uint64_t cap) {
    std::uint64_t n = g.orderOrThrow();
    if (n > cap) throw AbelianError("group order exceeds subgroup enumeration cap");
    std::vector<GroupElement> all;
    all.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) all.push_back(g.element(i));

    std::set<std::vector<GroupElement>> seen;
    std::vector<std::vector<GroupElement>> queue;
    std::vector<GroupElement> trivial{g.zero()};
    seen.insert(trivial);
    queue.push_back(trivial);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto h = queue[head];
        for (const auto& x : all) {
            if (std::binary_search(h.begin(), h.end(), x)) continue;
            auto seed = h;
            seed.push_back(x);
            auto bigger = subgroupClosure(g, seed);
            if (seen.insert(bigger).second) queue.push_back(bigger);
        }
    }
    return {queue.begin(), queue.end()};
}

std::vector<double> characterPhaseHistogram(const SymmetricSet& s, const CharacterIndex& chi) {
    const auto& g = s.group();
    g.validate(chi.index);
    std::uint64_t L = lcmModuli(g.moduli());
    std::vector<double> out;
    out.reserve(s.members().size());
    for (const auto& x : s.members()) {
        std::uint64_t k = phaseIndex(g, chi.index, x, L);
        // theta in [-pi, pi): k/L >= 1/2 wraps to the negative side; pi maps to -pi.
        double theta = 2 * k >= L ? 2.0 * kPi * (static_cast<double>(k) / L - 1.0)
                                  : 2.0 * kPi * (static_cast<double>(k) / L);
        out.push_back(theta);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Fraction phaseFractionWithin(const SymmetricSet& s, const CharacterIndex& chi, double theta) {
    auto phases = characterPhaseHistogram(s, chi);
    long long count = 0;
    for (double p : phases)
        if (std::abs(p) <= theta + 1e-12) ++count;
    return Fraction(count, std::max<long long>(1, s.size()));
}

std::vector<int> canonicalModuli(const std::vector<int>& moduli) {
    std::vector<int> parts;
    for (int m : moduli) {
        int rest = m;
        for (int p = 2; static_cast<long long>(p) * p <= rest; ++p) {
            if (rest % p == 0) {
                int q = 1;
                while (rest % p == 0) {
                    rest /= p;
                    q *= p;
                }
                parts.push_back(q);
            }
        }
        if (rest > 1) parts.push_back(rest);
    }
    std::sort(parts.begin(), parts.end());
    return parts;
}

namespace {

void partitions(int n, int maxPart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, maxPart); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<AbelianGroup> abelianGroupsOfOrder(std::uint64_t n) {
    if (n < 2) return {};
    std::vector<std::pair<std::uint64_t, int>> factors;
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            int e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            factors.push_back({p, e});
        }
    }
    if (rest > 1) factors.push_back({rest, 1});

    std::vector<std::vector<std::vector<int>>> perPrime;  // partitions of each exponent
    for (auto [p, e] : factors) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions(e, e, cur, parts);
        perPrime.push_back(parts);
    }

    std::vector<AbelianGroup> out;
    std::vector<std::size_t> pick(perPrime.size(), 0);
    while (true) {
        std::vector<int> moduli;
        for (std::size_t i = 0; i < perPrime.size(); ++i) {
            std::uint64_t p = factors[i].first;
            for (int part : perPrime[i][pick[i]]) {
                std::uint64_t q = 1;
                for (int k = 0; k < part; ++k) q *= p;
                moduli.push_back(static_cast<int>(q));
            }
        }
        std::sort(moduli.begin(), moduli.end());
        out.push_back(AbelianGroup(moduli));
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < perPrime[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return out;
}

}  // namespace trireg
