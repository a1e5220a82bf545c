#include "trireg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace trireg {

namespace {

struct Orbits {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // {x, -x}, x < -x
    std::vector<std::uint64_t> involutions;                      // x == -x, x != 0
};

Orbits collectOrbits(const AbelianGroup& g) {
    Orbits o;
    std::uint64_t n = g.orderOrThrow();
    for (std::uint64_t i = 1; i < n; ++i) {
        GroupElement x = g.element(i);
        std::uint64_t j = g.index(g.neg(x));
        if (i == j)
            o.involutions.push_back(i);
        else if (i < j)
            o.pairs.push_back({i, j});
    }
    return o;
}

}  // namespace

int symmetricOrbitCount(const AbelianGroup& g) {
    auto o = collectOrbits(g);
    return static_cast<int>(o.pairs.size() + o.involutions.size());
}

void enumerateSymmetricSets(const AbelianGroup& g, const std::function<void(const SymmetricSet&)>& fn,
                            std::uint64_t cap) {
    std::uint64_t n = g.orderOrThrow();
    if (n > cap) throw AbelianError("group order exceeds the enumeration cap");
    auto orbits = collectOrbits(g);
    const std::size_t k = orbits.pairs.size() + orbits.involutions.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        std::vector<GroupElement> members;
        for (std::size_t i = 0; i < orbits.pairs.size(); ++i) {
            if ((mask >> i) & 1) {
                members.push_back(g.element(orbits.pairs[i].first));
                members.push_back(g.element(orbits.pairs[i].second));
            }
        }
        for (std::size_t i = 0; i < orbits.involutions.size(); ++i) {
            if ((mask >> (orbits.pairs.size() + i)) & 1) members.push_back(g.element(orbits.involutions[i]));
        }
        fn(SymmetricSet(g, std::move(members)));
    }
}

namespace {

struct GroupWork {
    AbelianGroup group;
    std::vector<std::uint64_t> addTable;  // [a*n+b] = index of a+b
    std::uint64_t n = 0;
};

GroupWork makeWork(const AbelianGroup& g) {
    GroupWork w{g, {}, g.orderOrThrow()};
    w.addTable.resize(w.n * w.n);
    std::vector<GroupElement> elems;
    elems.reserve(w.n);
    for (std::uint64_t i = 0; i < w.n; ++i) elems.push_back(g.element(i));
    for (std::uint64_t a = 0; a < w.n; ++a)
        for (std::uint64_t b = 0; b < w.n; ++b) w.addTable[a * w.n + b] = g.index(g.add(elems[a], elems[b]));
    return w;
}

// Enumerate symmetric subsets of one group over index-space and call
// fn(memberIndices, tripleCount) for each. Much faster than re-wrapping
// SymmetricSet per subset in the hot loop.
void scanGroup(const GroupWork& w, const std::function<void(const std::vector<std::uint64_t>&, long long)>& fn) {
    auto orbits = collectOrbits(w.group);
    const std::size_t k = orbits.pairs.size() + orbits.involutions.size();
    const std::uint64_t n = w.n;
    std::vector<std::uint64_t> member;              // current member indices
    std::vector<std::uint64_t> inSet((n + 63) / 64, 0);
    auto setBit = [&](std::uint64_t i) { inSet[i / 64] |= std::uint64_t(1) << (i % 64); };
    auto clearBit = [&](std::uint64_t i) { inSet[i / 64] &= ~(std::uint64_t(1) << (i % 64)); };
    auto testBit = [&](std::uint64_t i) { return (inSet[i / 64] >> (i % 64)) & 1; };

    // tripleCount maintained incrementally is fiddly; sets are small, recompute.
    std::function<void(std::size_t)> rec = [&](std::size_t orbit) {
        if (orbit == k) {
            long long count = 0;
            for (std::uint64_t a : member) {
                const std::uint64_t* row = w.addTable.data() + a * n;
                for (std::uint64_t b : member)
                    if (testBit(row[b])) ++count;
            }
            fn(member, count);
            return;
        }
        rec(orbit + 1);
        if (orbit < orbits.pairs.size()) {
            auto [x, y] = orbits.pairs[orbit];
            member.push_back(x);
            member.push_back(y);
            setBit(x);
            setBit(y);
            rec(orbit + 1);
            clearBit(x);
            clearBit(y);
            member.pop_back();
            member.pop_back();
        } else {
            auto x = orbits.involutions[orbit - orbits.pairs.size()];
            member.push_back(x);
            setBit(x);
            rec(orbit + 1);
            clearBit(x);
            member.pop_back();
        }
    };
    rec(0);
}

std::vector<AbelianGroup> groupsUpTo(std::uint64_t maxOrder) {
    std::vector<AbelianGroup> out;
    for (std::uint64_t n = 2; n <= maxOrder; ++n)
        for (auto& g : abelianGroupsOfOrder(n)) out.push_back(std::move(g));
    return out;
}

// Witness preference: lexicographically smallest (order, moduli, member indices).
struct WitnessKey {
    std::uint64_t order;
    std::vector<int> moduli;
    std::vector<std::uint64_t> members;
    friend auto operator<=>(const WitnessKey&, const WitnessKey&) = default;
};

}  // namespace

std::vector<SpectrumRecord> spectrumForR(long long r, std::uint64_t maxGroupOrder, int threads) {
    auto groups = groupsUpTo(maxGroupOrder);
    const int nThreads = std::max(1, threads);
    std::vector<std::map<long long, WitnessKey>> partial(nThreads);

    auto work = [&](int tid) {
        auto& mine = partial[tid];
        for (std::size_t gi = tid; gi < groups.size(); gi += nThreads) {
            auto w = makeWork(groups[gi]);
            scanGroup(w, [&](const std::vector<std::uint64_t>& member, long long triples) {
                if (static_cast<long long>(member.size()) != r) return;
                long long c = triples / 2;
                WitnessKey key{w.n, groups[gi].moduli(), member};
                std::sort(key.members.begin(), key.members.end());
                auto it = mine.find(c);
                if (it == mine.end() || key < it->second) mine[c] = std::move(key);
            });
        }
    };
    if (nThreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nThreads; ++i) pool.emplace_back(work, i);
        for (auto& th : pool) th.join();
    }

    std::map<long long, WitnessKey> merged;
    for (auto& part : partial)
        for (auto& [c, key] : part) {
            auto it = merged.find(c);
            if (it == merged.end() || key < it->second) merged[c] = std::move(key);
        }

    std::vector<SpectrumRecord> records;
    for (auto& [c, key] : merged) {
        SpectrumRecord rec;
        rec.r = r;
        rec.c = c;
        rec.witnessGroup = key.moduli;
        AbelianGroup g(key.moduli);
        for (auto idx : key.members) rec.witnessSet.push_back(g.element(idx));
        records.push_back(std::move(rec));
    }
    return records;
}

ForbiddenBandReport forbiddenBandCheck(long long r, std::uint64_t maxGroupOrder, int threads) {
    ForbiddenBandReport rep;
    rep.r = r;
    long long c2 = r * (r - 1) / 2;
    rep.bandLo = c2 - (r - 2) / 2;
    rep.bandHi = c2 - 1;
    auto records = spectrumForR(r, maxGroupOrder, threads);
    for (const auto& rec : records) {
        rep.achieved.push_back(rec.c);
        if (rec.c >= rep.bandLo && rec.c <= rep.bandHi) rep.violations.push_back(rec.c);
        double threshold = static_cast<double>(c2) - std::pow(static_cast<double>(r), 1.5);
        if (static_cast<double>(rec.c) > threshold) {
            // c = C(r,2) - r*x/2 + y with x the nearest multiple offset
            long long x = r == 0 ? 0 : std::llround(2.0 * static_cast<double>(c2 - rec.c) / static_cast<double>(r));
            long long y = rec.c - (c2 - x * r / 2);
            rep.shape.push_back({rec.c, x, y});
        }
    }
    return rep;
}

void emitSpectrumCsv(const std::vector<SpectrumRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw AbelianError("cannot open " + path + " for writing");
    out << "r,c,x,y,groupModuli,setMembers\n";
    auto sorted = records;
    std::sort(sorted.begin(), sorted.end(), [](const SpectrumRecord& a, const SpectrumRecord& b) {
        return std::tie(a.r, a.c, a.witnessGroup, a.witnessSet) < std::tie(b.r, b.c, b.witnessGroup, b.witnessSet);
    });
    for (const auto& rec : sorted) {
        long long c2 = rec.r * (rec.r - 1) / 2;
        long long x = rec.r == 0 ? 0 : std::llround(2.0 * static_cast<double>(c2 - rec.c) / static_cast<double>(rec.r));
        long long y = rec.c - (c2 - x * rec.r / 2);
        out << rec.r << "," << rec.c << "," << x << "," << y << ",";
        for (std::size_t i = 0; i < rec.witnessGroup.size(); ++i)
            out << (i ? ";" : "") << rec.witnessGroup[i];
        out << ",";
        for (std::size_t i = 0; i < rec.witnessSet.size(); ++i) {
            if (i) out << ";";
            for (std::size_t j = 0; j < rec.witnessSet[i].size(); ++j) out << (j ? ":" : "") << rec.witnessSet[i][j];
        }
        out << "\n";
    }
    if (!out) throw AbelianError("write failed: " + path);
}

std::vector<SpectrumRecord> parseSpectrumCsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AbelianError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw AbelianError("empty csv");
    std::vector<SpectrumRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 6) throw AbelianError("bad csv row: " + line);
        SpectrumRecord rec;
        rec.r = std::stoll(fields[0]);
        rec.c = std::stoll(fields[1]);
        {
            std::stringstream ms(fields[4]);
            std::string piece;
            while (std::getline(ms, piece, ';')) rec.witnessGroup.push_back(std::stoi(piece));
        }
        if (!fields[5].empty()) {
            std::stringstream ms(fields[5]);
            std::string piece;
            while (std::getline(ms, piece, ';')) {
                GroupElement e;
                std::stringstream es(piece);
                std::string coord;
                while (std::getline(es, coord, ':')) e.push_back(std::stoi(coord));
                rec.witnessSet.push_back(std::move(e));
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace trireg
