#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "trireg/abelian.hpp"

namespace trireg {

struct SpectrumRecord {
    long long r = 0;
    long long c = 0;
    std::vector<int> witnessGroup;            // moduli
    std::vector<GroupElement> witnessSet;     // members
    friend bool operator==(const SpectrumRecord&, const SpectrumRecord&) = default;
};

// Calls fn for every symmetric subset of G exactly once (including the empty
// set), enumerated over {x,-x} orbit pairs and involutions. Order <= cap.
void enumerateSymmetricSets(const AbelianGroup& g, const std::function<void(const SymmetricSet&)>& fn,
                            std::uint64_t cap = 40);

// Number of symmetric-subset orbits (pairs + involutions) of G.
int symmetricOrbitCount(const AbelianGroup& g);

// For every abelian group of order <= maxGroupOrder and every symmetric set of
// size r, records each achieved c with a deterministic witness.
std::vector<SpectrumRecord> spectrumForR(long long r, std::uint64_t maxGroupOrder, int threads = 1);

struct ForbiddenBandReport {
    long long r = 0;
    long long bandLo = 0, bandHi = 0;  // inclusive; empty when bandLo > bandHi
    std::vector<long long> achieved;   // all achieved c values
    std::vector<long long> violations; // achieved values inside the band
    // Shape cross-check for c > C(r,2) - r^{3/2}: per achieved c, the nearest
    // multiple-of-r/2 offset x and the residual y.
    struct ShapePoint {
        long long c = 0, x = 0, y = 0;
    };
    std::vector<ShapePoint> shape;
};

ForbiddenBandReport forbiddenBandCheck(long long r, std::uint64_t maxGroupOrder, int threads = 1);

void emitSpectrumCsv(const std::vector<SpectrumRecord>& records, const std::string& path);
std::vector<SpectrumRecord> parseSpectrumCsv(const std::string& path);

}  // namespace trireg
