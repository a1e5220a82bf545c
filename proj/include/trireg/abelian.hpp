#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trireg/graph.hpp"
#include "trireg/rational.hpp"

namespace trireg {

using GroupElement = std::vector<int>;

class AbelianError : public std::runtime_error {
public:
    explicit AbelianError(const std::string& what) : std::runtime_error(what) {}
};

// Direct product of cyclic groups Z_m1 x ... x Z_mk. Elements are residue vectors.
class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<int> moduli);

    const std::vector<int>& moduli() const { return moduli_; }
    int rank() const { return static_cast<int>(moduli_.size()); }
    // Group order when it fits in uint64, nullopt otherwise.
    std::optional<std::uint64_t> order() const { return order_; }
    std::uint64_t orderOrThrow() const;

    GroupElement zero() const { return GroupElement(moduli_.size(), 0); }
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    bool isZero(const GroupElement& a) const;
    void validate(const GroupElement& a) const;

    // Mixed-radix index <-> element; requires the order to fit.
    std::uint64_t index(const GroupElement& a) const;
    GroupElement element(std::uint64_t idx) const;

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
    std::vector<int> moduli_;
    std::optional<std::uint64_t> order_;
};

// Symmetric subset: 0 not in S; x in S => -x in S. Membership is O(1) via a
// flat bit table when the group order fits under the table cap, otherwise a
// sorted member list with binary search.
class SymmetricSet {
public:
    SymmetricSet(AbelianGroup group, std::vector<GroupElement> members);

    const AbelianGroup& group() const { return group_; }
    const std::vector<GroupElement>& members() const { return members_; }
    long long size() const { return static_cast<long long>(members_.size()); }
    bool contains(const GroupElement& x) const;

    static constexpr std::uint64_t kBitTableCap = 1u << 24;

private:
    AbelianGroup group_;
    std::vector<GroupElement> members_;      // sorted, deduplicated
    std::vector<std::uint64_t> table_;       // flat membership bits when usable
    bool useTable_ = false;
};

struct CharacterIndex {
    GroupElement index;  // chi_t(x) = exp(2*pi*i * sum_j t[j]*x[j]/m[j])
};

struct TripleCount {
    long long tripleCount = 0;  // ordered pairs (a,b) in SxS with a+b in S
    Fraction epsilon;           // 1 - tripleCount/|S|^2
};

struct SubgroupApproximation {
    std::vector<GroupElement> subgroup;  // H, sorted
    Fraction epsilon;
    Fraction sizeRatio;     // |H| / |S|
    Fraction overlapRatio;  // |H n S| / |S|
    long long superGoodCount = 0;
};

TripleCount additiveTriples(const SymmetricSet& s);
ColoredGraph cayleyGraph(const SymmetricSet& s);

// Fourier coefficient hat{1_S}(chi) = sum_{x in S} Re chi(x), one per character,
// indexed by the character's mixed-radix index. Requires the order to fit.
std::vector<double> dftIndicator(const SymmetricSet& s);
double fourierCoefficient(const SymmetricSet& s, const CharacterIndex& chi);
// Max |Im hat{1_S}(chi)| over all characters (symmetry should force ~0).
double maxImaginaryPart(const SymmetricSet& s);
std::pair<CharacterIndex, double> maxNontrivialCoefficient(const SymmetricSet& s);

enum class ThresholdMode { Strict, NonStrict };  // count > thr*|S|  vs  count >= thr*|S|

std::vector<GroupElement> goodElements(const SymmetricSet& s, const Fraction& threshold, ThresholdMode mode);

std::vector<GroupElement> subgroupClosure(const AbelianGroup& g, const std::vector<GroupElement>& seed);

SubgroupApproximation approxSubgroup(const SymmetricSet& s);

// All subgroups of G as sorted element lists. Requires |G| <= cap.
std::vector<std::vector<GroupElement>> enumerateSubgroups(const AbelianGroup& g, std::uint64_t cap = 256);

// Phases theta_x in [-pi, pi) of chi(x) over x in S, sorted ascending.
std::vector<double> characterPhaseHistogram(const SymmetricSet& s, const CharacterIndex& chi);
// Fraction of members with |theta_x| <= theta.
Fraction phaseFractionWithin(const SymmetricSet& s, const CharacterIndex& chi, double theta);

// Canonical isomorphism-type key: prime-power elementary divisors, sorted.
std::vector<int> canonicalModuli(const std::vector<int>& moduli);
// All abelian groups of order exactly n (one per isomorphism class).
std::vector<AbelianGroup> abelianGroupsOfOrder(std::uint64_t n);

}  // namespace trireg
