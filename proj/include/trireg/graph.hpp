#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trireg {

// Edge of a colored graph. Invariant: u < v, color in 1..t.
struct Edge {
    int u = 0;
    int v = 0;
    int color = 1;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
public:
    enum class Code {
        MalformedHeader,
        VertexOutOfRange,
        ColorOutOfRange,
        DuplicateEdge,
        SelfLoop,
        Io,
        Mismatch,
    };
    GraphError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

// Simple undirected edge-colored graph. Vertices 0..n-1, colors 1..t.
// Immutable after construction; safe for concurrent reads.
class ColoredGraph {
public:
    ColoredGraph(int t, int n, std::vector<Edge> edges);

    int colorCount() const { return t_; }
    int vertexCount() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    // (neighbor, color) pairs sorted by neighbor id.
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(int u, int v) const;
    // 0 if not adjacent.
    int edgeColor(int u, int v) const;

    bool hasBitRows() const { return words_ > 0; }
    // Number of common neighbors of u and v (any color).
    long long commonNeighborCount(int u, int v) const;
    // Calls f(w) for every common neighbor w of u and v.
    template <typename F>
    void forEachCommonNeighbor(int u, int v, F&& f) const;

    // Monochrome view: all colors collapsed to 1.
    ColoredGraph monochrome() const;

    static constexpr int kBitRowThreshold = 4096;

private:
    int t_;
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;  // n_ rows of `words_` words when n_ <= threshold
};

// Per-vertex color-degree and neighborhood edge counts (Def of the profile).
struct VertexProfile {
    std::vector<long long> deg;        // deg[i-1] = number of color-i edges at v
    std::vector<long long> nbhdEdges;  // nbhdEdges[i-1] = color-i edges inside N(v)
    friend bool operator==(const VertexProfile&, const VertexProfile&) = default;
};

struct RegularityProfile {
    std::vector<long long> r;
    std::vector<long long> c;
    bool uniform = false;
};

// Result of checkTriangleRegular: either a uniform profile or two witnesses.
struct RegularityCheck {
    bool uniform = false;
    std::vector<long long> r;  // valid when uniform
    std::vector<long long> c;
    int witnessA = -1;  // differing vertices when not uniform
    int witnessB = -1;
};

struct FlipViolation {
    int vertex = -1;
    int colorI = 0;
    int colorJ = 0;
    std::string reason;
};

struct FlipCheck {
    bool valid = false;
    std::optional<FlipViolation> violation;
};

// Summable profile of a verified factor; addition is componentwise.
struct ProfileTerm {
    std::vector<long long> r;
    std::vector<long long> c;
    std::string factorDescription;
};

std::vector<VertexProfile> triangleProfile(const ColoredGraph& g);
RegularityCheck checkTriangleRegular(const ColoredGraph& g);
FlipCheck checkFlip(const ColoredGraph& g);
ColoredGraph cartesianProduct(const ColoredGraph& g, const ColoredGraph& h);
ProfileTerm addProfiles(const ProfileTerm& a, const ProfileTerm& b);

ColoredGraph loadGraph(const std::string& path);
void saveGraph(const ColoredGraph& g, const std::string& path);
ColoredGraph parseGraph(std::istream& in);
void writeGraph(const ColoredGraph& g, std::ostream& out);

// Common building blocks.
ColoredGraph completeGraph(int n, int color, int t);
ColoredGraph completeBipartite(int a, int b, int color, int t);
// Circulant bipartite: left j ~ right j, j+1, ..., j+d-1 (mod m); triangle-free d-regular.
ColoredGraph regularBipartite(int m, int d, int color, int t);
ColoredGraph cycleGraph(int n, int color, int t);
ColoredGraph singleVertex(int t);

template <typename F>
void ColoredGraph::forEachCommonNeighbor(int u, int v, F&& f) const {
    if (words_ > 0) {
        const std::uint64_t* ru = bits_.data() + static_cast<std::size_t>(u) * words_;
        const std::uint64_t* rv = bits_.data() + static_cast<std::size_t>(v) * words_;
        for (int w = 0; w < words_; ++w) {
            std::uint64_t x = ru[w] & rv[w];
            while (x) {
                int b = std::countr_zero(x);
                f(w * 64 + b);
                x &= x - 1;
            }
        }
        return;
    }
    const auto& au = adj_[u];
    const auto& av = adj_[v];
    std::size_t i = 0, j = 0;
    while (i < au.size() && j < av.size()) {
        if (au[i].first < av[j].first) {
            ++i;
        } else if (au[i].first > av[j].first) {
            ++j;
        } else {
            f(au[i].first);
            ++i;
            ++j;
        }
    }
}

}  // namespace trireg
