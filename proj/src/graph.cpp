#include "trireg/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace trireg {

ColoredGraph::ColoredGraph(int t, int n, std::vector<Edge> edges)
    : t_(t), n_(n), edges_(std::move(edges)) {
    if (t_ < 1) throw GraphError(GraphError::Code::MalformedHeader, "color count must be >= 1");
    if (n_ < 0) throw GraphError(GraphError::Code::MalformedHeader, "negative vertex count");
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u == e.v) throw GraphError(GraphError::Code::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
        if (e.u < 0 || e.v >= n_)
            throw GraphError(GraphError::Code::VertexOutOfRange,
                             "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
        if (e.color < 1 || e.color > t_)
            throw GraphError(GraphError::Code::ColorOutOfRange, "color " + std::to_string(e.color) + " out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
            throw GraphError(GraphError::Code::DuplicateEdge,
                             "duplicate edge (" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")");
    }
    adj_.assign(n_, {});
    for (const auto& e : edges_) {
        adj_[e.u].push_back({e.v, e.color});
        adj_[e.v].push_back({e.u, e.color});
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    if (n_ > 0 && n_ <= kBitRowThreshold) {
        words_ = (n_ + 63) / 64;
        bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (const auto& e : edges_) {
            bits_[static_cast<std::size_t>(e.u) * words_ + e.v / 64] |= std::uint64_t(1) << (e.v % 64);
            bits_[static_cast<std::size_t>(e.v) * words_ + e.u / 64] |= std::uint64_t(1) << (e.u % 64);
        }
    }
}

bool ColoredGraph::adjacent(int u, int v) const {
    if (words_ > 0)
        return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1;
    const auto& a = adj_[u];
    auto it = std::lower_bound(a.begin(), a.end(), std::pair<int, int>{v, 0});
    return it != a.end() && it->first == v;
}

int ColoredGraph::edgeColor(int u, int v) const {
    const auto& a = adj_[u];
    auto it = std::lower_bound(a.begin(), a.end(), std::pair<int, int>{v, 0});
    if (it != a.end() && it->first == v) return it->second;
    return 0;
}

long long ColoredGraph::commonNeighborCount(int u, int v) const {
    long long cnt = 0;
    if (words_ > 0) {
        const std::uint64_t* ru = bits_.data() + static_cast<std::size_t>(u) * words_;
        const std::uint64_t* rv = bits_.data() + static_cast<std::size_t>(v) * words_;
        for (int w = 0; w < words_; ++w) cnt += std::popcount(ru[w] & rv[w]);
        return cnt;
    }
    forEachCommonNeighbor(u, v, [&](int) { ++cnt; });
    return cnt;
}

ColoredGraph ColoredGraph::monochrome() const {
    std::vector<Edge> es = edges_;
    for (auto& e : es) e.color = 1;
    return ColoredGraph(1, n_, std::move(es));
}

std::vector<VertexProfile> triangleProfile(const ColoredGraph& g) {
    const int t = g.colorCount();
    const int n = g.vertexCount();
    std::vector<VertexProfile> prof(n);
    for (int v = 0; v < n; ++v) {
        prof[v].deg.assign(t, 0);
        prof[v].nbhdEdges.assign(t, 0);
        for (const auto& [w, c] : g.neighbors(v)) {
            (void)w;
            ++prof[v].deg[c - 1];
        }
    }
    // An edge (u,v) of color c lies inside N(w) exactly for the common neighbors w of u and v.
    for (const auto& e : g.edges()) {
        g.forEachCommonNeighbor(e.u, e.v, [&](int w) { ++prof[w].nbhdEdges[e.color - 1]; });
    }
    return prof;
}

RegularityCheck checkTriangleRegular(const ColoredGraph& g) {
    RegularityCheck res;
    auto prof = triangleProfile(g);
    const int n = g.vertexCount();
    if (n == 0) {
        res.uniform = true;
        res.r.assign(g.colorCount(), 0);
        res.c.assign(g.colorCount(), 0);
        return res;
    }
    for (int v = 1; v < n; ++v) {
        if (!(prof[v] == prof[0])) {
            res.uniform = false;
            res.witnessA = 0;
            res.witnessB = v;
            return res;
        }
    }
    res.uniform = true;
    res.r = prof[0].deg;
    res.c = prof[0].nbhdEdges;
    return res;
}

FlipCheck checkFlip(const ColoredGraph& g) {
    FlipCheck res;
    auto prof = triangleProfile(g);
    const int t = g.colorCount();
    for (int v = 0; v < g.vertexCount(); ++v) {
        for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) {
                if (!(prof[v].deg[j] > prof[v].deg[i])) {
                    res.valid = false;
                    res.violation = FlipViolation{v, i + 1, j + 1,
                                                  "deg_" + std::to_string(j + 1) + " <= deg_" + std::to_string(i + 1)};
                    return res;
                }
                long long closedI = prof[v].nbhdEdges[i] + prof[v].deg[i];
                long long closedJ = prof[v].nbhdEdges[j] + prof[v].deg[j];
                if (!(closedI > closedJ)) {
                    res.valid = false;
                    res.violation = FlipViolation{v, i + 1, j + 1,
                                                  "closed nbhd count of color " + std::to_string(i + 1) +
                                                      " <= color " + std::to_string(j + 1)};
                    return res;
                }
            }
        }
    }
    res.valid = true;
    return res;
}

ColoredGraph cartesianProduct(const ColoredGraph& g, const ColoredGraph& h) {
    if (g.colorCount() != h.colorCount())
        throw GraphError(GraphError::Code::Mismatch, "cartesian product requires equal color counts");
    const int hn = h.vertexCount();
    auto id = [hn](int a, int b) { return a * hn + b; };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edges().size()) * hn +
                  static_cast<std::size_t>(h.edges().size()) * g.vertexCount());
    for (const auto& e : g.edges())
        for (int b = 0; b < hn; ++b) edges.push_back({id(e.u, b), id(e.v, b), e.color});
    for (int a = 0; a < g.vertexCount(); ++a)
        for (const auto& e : h.edges()) edges.push_back({id(a, e.u), id(a, e.v), e.color});
    return ColoredGraph(g.colorCount(), g.vertexCount() * hn, std::move(edges));
}

ProfileTerm addProfiles(const ProfileTerm& a, const ProfileTerm& b) {
    if (a.r.size() != b.r.size() || a.c.size() != b.c.size() || a.r.size() != a.c.size())
        throw GraphError(GraphError::Code::Mismatch, "profile terms have mismatched color counts");
    ProfileTerm out;
    out.r.resize(a.r.size());
    out.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.r.size(); ++i) {
        out.r[i] = a.r[i] + b.r[i];
        out.c[i] = a.c[i] + b.c[i];
    }
    out.factorDescription = a.factorDescription.empty() ? b.factorDescription
                                                        : (b.factorDescription.empty()
                                                               ? a.factorDescription
                                                               : a.factorDescription + " + " + b.factorDescription);
    return out;
}

ColoredGraph parseGraph(std::istream& in) {
    std::string line;
    int t = -1, n = -1;
    long long m = -1;
    std::vector<Edge> edges;
    bool headerSeen = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!headerSeen) {
            if (first != "trg") throw GraphError(GraphError::Code::MalformedHeader, "expected 'trg <t> <n> <m>' header");
            if (!(ls >> t >> n >> m)) throw GraphError(GraphError::Code::MalformedHeader, "bad header fields");
            headerSeen = true;
            continue;
        }
        Edge e;
        std::istringstream es(line);
        if (!(es >> e.u >> e.v >> e.color))
            throw GraphError(GraphError::Code::MalformedHeader, "bad edge line: " + line);
        if (e.u >= e.v)
            throw GraphError(GraphError::Code::MalformedHeader, "edge endpoints must satisfy u < v: " + line);
        edges.push_back(e);
    }
    if (!headerSeen) throw GraphError(GraphError::Code::MalformedHeader, "missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw GraphError(GraphError::Code::MalformedHeader,
                         "edge count mismatch: header says " + std::to_string(m) + ", found " +
                             std::to_string(edges.size()));
    return ColoredGraph(t, n, std::move(edges));
}

ColoredGraph loadGraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError(GraphError::Code::Io, "cannot open " + path);
    return parseGraph(in);
}

void writeGraph(const ColoredGraph& g, std::ostream& out) {
    out << "trg " << g.colorCount() << " " << g.vertexCount() << " " << g.edges().size() << "\n";
    for (const auto& e : g.edges()) out << e.u << " " << e.v << " " << e.color << "\n";
}

void saveGraph(const ColoredGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GraphError(GraphError::Code::Io, "cannot open " + path + " for writing");
    writeGraph(g, out);
    if (!out) throw GraphError(GraphError::Code::Io, "write failed: " + path);
}

ColoredGraph completeGraph(int n, int color, int t) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.push_back({u, v, color});
    return ColoredGraph(t, n, std::move(es));
}

ColoredGraph completeBipartite(int a, int b, int color, int t) {
    std::vector<Edge> es;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) es.push_back({u, a + v, color});
    return ColoredGraph(t, a + b, std::move(es));
}

ColoredGraph regularBipartite(int m, int d, int color, int t) {
    if (d > m) throw GraphError(GraphError::Code::Mismatch, "bipartite degree exceeds part size");
    std::vector<Edge> es;
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < d; ++k) es.push_back({j, m + (j + k) % m, color});
    return ColoredGraph(t, 2 * m, std::move(es));
}

ColoredGraph cycleGraph(int n, int color, int t) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u) {
        int v = (u + 1) % n;
        es.push_back({std::min(u, v), std::max(u, v), color});
    }
    return ColoredGraph(t, n, std::move(es));
}

ColoredGraph singleVertex(int t) { return ColoredGraph(t, 1, {}); }

}  // namespace trireg
