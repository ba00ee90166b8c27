#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tagnet/corpus.hpp"

namespace tagnet {

// Disjoint sets with path compression and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        ++merges_;
        return true;
    }

    std::size_t component_size(std::size_t x) { return size_[find(x)]; }
    std::size_t merges() const { return merges_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t merges_ = 0;
};

// View edges restricted to a member set: arcs for Full/Informational,
// undirected pairs (u < v) for Social.
struct InducedSubgraph {
    ViewKind kind;
    std::vector<UserId> members;  // adoption order when induced from a trace
    std::vector<std::pair<UserId, UserId>> edges;
};

struct StructuralFeatures {
    std::size_t edge_count = 0;
    std::size_t singleton_count = 0;
    std::size_t component_count = 0;
    std::size_t max_component_size = 0;
};

// Per-view structural features with transforms, concatenated over the three
// views (full, social, informational). Per base feature: linear and ln(1+v);
// singletons, components and max component also get |v - k/2| with k the
// member count (the largest attainable value of all three).
struct GrowthFeatureVector {
    static constexpr std::size_t kWidth = 33;
    std::array<double, kWidth> values{};
    static std::vector<std::string> names();
};

InducedSubgraph induce(const AdoptionTrace& trace, std::size_t k, const GraphView& view);
InducedSubgraph induce_members(std::span<const UserId> members, const GraphView& view);

StructuralFeatures structural_features(const InducedSubgraph& sub);

struct ViewTriple {
    GraphView full;
    GraphView social;
    GraphView info;

    ViewTriple(const DirectedWeightedGraph& graph, Weight threshold)
        : full(graph, ViewKind::Full, threshold),
          social(graph, ViewKind::Social, threshold),
          info(graph, ViewKind::Informational, threshold) {}
};

GrowthFeatureVector growth_features(const AdoptionTrace& trace, std::size_t k,
                                    const ViewTriple& views);

// Internal directed-arc count of U(h) divided by |U(h)|(|U(h)|-1); Social
// edges count as two arcs so the range stays [0,1] for every view.
double hashtag_density(TagId h, const AffiliationIndex& index, const GraphView& view);

}  // namespace tagnet
