#include "tagnet/subgraph_features.hpp"

#include <cmath>
#include <unordered_map>

namespace tagnet {

namespace {

InducedSubgraph induce_impl(std::vector<UserId> members, const GraphView& view) {
    InducedSubgraph sub;
    sub.kind = view.kind();
    sub.members = std::move(members);
    std::vector<char> inside(view.node_count(), 0);
    for (UserId u : sub.members) inside[u] = 1;
    for (UserId u : sub.members) {
        for (UserId v : view.neighbors(u)) {
            if (!inside[v]) continue;
            if (view.kind() == ViewKind::Social && u > v) continue;
            sub.edges.emplace_back(u, v);
        }
    }
    return sub;
}

}  // namespace

InducedSubgraph induce(const AdoptionTrace& trace, std::size_t k, const GraphView& view) {
    if (k < 1) throw ValidationError("induced subgraph needs k >= 1");
    if (trace.adopters.size() < k)
        throw InsufficientAdopters("trace has " + std::to_string(trace.adopters.size()) +
                                   " adopters, need " + std::to_string(k));
    std::vector<UserId> members;
    members.reserve(k);
    for (std::size_t i = 0; i < k; ++i) members.push_back(trace.adopters[i].user);
    return induce_impl(std::move(members), view);
}

InducedSubgraph induce_members(std::span<const UserId> members, const GraphView& view) {
    return induce_impl(std::vector<UserId>(members.begin(), members.end()), view);
}

StructuralFeatures structural_features(const InducedSubgraph& sub) {
    StructuralFeatures f;
    f.edge_count = sub.edges.size();

    const std::size_t n = sub.members.size();
    std::unordered_map<UserId, std::size_t> local;
    local.reserve(n);
    for (std::size_t i = 0; i < n; ++i) local.emplace(sub.members[i], i);

    // Components on the undirected shadow: direction ignored for the
    // directed kinds, Social is undirected already.
    UnionFind uf(n);
    std::vector<char> touched(n, 0);
    for (const auto& [u, v] : sub.edges) {
        const std::size_t a = local.at(u);
        const std::size_t b = local.at(v);
        touched[a] = touched[b] = 1;
        uf.unite(a, b);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!touched[i]) ++f.singleton_count;
    f.component_count = n - uf.merges();
    for (std::size_t i = 0; i < n; ++i)
        f.max_component_size = std::max(f.max_component_size, uf.component_size(i));
    return f;
}

std::vector<std::string> GrowthFeatureVector::names() {
    static const char* views[] = {"full", "social", "info"};
    static const char* bases[] = {"edges", "singletons", "components", "max_component"};
    std::vector<std::string> out;
    out.reserve(kWidth);
    for (const char* view : views) {
        for (const char* base : bases) {
            const std::string stem = std::string(view) + "_" + base;
            out.push_back(stem);
            out.push_back(stem + "_log");
            if (std::string(base) != "edges") out.push_back(stem + "_mid");
        }
    }
    return out;
}

GrowthFeatureVector growth_features(const AdoptionTrace& trace, std::size_t k,
                                    const ViewTriple& views) {
    GrowthFeatureVector vec;
    const double half = static_cast<double>(k) / 2.0;
    std::size_t pos = 0;
    auto emit = [&](double v, bool midpoint) {
        vec.values[pos++] = v;
        vec.values[pos++] = std::log1p(v);
        if (midpoint) vec.values[pos++] = std::abs(v - half);
    };
    for (const GraphView* view : {&views.full, &views.social, &views.info}) {
        const StructuralFeatures f = structural_features(induce(trace, k, *view));
        emit(static_cast<double>(f.edge_count), false);
        emit(static_cast<double>(f.singleton_count), true);
        emit(static_cast<double>(f.component_count), true);
        emit(static_cast<double>(f.max_component_size), true);
    }
    return vec;
}

double hashtag_density(TagId h, const AffiliationIndex& index, const GraphView& view) {
    const auto& members = index.tag_users.at(h);
    const std::size_t n = members.size();
    if (n < 2)
        throw UndefinedDensity("hashtag " + std::to_string(h) + " has fewer than 2 users");
    const InducedSubgraph sub = induce_members(members, view);
    std::size_t arcs = sub.edges.size();
    if (view.kind() == ViewKind::Social) arcs *= 2;
    return static_cast<double>(arcs) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace tagnet
