#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tagnet/error.hpp"

namespace tagnet {

using UserId = std::uint32_t;
using TagId = std::uint32_t;
using Weight = std::int64_t;
using Timestamp = std::int64_t;

// Maps arbitrary external string ids to dense integer ids in first-seen order.
class IdMap {
public:
    UserId intern(const std::string& name) {
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }

    std::optional<std::uint32_t> find(const std::string& name) const {
        auto it = ids_.find(name);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(std::uint32_t id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

struct Arc {
    UserId src;
    UserId dst;
    Weight weight;
};

struct WeightedNeighbor {
    UserId node;
    Weight weight;
};

// User-to-user arcs with nonnegative integer weights. Duplicate (src,dst)
// records sum their weights; self-loops are rejected by the loaders.
class DirectedWeightedGraph {
public:
    DirectedWeightedGraph() = default;
    DirectedWeightedGraph(std::size_t node_count, const std::vector<Arc>& arcs);

    std::size_t node_count() const { return out_.size(); }
    std::size_t arc_count() const { return arc_count_; }

    std::span<const WeightedNeighbor> out(UserId u) const { return out_.at(u); }
    std::span<const WeightedNeighbor> in(UserId u) const { return in_.at(u); }

    // 0 when the arc is absent.
    Weight weight(UserId src, UserId dst) const;

    std::vector<Arc> arcs() const;

private:
    std::vector<std::vector<WeightedNeighbor>> out_;
    std::vector<std::vector<WeightedNeighbor>> in_;
    std::size_t arc_count_ = 0;
};

enum class ViewKind { Full, Social, Informational };

const char* view_name(ViewKind kind);

// Edge predicate over a base graph at a weight threshold.
//   Full:          arc (u,v) iff w(u,v) >= threshold
//   Social:        undirected {u,v} iff both directions meet the threshold
//   Informational: arc (u,v) iff w(u,v) >= threshold and w(v,u) does not
// Adjacency is materialized at construction; neighbors() lists out-neighbors
// for the directed kinds and the symmetric neighbor list for Social.
class GraphView {
public:
    GraphView(const DirectedWeightedGraph& base, ViewKind kind, Weight threshold);

    ViewKind kind() const { return kind_; }
    Weight threshold() const { return threshold_; }
    std::size_t node_count() const { return adj_.size(); }

    std::span<const UserId> neighbors(UserId u) const { return adj_.at(u); }
    bool has(UserId u, UserId v) const;

    // Arc count for directed kinds, undirected edge count for Social.
    std::size_t edge_count() const { return edge_count_; }

    // Arcs, or undirected pairs (u < v) for Social.
    std::vector<std::pair<UserId, UserId>> edge_list() const;

private:
    ViewKind kind_;
    Weight threshold_;
    std::vector<std::vector<UserId>> adj_;
    std::size_t edge_count_ = 0;
};

GraphView derive_view(const DirectedWeightedGraph& graph, ViewKind kind, Weight threshold);

// Bidirectional user <-> hashtag incidence. Both directions are sorted
// ascending by id and duplicate-free; they are exact transposes.
struct AffiliationIndex {
    std::vector<std::vector<TagId>> user_tags;
    std::vector<std::vector<UserId>> tag_users;

    std::size_t user_count() const { return user_tags.size(); }
    std::size_t tag_count() const { return tag_users.size(); }
};

struct Adoption {
    UserId user;
    Timestamp time;
};

// Time-ordered sequence of a hashtag's distinct adopters, each at its
// earliest usage time. Timestamp ties are broken by ascending external
// user id so that the order is independent of input line order.
struct AdoptionTrace {
    TagId tag;
    std::vector<Adoption> adopters;
};

struct CorpusStats {
    std::size_t user_count = 0;
    std::size_t hashtag_count = 0;
    double mean_users_per_hashtag = 0.0;
    double mean_hashtags_per_user = 0.0;
    std::vector<std::size_t> arc_counts;
};

struct EdgeLoadResult {
    std::vector<Arc> arcs;               // weight-summed, threshold applied
    std::size_t self_loops_skipped = 0;
};

struct AdoptionLoadResult {
    AffiliationIndex index;
    std::vector<AdoptionTrace> traces;   // indexed by tag id
};

// Parses `src \t dst [\t weight]` (weight defaults to 1, '#' lines are
// comments), sums duplicate arcs, then keeps arcs with weight >= threshold.
// All ids seen are registered in `users` even when their arcs are filtered.
EdgeLoadResult load_edges(const std::filesystem::path& path, Weight threshold, IdMap& users);

// Parses `hashtag \t user \t timestamp`, keeps the earliest usage per
// (hashtag, user) and builds the affiliation index plus per-tag traces.
AdoptionLoadResult load_adoptions(const std::filesystem::path& path, IdMap& users, IdMap& tags);

CorpusStats corpus_stats(const AffiliationIndex& index,
                         const std::vector<const DirectedWeightedGraph*>& graphs);

// A fully loaded corpus: one id space shared by the graph and the index.
struct Corpus {
    IdMap users;
    IdMap tags;
    AffiliationIndex index;
    std::vector<AdoptionTrace> traces;
    DirectedWeightedGraph graph;
    std::size_t self_loops_skipped = 0;

    static Corpus load(const std::filesystem::path& edges,
                       const std::filesystem::path& adoptions,
                       Weight edge_threshold = 1);

    const AdoptionTrace& trace(TagId tag) const { return traces.at(tag); }
};

}  // namespace tagnet
