#include "tagnet/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <string_view>

namespace tagnet {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::int64_t parse_int(std::string_view field, const std::string& path, std::size_t line,
                       const char* what) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty())
        throw ParseError(path, line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    return value;
}

// Strips a trailing '\r' so CRLF files load cleanly.
std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

DirectedWeightedGraph::DirectedWeightedGraph(std::size_t node_count, const std::vector<Arc>& arcs) {
    out_.resize(node_count);
    in_.resize(node_count);
    for (const Arc& a : arcs) {
        if (a.src == a.dst) throw ValidationError("self-loop arc in graph construction");
        if (a.src >= node_count || a.dst >= node_count)
            throw ValidationError("arc endpoint outside node range");
        out_[a.src].push_back({a.dst, a.weight});
        in_[a.dst].push_back({a.src, a.weight});
    }
    auto by_node = [](const WeightedNeighbor& x, const WeightedNeighbor& y) {
        return x.node < y.node;
    };
    for (auto& nbrs : out_) {
        std::sort(nbrs.begin(), nbrs.end(), by_node);
        for (std::size_t i = 1; i < nbrs.size(); ++i)
            if (nbrs[i].node == nbrs[i - 1].node)
                throw ValidationError("duplicate arc in graph construction");
    }
    for (auto& nbrs : in_) std::sort(nbrs.begin(), nbrs.end(), by_node);
    for (const auto& nbrs : out_) arc_count_ += nbrs.size();
}

Weight DirectedWeightedGraph::weight(UserId src, UserId dst) const {
    const auto& nbrs = out_.at(src);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), dst,
                               [](const WeightedNeighbor& n, UserId v) { return n.node < v; });
    if (it == nbrs.end() || it->node != dst) return 0;
    return it->weight;
}

std::vector<Arc> DirectedWeightedGraph::arcs() const {
    std::vector<Arc> result;
    result.reserve(arc_count_);
    for (UserId u = 0; u < out_.size(); ++u)
        for (const auto& n : out_[u]) result.push_back({u, n.node, n.weight});
    return result;
}

const char* view_name(ViewKind kind) {
    switch (kind) {
        case ViewKind::Full: return "full";
        case ViewKind::Social: return "social";
        case ViewKind::Informational: return "info";
    }
    return "?";
}

GraphView::GraphView(const DirectedWeightedGraph& base, ViewKind kind, Weight threshold)
    : kind_(kind), threshold_(threshold) {
    if (threshold < 1) throw ValidationError("view threshold must be >= 1");
    const std::size_t n = base.node_count();
    adj_.resize(n);
    for (UserId u = 0; u < n; ++u) {
        for (const auto& nbr : base.out(u)) {
            if (nbr.weight < threshold) continue;
            const bool reciprocated = base.weight(nbr.node, u) >= threshold;
            switch (kind) {
                case ViewKind::Full:
                    adj_[u].push_back(nbr.node);
                    break;
                case ViewKind::Social:
                    if (reciprocated) adj_[u].push_back(nbr.node);
                    break;
                case ViewKind::Informational:
                    if (!reciprocated) adj_[u].push_back(nbr.node);
                    break;
            }
        }
    }
    std::size_t total = 0;
    for (const auto& nbrs : adj_) total += nbrs.size();
    edge_count_ = (kind == ViewKind::Social) ? total / 2 : total;
}

bool GraphView::has(UserId u, UserId v) const {
    const auto& nbrs = adj_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<UserId, UserId>> GraphView::edge_list() const {
    std::vector<std::pair<UserId, UserId>> edges;
    edges.reserve(edge_count_);
    for (UserId u = 0; u < adj_.size(); ++u)
        for (UserId v : adj_[u])
            if (kind_ != ViewKind::Social || u < v) edges.emplace_back(u, v);
    return edges;
}

GraphView derive_view(const DirectedWeightedGraph& graph, ViewKind kind, Weight threshold) {
    return GraphView(graph, kind, threshold);
}

EdgeLoadResult load_edges(const std::filesystem::path& path, Weight threshold, IdMap& users) {
    if (threshold < 1) throw ValidationError("edge threshold must be >= 1");
    std::ifstream file(path);
    if (!file) throw Error("cannot open edge file: " + path.string());

    EdgeLoadResult result;
    // (src,dst) -> summed weight; ordered map keeps the arc order stable.
    std::map<std::pair<UserId, UserId>, Weight> sums;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(file, raw)) {
        ++lineno;
        std::string_view line = chomp(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3)
            throw ParseError(path.string(), lineno, "expected src\\tdst[\\tweight]");
        if (fields[0].empty() || fields[1].empty())
            throw ParseError(path.string(), lineno, "empty id field");
        Weight w = 1;
        if (fields.size() == 3) {
            w = parse_int(fields[2], path.string(), lineno, "weight");
            if (w < 0) throw ParseError(path.string(), lineno, "negative weight");
        }
        UserId src = users.intern(std::string(fields[0]));
        UserId dst = users.intern(std::string(fields[1]));
        if (src == dst) {
            ++result.self_loops_skipped;
            continue;
        }
        sums[{src, dst}] += w;
    }
    for (const auto& [key, w] : sums)
        if (w >= threshold) result.arcs.push_back({key.first, key.second, w});
    return result;
}

AdoptionLoadResult load_adoptions(const std::filesystem::path& path, IdMap& users, IdMap& tags) {
    std::ifstream file(path);
    if (!file) throw Error("cannot open adoption file: " + path.string());

    // Per tag: user -> earliest timestamp.
    std::vector<std::map<UserId, Timestamp>> first_use;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(file, raw)) {
        ++lineno;
        std::string_view line = chomp(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3)
            throw ParseError(path.string(), lineno, "expected hashtag\\tuser\\ttimestamp");
        if (fields[0].empty() || fields[1].empty())
            throw ParseError(path.string(), lineno, "empty id field");
        Timestamp t = parse_int(fields[2], path.string(), lineno, "timestamp");
        TagId tag = tags.intern(std::string(fields[0]));
        UserId user = users.intern(std::string(fields[1]));
        if (first_use.size() <= tag) first_use.resize(tag + 1);
        auto [it, inserted] = first_use[tag].emplace(user, t);
        if (!inserted && t < it->second) it->second = t;
    }

    AdoptionLoadResult result;
    result.traces.resize(tags.size());
    result.index.tag_users.resize(tags.size());
    result.index.user_tags.resize(users.size());
    first_use.resize(tags.size());
    for (TagId h = 0; h < tags.size(); ++h) {
        auto& trace = result.traces[h];
        trace.tag = h;
        trace.adopters.reserve(first_use[h].size());
        for (const auto& [user, t] : first_use[h]) trace.adopters.push_back({user, t});
        // Earliest first; ties by external user id so the order does not
        // depend on first-seen internal ids.
        std::sort(trace.adopters.begin(), trace.adopters.end(),
                  [&users](const Adoption& a, const Adoption& b) {
                      if (a.time != b.time) return a.time < b.time;
                      return users.name(a.user) < users.name(b.user);
                  });
        auto& members = result.index.tag_users[h];
        members.reserve(trace.adopters.size());
        for (const auto& [user, t] : first_use[h]) members.push_back(user);  // map order: sorted
        for (UserId u : members) result.index.user_tags[u].push_back(h);
    }
    // user_tags already ascending: tags were appended in tag-id order.
    return result;
}

CorpusStats corpus_stats(const AffiliationIndex& index,
                         const std::vector<const DirectedWeightedGraph*>& graphs) {
    CorpusStats stats;
    stats.user_count = index.user_count();
    stats.hashtag_count = index.tag_count();
    std::size_t incidences = 0;
    for (const auto& members : index.tag_users) incidences += members.size();
    stats.mean_users_per_hashtag =
        stats.hashtag_count ? static_cast<double>(incidences) / static_cast<double>(stats.hashtag_count) : 0.0;
    stats.mean_hashtags_per_user =
        stats.user_count ? static_cast<double>(incidences) / static_cast<double>(stats.user_count) : 0.0;
    for (const auto* g : graphs) stats.arc_counts.push_back(g->arc_count());
    return stats;
}

Corpus Corpus::load(const std::filesystem::path& edges, const std::filesystem::path& adoptions,
                    Weight edge_threshold) {
    Corpus corpus;
    auto adoption = load_adoptions(adoptions, corpus.users, corpus.tags);
    corpus.index = std::move(adoption.index);
    corpus.traces = std::move(adoption.traces);
    auto edge = load_edges(edges, edge_threshold, corpus.users);
    corpus.self_loops_skipped = edge.self_loops_skipped;
    corpus.index.user_tags.resize(corpus.users.size());  // edge-only users have no tags
    corpus.graph = DirectedWeightedGraph(corpus.users.size(), edge.arcs);
    return corpus;
}

}  // namespace tagnet
