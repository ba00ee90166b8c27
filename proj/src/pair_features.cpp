#include "tagnet/pair_features.hpp"

#include <cmath>
#include <unordered_set>

namespace tagnet {

namespace {

void check_user(UserId u, const AffiliationIndex& index) {
    if (u >= index.user_count())
        throw LookupError("unknown user id " + std::to_string(u));
}

}  // namespace

std::vector<TagId> common_hashtags(UserId u, UserId v, const AffiliationIndex& index) {
    check_user(u, index);
    check_user(v, index);
    const auto& a = index.user_tags[u];
    const auto& b = index.user_tags[v];
    std::vector<TagId> common;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            common.push_back(a[i]);
            ++i;
            ++j;
        }
    }
    return common;
}

SimilarityFeatures pair_features(UserId u, UserId v, const AffiliationIndex& index) {
    if (u == v) throw ValidationError("pair features need two distinct users");
    auto common = common_hashtags(u, v, index);
    if (common.empty())
        throw NoCommonHashtag("users " + std::to_string(u) + " and " + std::to_string(v) +
                              " share no hashtag");
    SimilarityFeatures f;
    f.num_common = common.size();
    f.smallest_size = index.tag_users[common.front()].size();
    f.largest_size = f.smallest_size;
    double size_sum = 0.0;
    for (TagId h : common) {
        const std::size_t size = index.tag_users[h].size();
        f.smallest_size = std::min(f.smallest_size, size);
        f.largest_size = std::max(f.largest_size, size);
        size_sum += static_cast<double>(size);
        f.sum_inverse += 1.0 / static_cast<double>(size);
        f.adamic_adar += 1.0 / std::log(static_cast<double>(size));
    }
    f.average_size = size_sum / static_cast<double>(common.size());
    return f;
}

TagId smallest_common_hashtag(UserId u, UserId v, const AffiliationIndex& index,
                              const IdMap& tags) {
    if (u == v) throw ValidationError("pair features need two distinct users");
    auto common = common_hashtags(u, v, index);
    if (common.empty())
        throw NoCommonHashtag("users " + std::to_string(u) + " and " + std::to_string(v) +
                              " share no hashtag");
    TagId best = common.front();
    std::size_t best_size = index.tag_users[best].size();
    for (std::size_t i = 1; i < common.size(); ++i) {
        const TagId h = common[i];
        const std::size_t size = index.tag_users[h].size();
        if (size < best_size ||
            (size == best_size && tags.name(h) < tags.name(best))) {
            best = h;
            best_size = size;
        }
    }
    return best;
}

std::size_t smallest_common_edges(UserId u, UserId v, const AffiliationIndex& index,
                                  const IdMap& tags, const GraphView& view,
                                  EdgeExclusion exclusion) {
    const TagId star = smallest_common_hashtag(u, v, index, tags);
    const auto& members = index.tag_users[star];
    std::unordered_set<UserId> inside(members.begin(), members.end());
    std::size_t count = 0;
    for (UserId a : members) {
        for (UserId b : view.neighbors(a)) {
            if (!inside.count(b)) continue;
            if (view.kind() == ViewKind::Social && a > b) continue;  // undirected, count once
            const bool touches_u = (a == u || b == u);
            const bool touches_v = (a == v || b == v);
            if (exclusion == EdgeExclusion::PairOnly) {
                if (touches_u && touches_v) continue;
            } else {
                if (touches_u || touches_v) continue;
            }
            ++count;
        }
    }
    return count;
}

std::vector<std::string> PairFeatureVector::names(bool with_edges) {
    static const char* bases[] = {"num_common",  "smallest_size", "largest_size",
                                  "average_size", "sum_inverse",   "adamic_adar",
                                  "smallest_edges"};
    std::vector<std::string> out;
    const std::size_t nbases = with_edges ? 7 : 6;
    for (std::size_t i = 0; i < nbases; ++i) {
        out.emplace_back(bases[i]);
        out.emplace_back(std::string(bases[i]) + "_log");
        out.emplace_back(std::string(bases[i]) + "_inv");
    }
    return out;
}

PairFeatureVector expand_transforms(const SimilarityFeatures& features,
                                    std::optional<std::size_t> corrected_edges) {
    std::vector<double> bases = {
        static_cast<double>(features.num_common),
        static_cast<double>(features.smallest_size),
        static_cast<double>(features.largest_size),
        features.average_size,
        features.sum_inverse,
        features.adamic_adar,
    };
    if (corrected_edges) bases.push_back(static_cast<double>(*corrected_edges));

    PairFeatureVector vec;
    vec.values.reserve(bases.size() * 3);
    for (double v : bases) {
        if (!std::isfinite(v)) throw ValidationError("non-finite feature value");
        vec.values.push_back(v);
        vec.values.push_back(std::log1p(v));
        vec.values.push_back(1.0 / (1.0 + v));
    }
    return vec;
}

}  // namespace tagnet
