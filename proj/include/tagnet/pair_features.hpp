#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tagnet/corpus.hpp"

namespace tagnet {

// The six common-hashtag similarity features of a user pair. Only defined
// when the pair coincides on at least one hashtag; every common hashtag
// contains both users, so all sizes are >= 2.
struct SimilarityFeatures {
    std::size_t num_common = 0;
    std::size_t smallest_size = 0;
    std::size_t largest_size = 0;
    double average_size = 0.0;
    double sum_inverse = 0.0;   // sum of 1/|U(h)|
    double adamic_adar = 0.0;   // sum of 1/ln|U(h)|
};

// How the corrected edge count treats edges touching the pair itself.
//   PairOnly:    drop only edges whose endpoint set is exactly {u,v} (default)
//   AllIncident: drop every edge incident to u or v (stricter variant)
enum class EdgeExclusion { PairOnly, AllIncident };

struct PairFeatureVector {
    std::vector<double> values;

    static std::size_t width(bool with_edges) { return with_edges ? 21 : 18; }
    static std::vector<std::string> names(bool with_edges);
};

// Sorted intersection of the two users' tag lists (linear merge).
std::vector<TagId> common_hashtags(UserId u, UserId v, const AffiliationIndex& index);

SimilarityFeatures pair_features(UserId u, UserId v, const AffiliationIndex& index);

// The smallest common hashtag of the pair; ties broken by ascending external
// hashtag id. Needs the id map only for the tie break.
TagId smallest_common_hashtag(UserId u, UserId v, const AffiliationIndex& index,
                              const IdMap& tags);

// Edges of the view inside U(h*) for the pair's smallest common hashtag h*,
// excluding the edge(s) between the two users themselves.
std::size_t smallest_common_edges(UserId u, UserId v, const AffiliationIndex& index,
                                  const IdMap& tags, const GraphView& view,
                                  EdgeExclusion exclusion = EdgeExclusion::PairOnly);

// For each base value v emits (v, ln(1+v), 1/(1+v)); the shift keeps both
// transforms total at v = 0.
PairFeatureVector expand_transforms(const SimilarityFeatures& features,
                                    std::optional<std::size_t> corrected_edges);

}  // namespace tagnet
