#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tagnet/corpus.hpp"
#include "tagnet/logreg.hpp"
#include "tagnet/pair_features.hpp"
#include "tagnet/report.hpp"
#include "tagnet/subgraph_features.hpp"

namespace tagnet {

// How a "link" is defined for labelling: arcs at the given threshold, either
// direction (directed tasks) or reciprocated (mutual tasks).
struct EdgeDefinition {
    Weight threshold = 1;
    bool mutual = false;
};

struct LinkTaskSpec {
    std::string graph_label = "follow";  // echoed into reports
    EdgeDefinition edges;
    std::size_t sample_size = 20000;
    std::vector<std::string> feature_sets;  // empty: the full table
    int folds = 10;
    std::uint64_t seed = 1;
    double lambda = 1e-3;
    EdgeExclusion exclusion = EdgeExclusion::PairOnly;
    int threads = 1;
};

struct TaskRow {
    std::string feature_set;
    Metrics metrics;
};

struct LinkTaskReport {
    std::size_t positive_pool = 0;  // coinciding connected pairs available
    std::vector<TaskRow> rows;
    Metrics majority;
    Dataset features;  // sampled pairs x 21 named columns
    std::vector<std::pair<std::string, std::string>> pair_names;  // aligned with rows
};

// Balanced link prediction: positives enumerated from the view, negatives
// rejection-sampled uniformly over coinciding-but-unconnected pairs.
LinkTaskReport run_link_task(const Corpus& corpus, const LinkTaskSpec& spec);

struct GrowthTaskSpec {
    std::string graph_label = "follow";
    Weight threshold = 1;
    std::size_t k = 1000;
    bool doubling = true;       // target 2k
    std::size_t horizon = 0;    // absolute target when doubling is false
    std::vector<std::string> feature_sets;
    int folds = 10;
    std::uint64_t seed = 1;
    double lambda = 1e-3;
    int threads = 1;
};

struct GrowthTaskReport {
    std::size_t eligible = 0;
    std::size_t target = 0;
    std::vector<TaskRow> rows;
    Metrics majority;
    Dataset features;  // eligible tags x 33 named columns, unbalanced
    std::vector<TagId> tags;
    std::vector<std::size_t> final_sizes;
};

// Unbalanced growth prediction over hashtags with >= k adopters; the
// baseline row is the majority rate.
GrowthTaskReport run_growth_task(const Corpus& corpus, const GrowthTaskSpec& spec);

struct HorizonSpec {
    Weight threshold = 1;
    std::size_t k = 1000;
    std::vector<std::size_t> horizons;
    int folds = 5;
    std::uint64_t seed = 1;
    double lambda = 1e-3;
    int threads = 1;
};

// Accuracy / precision / recall / F1 of the all-features model vs the
// majority and random baselines, one x-point per horizon M. Horizons where
// one class vanishes carry baseline series only and are flagged in meta.
CurveReport horizon_sweep(const Corpus& corpus, const HorizonSpec& spec);

struct LinkageCurve {
    CurveReport curve;   // fraction connected per smallest-common-size bin
    double exponent = 0.0;
    double intercept = 0.0;  // ln c of  y = c * x^(-exponent)
    std::size_t pairs_total = 0;
    std::size_t bins_used = 0;
};

// Buckets every coinciding pair by its smallest-common-hashtag size
// (log-spaced bins) and fits ln y on ln x over the populated bins.
LinkageCurve linkage_probability_curve(const Corpus& corpus, EdgeDefinition edges,
                                       int bins = 24, std::size_t min_bin_pairs = 20,
                                       int threads = 1);

// (size, density) per hashtag for the top_n most-used hashtags.
CurveReport density_scatter(const Corpus& corpus, ViewKind kind, std::size_t top_n,
                            Weight threshold = 1);

enum class GrowthCurveFeature { Edges, Singletons };

// Hashtags sorted by the induced-subgraph feature at k; a fixed-width
// sliding window emits (center feature value, median final size).
CurveReport sliding_median_curve(const Corpus& corpus, std::size_t k,
                                 GrowthCurveFeature feature, std::size_t window = 101,
                                 Weight threshold = 1);

// Same windows; one series per K with the fraction of finals >= K.
CurveReport exceed_probability_curves(const Corpus& corpus, std::size_t k,
                                      const std::vector<std::size_t>& k_thresholds,
                                      GrowthCurveFeature feature, std::size_t window = 101,
                                      Weight threshold = 1);

// Complementary cumulative distribution of each structural feature, per k.
CurveReport feature_ccdf(const Corpus& corpus, const std::vector<std::size_t>& k_list,
                         Weight threshold = 1);

// Feature-set vocabulary (report row order mirrors the task tables).
const std::vector<std::string>& link_feature_sets();
const std::vector<std::string>& growth_feature_sets();
std::vector<std::size_t> link_feature_columns(const std::string& set);
std::vector<std::size_t> growth_feature_columns(const std::string& set);

// Dataset restricted to the named columns.
Dataset select_columns(const Dataset& data, const std::vector<std::size_t>& columns);

}  // namespace tagnet
