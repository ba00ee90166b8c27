#include "tagnet/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

#include "tagnet/rng.hpp"

namespace tagnet {

namespace {

// Static chunking; the worker index lets callers keep per-thread accumulators.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    const auto workers = static_cast<std::size_t>(std::max(threads, 1));
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            const std::size_t lo = n * t / workers;
            const std::size_t hi = n * (t + 1) / workers;
            for (std::size_t i = lo; i < hi; ++i) body(i, t);
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (stream + 1);
    return splitmix64(s);
}

bool coincides(UserId u, UserId v, const AffiliationIndex& index) {
    const auto& a = index.user_tags[u];
    const auto& b = index.user_tags[v];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else
            return true;
    }
    return false;
}

std::size_t count_common(UserId u, UserId v, const AffiliationIndex& index) {
    const auto& a = index.user_tags[u];
    const auto& b = index.user_tags[v];
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else
            ++n, ++i, ++j;
    }
    return n;
}

std::uint64_t pair_key(UserId u, UserId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

// The labelling views of a link task. For directed tasks a pair is connected
// when an arc exists in either direction at the threshold; for mutual tasks
// when the social view holds the undirected edge. The correction feature
// counts edges of the same type.
struct LinkViews {
    GraphView label_view;   // Full or Social
    bool mutual;

    LinkViews(const DirectedWeightedGraph& g, EdgeDefinition def)
        : label_view(g, def.mutual ? ViewKind::Social : ViewKind::Full, def.threshold),
          mutual(def.mutual) {}

    bool connected(UserId u, UserId v) const {
        if (mutual) return label_view.has(u, v);
        return label_view.has(u, v) || label_view.has(v, u);
    }
};

// Internal view-edge count per hashtag, excluding nothing; the pair
// correction subtracts the pair's own edges afterwards.
std::vector<std::size_t> tag_internal_edges(const AffiliationIndex& index,
                                            const GraphView& view, int threads) {
    std::vector<std::size_t> counts(index.tag_count(), 0);
    parallel_for(index.tag_count(), threads, [&](std::size_t h, std::size_t) {
        const auto& members = index.tag_users[h];
        if (members.size() < 2) return;
        counts[h] = induce_members(members, view).edges.size();
    });
    return counts;
}

std::size_t pair_internal_edges(UserId u, UserId v, const GraphView& view) {
    if (view.kind() == ViewKind::Social) return view.has(u, v) ? 1 : 0;
    return (view.has(u, v) ? 1 : 0) + (view.has(v, u) ? 1 : 0);
}

// Uniform sampler over distinct coinciding pairs: propose a hashtag with
// probability proportional to its pair count, a pair inside it, then accept
// with probability 1/m where m is the pair's common-hashtag count.
class CoincidingPairSampler {
public:
    CoincidingPairSampler(const AffiliationIndex& index, Rng& rng) : index_(index), rng_(rng) {
        double total = 0.0;
        for (TagId h = 0; h < index.tag_count(); ++h) {
            const auto s = static_cast<double>(index.tag_users[h].size());
            total += s * (s - 1.0) / 2.0;
            cumulative_.push_back(total);
            tags_.push_back(h);
        }
        if (total <= 0.0) throw SamplingError("no hashtag hosts a user pair");
    }

    std::pair<UserId, UserId> draw() {
        for (int attempt = 0; attempt < 1 << 20; ++attempt) {
            const double r = rng_.uniform01() * cumulative_.back();
            const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
            const TagId h = tags_[static_cast<std::size_t>(it - cumulative_.begin())];
            const auto& members = index_.tag_users[h];
            const std::size_t i = rng_.below(members.size());
            std::size_t j = rng_.below(members.size() - 1);
            if (j >= i) ++j;
            UserId u = members[i], v = members[j];
            const std::size_t m = count_common(u, v, index_);
            if (m == 0) continue;  // unreachable: they share h
            if (m == 1 || rng_.uniform01() < 1.0 / static_cast<double>(m))
                return {std::min(u, v), std::max(u, v)};
        }
        throw SamplingError("coinciding-pair sampler failed to accept");
    }

private:
    const AffiliationIndex& index_;
    Rng& rng_;
    std::vector<double> cumulative_;
    std::vector<TagId> tags_;
};

struct PairList {
    std::vector<std::pair<UserId, UserId>> pairs;
    std::vector<int> labels;
};

// Positives: every coinciding connected pair of the label view.
// Negatives: exactly `need` coinciding-but-unconnected pairs.
PairList build_link_pool(const Corpus& corpus, const LinkViews& views, std::size_t need,
                         Rng& rng) {
    PairList pool;
    std::set<std::pair<UserId, UserId>> positive_set;
    for (auto [u, v] : views.label_view.edge_list()) {
        if (u > v) std::swap(u, v);
        positive_set.insert({u, v});
    }
    for (const auto& [u, v] : positive_set) {
        if (!coincides(u, v, corpus.index)) continue;
        pool.pairs.emplace_back(u, v);
        pool.labels.push_back(1);
    }
    const std::size_t positives = pool.pairs.size();
    if (positives < need)
        throw SamplingError("positive class too small: " + std::to_string(positives) +
                            " coinciding connected pairs < " + std::to_string(need));

    CoincidingPairSampler sampler(corpus.index, rng);
    std::unordered_set<std::uint64_t> seen;
    const std::size_t max_attempts = std::max<std::size_t>(1000000, 500 * need);
    std::size_t negatives = 0;
    for (std::size_t attempt = 0; attempt < max_attempts && negatives < need; ++attempt) {
        const auto [u, v] = sampler.draw();
        if (views.connected(u, v)) continue;
        if (!seen.insert(pair_key(u, v)).second) continue;
        pool.pairs.emplace_back(u, v);
        pool.labels.push_back(0);
        ++negatives;
    }
    if (negatives < need)
        throw SamplingError("negative class too small: found " + std::to_string(negatives) +
                            " coinciding unconnected pairs < " + std::to_string(need));
    return pool;
}

}  // namespace

const std::vector<std::string>& link_feature_sets() {
    static const std::vector<std::string> sets = {
        "all",         "common",       "smallest", "largest", "average",
        "sum_inverse", "adamic_adar",  "all_plus_edges", "edges"};
    return sets;
}

std::vector<std::size_t> link_feature_columns(const std::string& set) {
    auto base_block = [](std::size_t b) {
        return std::vector<std::size_t>{3 * b, 3 * b + 1, 3 * b + 2};
    };
    if (set == "all") {
        std::vector<std::size_t> cols(18);
        for (std::size_t i = 0; i < 18; ++i) cols[i] = i;
        return cols;
    }
    if (set == "all_plus_edges") {
        std::vector<std::size_t> cols(21);
        for (std::size_t i = 0; i < 21; ++i) cols[i] = i;
        return cols;
    }
    if (set == "common") return base_block(0);
    if (set == "smallest") return base_block(1);
    if (set == "largest") return base_block(2);
    if (set == "average") return base_block(3);
    if (set == "sum_inverse") return base_block(4);
    if (set == "adamic_adar") return base_block(5);
    if (set == "edges") return base_block(6);
    throw ValidationError("unknown link feature set: " + set);
}

const std::vector<std::string>& growth_feature_sets() {
    static const std::vector<std::string> sets = {
        "all",
        "social_only",
        "full_only",
        "info_only",
        "full_edges",
        "social_edges",
        "full_components",
        "social_components",
        "info_components",
        "full_singletons",
        "social_singletons",
        "info_singletons",
        "full_max_component",
        "social_max_component",
        "info_max_component",
        "info_edges",
    };
    return sets;
}

std::vector<std::size_t> growth_feature_columns(const std::string& set) {
    // per-view layout: edges(2), singletons(3), components(3), max_component(3)
    constexpr std::size_t per_view = 11;
    auto view_offset = [](const std::string& name) -> std::size_t {
        if (name.rfind("full", 0) == 0) return 0;
        if (name.rfind("social", 0) == 0) return per_view;
        if (name.rfind("info", 0) == 0) return 2 * per_view;
        throw ValidationError("unknown growth feature set view: " + name);
    };
    auto range = [](std::size_t lo, std::size_t len) {
        std::vector<std::size_t> cols(len);
        for (std::size_t i = 0; i < len; ++i) cols[i] = lo + i;
        return cols;
    };
    if (set == "all") return range(0, 33);
    if (set == "full_only") return range(0, per_view);
    if (set == "social_only") return range(per_view, per_view);
    if (set == "info_only") return range(2 * per_view, per_view);
    const std::size_t off = view_offset(set);
    if (set.ends_with("_edges")) return range(off, 2);
    if (set.ends_with("_singletons")) return range(off + 2, 3);
    if (set.ends_with("_components")) return range(off + 5, 3);
    if (set.ends_with("_max_component")) return range(off + 8, 3);
    throw ValidationError("unknown growth feature set: " + set);
}

Dataset select_columns(const Dataset& data, const std::vector<std::size_t>& columns) {
    Dataset out;
    out.labels = data.labels;
    for (std::size_t c : columns) out.feature_names.push_back(data.feature_names.at(c));
    out.rows.reserve(data.size());
    for (const auto& row : data.rows) {
        std::vector<double> selected;
        selected.reserve(columns.size());
        for (std::size_t c : columns) selected.push_back(row.at(c));
        out.rows.push_back(std::move(selected));
    }
    return out;
}

LinkTaskReport run_link_task(const Corpus& corpus, const LinkTaskSpec& spec) {
    if (spec.sample_size < 4 || spec.sample_size % 2 != 0)
        throw ValidationError("link task sample size must be even and >= 4");
    const LinkViews views(corpus.graph, spec.edges);

    Rng negative_rng(derive_seed(spec.seed, 1));
    PairList pool = build_link_pool(corpus, views, spec.sample_size / 2, negative_rng);

    LinkTaskReport report;
    for (int y : pool.labels) report.positive_pool += (y == 1);

    const auto chosen =
        balanced_sample_indices(pool.labels, spec.sample_size, derive_seed(spec.seed, 2));

    // featurize the sampled pairs (all 21 columns, cached edge correction)
    const std::vector<std::size_t> tag_edges =
        tag_internal_edges(corpus.index, views.label_view, spec.threads);

    report.features.feature_names = PairFeatureVector::names(true);
    report.features.rows.resize(chosen.size());
    report.features.labels.resize(chosen.size());
    report.pair_names.resize(chosen.size());
    parallel_for(chosen.size(), spec.threads, [&](std::size_t i, std::size_t) {
        const auto [u, v] = pool.pairs[chosen[i]];
        const SimilarityFeatures f = pair_features(u, v, corpus.index);
        std::size_t corrected;
        if (spec.exclusion == EdgeExclusion::PairOnly) {
            const TagId star = smallest_common_hashtag(u, v, corpus.index, corpus.tags);
            corrected = tag_edges[star] - pair_internal_edges(u, v, views.label_view);
        } else {
            corrected = smallest_common_edges(u, v, corpus.index, corpus.tags,
                                              views.label_view, spec.exclusion);
        }
        report.features.rows[i] = expand_transforms(f, corrected).values;
        report.features.labels[i] = pool.labels[chosen[i]];
        report.pair_names[i] = {corpus.users.name(u), corpus.users.name(v)};
    });

    const auto& sets = spec.feature_sets.empty() ? link_feature_sets() : spec.feature_sets;
    TrainOptions options;
    options.lambda = spec.lambda;
    const std::uint64_t cv_seed = derive_seed(spec.seed, 3);
    for (const auto& set : sets) {
        Dataset subset = select_columns(report.features, link_feature_columns(set));
        const CvResult cv = kfold(subset, spec.folds, cv_seed, options);
        report.rows.push_back({set, cv.mean});
    }
    report.majority = baseline_majority(report.features.labels);
    return report;
}

GrowthTaskReport run_growth_task(const Corpus& corpus, const GrowthTaskSpec& spec) {
    if (spec.k < 1) throw ValidationError("growth task needs k >= 1");
    std::size_t target = spec.doubling ? 2 * spec.k : spec.horizon;
    if (!spec.doubling && target <= spec.k)
        throw ValidationError("growth horizon must exceed k");

    GrowthTaskReport report;
    report.target = target;
    for (const auto& trace : corpus.traces)
        if (trace.adopters.size() >= spec.k) report.tags.push_back(trace.tag);
    report.eligible = report.tags.size();
    if (report.eligible < 2)
        throw InsufficientAdopters("only " + std::to_string(report.eligible) +
                                   " hashtags have >= " + std::to_string(spec.k) + " adopters");

    const ViewTriple triple(corpus.graph, spec.threshold);
    report.features.feature_names = GrowthFeatureVector::names();
    report.features.rows.resize(report.eligible);
    report.features.labels.resize(report.eligible);
    report.final_sizes.resize(report.eligible);
    parallel_for(report.eligible, spec.threads, [&](std::size_t i, std::size_t) {
        const auto& trace = corpus.traces[report.tags[i]];
        const auto vec = growth_features(trace, spec.k, triple);
        report.features.rows[i].assign(vec.values.begin(), vec.values.end());
        report.final_sizes[i] = trace.adopters.size();
        report.features.labels[i] = trace.adopters.size() >= target ? 1 : 0;
    });

    bool has0 = false, has1 = false;
    for (int y : report.features.labels) (y ? has1 : has0) = true;
    if (!has0 || !has1)
        throw DegenerateLabels("every eligible hashtag has the same growth outcome");

    const auto& sets = spec.feature_sets.empty() ? growth_feature_sets() : spec.feature_sets;
    TrainOptions options;
    options.lambda = spec.lambda;
    const std::uint64_t cv_seed = derive_seed(spec.seed, 4);
    for (const auto& set : sets) {
        Dataset subset = select_columns(report.features, growth_feature_columns(set));
        const CvResult cv = kfold(subset, spec.folds, cv_seed, options);
        report.rows.push_back({set, cv.mean});
    }
    report.majority = baseline_majority(report.features.labels);
    return report;
}

CurveReport horizon_sweep(const Corpus& corpus, const HorizonSpec& spec) {
    if (spec.horizons.empty()) throw ValidationError("horizon sweep needs at least one M");

    // features once; labels recomputed per horizon
    std::vector<TagId> tags;
    for (const auto& trace : corpus.traces)
        if (trace.adopters.size() >= spec.k) tags.push_back(trace.tag);
    if (tags.size() < 2)
        throw InsufficientAdopters("only " + std::to_string(tags.size()) +
                                   " hashtags have >= " + std::to_string(spec.k) + " adopters");
    const ViewTriple triple(corpus.graph, spec.threshold);
    Dataset all;
    all.feature_names = GrowthFeatureVector::names();
    all.rows.resize(tags.size());
    std::vector<std::size_t> finals(tags.size());
    parallel_for(tags.size(), spec.threads, [&](std::size_t i, std::size_t) {
        const auto& trace = corpus.traces[tags[i]];
        const auto vec = growth_features(trace, spec.k, triple);
        all.rows[i].assign(vec.values.begin(), vec.values.end());
        finals[i] = trace.adopters.size();
    });

    std::vector<std::size_t> horizons = spec.horizons;
    std::sort(horizons.begin(), horizons.end());
    horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());

    CurveReport report;
    report.title = "growth metrics vs horizon";
    report.meta.push_back({"k", std::to_string(spec.k)});
    report.meta.push_back({"folds", std::to_string(spec.folds)});
    report.meta.push_back({"seed", std::to_string(spec.seed)});

    const char* metric_names[] = {"accuracy", "precision", "recall", "f1"};
    std::map<std::string, CurveSeries> series;
    for (const char* method : {"model", "majority", "random"})
        for (const char* metric : metric_names)
            series[std::string(method) + "_" + metric].name =
                std::string(method) + "_" + metric;

    std::string degenerate;
    TrainOptions options;
    options.lambda = spec.lambda;
    for (const std::size_t m : horizons) {
        all.labels.assign(tags.size(), 0);
        std::size_t reached = 0;
        for (std::size_t i = 0; i < tags.size(); ++i) {
            all.labels[i] = finals[i] >= m ? 1 : 0;
            reached += all.labels[i];
        }
        const double x = static_cast<double>(m);
        const double rate = static_cast<double>(reached) / static_cast<double>(tags.size());
        const Metrics majority = baseline_majority(all.labels);
        const Metrics random =
            baseline_random(all.labels, rate, derive_seed(spec.seed, 100 + m));
        auto push = [&](const char* method, const Metrics& metrics) {
            const double values[] = {metrics.accuracy, metrics.precision, metrics.recall,
                                     metrics.f1};
            for (int q = 0; q < 4; ++q)
                series[std::string(method) + "_" + metric_names[q]].points.push_back(
                    {x, values[q]});
        };
        push("majority", majority);
        push("random", random);
        if (reached == 0 || reached == tags.size()) {
            if (!degenerate.empty()) degenerate += ",";
            degenerate += std::to_string(m);
            continue;  // baselines only at degenerate horizons
        }
        const CvResult cv = kfold(all, spec.folds, derive_seed(spec.seed, 5), options);
        push("model", cv.mean);
    }
    if (!degenerate.empty()) report.meta.push_back({"degenerate_horizons", degenerate});

    for (auto& [name, s] : series) report.series.push_back(std::move(s));
    report.validate();
    return report;
}

LinkageCurve linkage_probability_curve(const Corpus& corpus, EdgeDefinition edges, int bins,
                                       std::size_t min_bin_pairs, int threads) {
    if (bins < 2) throw ValidationError("need at least 2 bins");
    const LinkViews views(corpus.graph, edges);
    const auto& index = corpus.index;

    std::size_t max_size = 0;
    for (const auto& members : index.tag_users) max_size = std::max(max_size, members.size());
    if (max_size < 2) throw FitError("no hashtag hosts a user pair");

    const double lo = std::log(2.0);
    const double hi = std::log(static_cast<double>(max_size)) + 1e-9;
    const auto nbins = static_cast<std::size_t>(bins);
    auto bin_of = [&](std::size_t size) {
        const double z = (std::log(static_cast<double>(size)) - lo) / (hi - lo);
        const auto b = static_cast<std::size_t>(z * static_cast<double>(nbins));
        return std::min(b, nbins - 1);
    };

    // Integer counters per exact size keep the result identical at any
    // thread count; float reductions happen in one sequential pass below.
    const int workers = std::max(threads, 1);
    std::vector<std::vector<std::size_t>> pairs_by_size(workers,
                                                        std::vector<std::size_t>(max_size + 1, 0));
    std::vector<std::vector<std::size_t>> connected_by_size(
        workers, std::vector<std::size_t>(max_size + 1, 0));

    // every pair is attributed to exactly one hashtag, its smallest common
    // one, so no global dedup set is needed
    parallel_for(index.tag_count(), workers, [&](std::size_t h, std::size_t worker) {
        const auto& members = index.tag_users[h];
        if (members.size() < 2) return;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const UserId u = members[i], v = members[j];
                if (smallest_common_hashtag(u, v, index, corpus.tags) != h) continue;
                ++pairs_by_size[worker][members.size()];
                connected_by_size[worker][members.size()] += views.connected(u, v) ? 1 : 0;
            }
        }
    });

    struct Bin {
        std::size_t pairs = 0;
        std::size_t connected = 0;
        double log_x_sum = 0.0;
    };
    std::vector<Bin> totals(nbins);
    for (std::size_t size = 2; size <= max_size; ++size) {
        std::size_t pairs = 0, connected = 0;
        for (int t = 0; t < workers; ++t) {
            pairs += pairs_by_size[t][size];
            connected += connected_by_size[t][size];
        }
        if (pairs == 0) continue;
        Bin& bin = totals[bin_of(size)];
        bin.pairs += pairs;
        bin.connected += connected;
        bin.log_x_sum += static_cast<double>(pairs) * std::log(static_cast<double>(size));
    }

    LinkageCurve result;
    result.curve.title = "linkage probability vs smallest common hashtag size";
    result.curve.meta.push_back({"bins", std::to_string(bins)});
    result.curve.meta.push_back({"min_bin_pairs", std::to_string(min_bin_pairs)});
    result.curve.meta.push_back({"mutual", edges.mutual ? "1" : "0"});
    result.curve.meta.push_back({"threshold", std::to_string(edges.threshold)});
    CurveSeries curve{"p_link", {}};

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t fit_bins = 0, populated = 0;
    for (std::size_t b = 0; b < nbins; ++b) {
        Bin total;
        for (int t = 0; t < workers; ++t) {
            total.pairs += partial[t][b].pairs;
            total.connected += partial[t][b].connected;
            total.log_x_sum += partial[t][b].log_x_sum;
        }
        if (total.pairs == 0) continue;
        ++populated;
        result.pairs_total += total.pairs;
        const double x = std::exp(total.log_x_sum / static_cast<double>(total.pairs));
        const double y =
            static_cast<double>(total.connected) / static_cast<double>(total.pairs);
        curve.points.push_back({x, y});
        if (total.pairs >= min_bin_pairs && y > 0.0) {
            const double lx = std::log(x), ly = std::log(y);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++fit_bins;
        }
    }
    if (populated < 2) throw FitError("fewer than 2 populated bins");
    if (fit_bins < 2) throw FitError("fewer than 2 fittable bins (zero-connection bins?)");
    const double nf = static_cast<double>(fit_bins);
    const double denom = nf * sxx - sx * sx;
    if (denom == 0.0) throw FitError("degenerate x spread in fit");
    const double slope = (nf * sxy - sx * sy) / denom;
    result.exponent = -slope;
    result.intercept = (sy - slope * sx) / nf;
    result.bins_used = fit_bins;
    result.curve.series.push_back(std::move(curve));
    result.curve.meta.push_back({"exponent", format_double(result.exponent)});
    result.curve.meta.push_back({"pairs", std::to_string(result.pairs_total)});
    result.curve.validate();
    return result;
}

CurveReport density_scatter(const Corpus& corpus, ViewKind kind, std::size_t top_n,
                            Weight threshold) {
    const GraphView view(corpus.graph, kind, threshold);
    std::vector<TagId> eligible;
    for (TagId h = 0; h < corpus.index.tag_count(); ++h)
        if (corpus.index.tag_users[h].size() >= 2) eligible.push_back(h);
    if (eligible.empty()) throw ValidationError("no hashtag with at least 2 users");

    // most-used first; ties by external id
    std::sort(eligible.begin(), eligible.end(), [&](TagId a, TagId b) {
        const auto sa = corpus.index.tag_users[a].size();
        const auto sb = corpus.index.tag_users[b].size();
        if (sa != sb) return sa > sb;
        return corpus.tags.name(a) < corpus.tags.name(b);
    });
    if (eligible.size() > top_n) eligible.resize(top_n);

    struct Point {
        double size;
        double density;
        std::string name;
    };
    std::vector<Point> points;
    points.reserve(eligible.size());
    for (TagId h : eligible)
        points.push_back({static_cast<double>(corpus.index.tag_users[h].size()),
                          hashtag_density(h, corpus.index, view), corpus.tags.name(h)});
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        if (a.size != b.size) return a.size < b.size;
        if (a.density != b.density) return a.density < b.density;
        return a.name < b.name;
    });

    CurveReport report;
    report.title = "hashtag edge density vs size";
    report.scatter = true;
    report.meta.push_back({"view", view_name(kind)});
    report.meta.push_back({"top_n", std::to_string(top_n)});
    CurveSeries s{"density", {}};
    for (const auto& p : points) s.points.push_back({p.size, p.density});
    report.series.push_back(std::move(s));
    report.validate();
    return report;
}

namespace {

struct WindowInput {
    std::vector<double> feature;  // sorted ascending
    std::vector<double> final_size;  // aligned
};

WindowInput windowed_tags(const Corpus& corpus, std::size_t k, GrowthCurveFeature feature,
                          Weight threshold) {
    const GraphView full(corpus.graph, ViewKind::Full, threshold);
    struct Row {
        double value;
        double final_size;
        std::string name;
    };
    std::vector<Row> rows;
    for (const auto& trace : corpus.traces) {
        if (trace.adopters.size() < k) continue;
        const auto f = structural_features(induce(trace, k, full));
        const double value = static_cast<double>(
            feature == GrowthCurveFeature::Edges ? f.edge_count : f.singleton_count);
        rows.push_back({value, static_cast<double>(trace.adopters.size()),
                        corpus.tags.name(trace.tag)});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.name < b.name;
    });
    WindowInput input;
    for (const auto& r : rows) {
        input.feature.push_back(r.value);
        input.final_size.push_back(r.final_size);
    }
    return input;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return (n % 2) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Collapses window points sharing a center value so curve x stays strictly
// increasing; y becomes the mean of the collapsed window statistics.
std::vector<CurvePoint> collapse_equal_x(const std::vector<CurvePoint>& raw) {
    std::vector<CurvePoint> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < raw.size() && raw[j].x == raw[i].x) sum += raw[j++].y;
        out.push_back({raw[i].x, sum / static_cast<double>(j - i)});
        i = j;
    }
    return out;
}

}  // namespace

CurveReport sliding_median_curve(const Corpus& corpus, std::size_t k,
                                 GrowthCurveFeature feature, std::size_t window,
                                 Weight threshold) {
    if (window < 1 || window % 2 == 0)
        throw ValidationError("window width must be odd and positive");
    const WindowInput input = windowed_tags(corpus, k, feature, threshold);
    if (input.feature.size() < window)
        throw WindowError("only " + std::to_string(input.feature.size()) +
                          " eligible hashtags for window " + std::to_string(window));

    std::vector<CurvePoint> raw;
    for (std::size_t start = 0; start + window <= input.feature.size(); ++start) {
        std::vector<double> finals(input.final_size.begin() + start,
                                   input.final_size.begin() + start + window);
        raw.push_back({input.feature[start + window / 2], median_of(std::move(finals))});
    }

    CurveReport report;
    report.title = "median final adopters vs initial-subgraph feature";
    report.meta.push_back({"k", std::to_string(k)});
    report.meta.push_back({"window", std::to_string(window)});
    report.meta.push_back(
        {"feature", feature == GrowthCurveFeature::Edges ? "edges" : "singletons"});
    report.series.push_back({"median_final", collapse_equal_x(raw)});
    report.validate();
    return report;
}

CurveReport exceed_probability_curves(const Corpus& corpus, std::size_t k,
                                      const std::vector<std::size_t>& k_thresholds,
                                      GrowthCurveFeature feature, std::size_t window,
                                      Weight threshold) {
    if (window < 1 || window % 2 == 0)
        throw ValidationError("window width must be odd and positive");
    if (k_thresholds.empty()) throw ValidationError("need at least one K");
    const WindowInput input = windowed_tags(corpus, k, feature, threshold);
    if (input.feature.size() < window)
        throw WindowError("only " + std::to_string(input.feature.size()) +
                          " eligible hashtags for window " + std::to_string(window));

    CurveReport report;
    report.title = "exceed probability vs initial-subgraph feature";
    report.meta.push_back({"k", std::to_string(k)});
    report.meta.push_back({"window", std::to_string(window)});
    report.meta.push_back(
        {"feature", feature == GrowthCurveFeature::Edges ? "edges" : "singletons"});

    std::vector<std::size_t> ks = k_thresholds;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (std::size_t kk : ks) {
        std::vector<CurvePoint> raw;
        for (std::size_t start = 0; start + window <= input.feature.size(); ++start) {
            std::size_t reached = 0;
            for (std::size_t i = start; i < start + window; ++i)
                reached += input.final_size[i] >= static_cast<double>(kk) ? 1 : 0;
            raw.push_back({input.feature[start + window / 2],
                           static_cast<double>(reached) / static_cast<double>(window)});
        }
        report.series.push_back({"K=" + std::to_string(kk), collapse_equal_x(raw)});
    }
    report.validate();
    return report;
}

CurveReport feature_ccdf(const Corpus& corpus, const std::vector<std::size_t>& k_list,
                         Weight threshold) {
    if (k_list.empty()) throw ValidationError("need at least one k");
    const GraphView full(corpus.graph, ViewKind::Full, threshold);

    CurveReport report;
    report.title = "structural feature CCDFs";
    const char* feature_names[] = {"edges", "singletons", "components", "max_component"};

    for (std::size_t k : k_list) {
        std::vector<std::vector<double>> values(4);
        for (const auto& trace : corpus.traces) {
            if (trace.adopters.size() < k) continue;
            const auto f = structural_features(induce(trace, k, full));
            values[0].push_back(static_cast<double>(f.edge_count));
            values[1].push_back(static_cast<double>(f.singleton_count));
            values[2].push_back(static_cast<double>(f.component_count));
            values[3].push_back(static_cast<double>(f.max_component_size));
        }
        if (values[0].empty())
            throw InsufficientAdopters("no hashtag has >= " + std::to_string(k) + " adopters");
        for (int q = 0; q < 4; ++q) {
            auto& v = values[q];
            std::sort(v.begin(), v.end());
            CurveSeries s{std::string(feature_names[q]) + ",k=" + std::to_string(k), {}};
            const auto n = static_cast<double>(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i > 0 && v[i] == v[i - 1]) continue;  // one point per distinct value
                s.points.push_back({v[i], static_cast<double>(v.size() - i) / n});
            }
            report.series.push_back(std::move(s));
        }
    }
    report.meta.push_back({"threshold", std::to_string(threshold)});
    report.validate();
    return report;
}

}  // namespace tagnet
