#include "tagnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

#include "tagnet/rng.hpp"

namespace tagnet {

const char* mechanism_name(Mechanism m) {
    switch (m) {
        case Mechanism::Viral: return "viral";
        case Mechanism::Exogenous: return "exogenous";
        case Mechanism::Intermediate: return "intermediate";
    }
    return "?";
}

void SynthSpec::validate() const {
    if (users < 2 || hashtags < 1 || communities < 1)
        throw ValidationError("synth spec: counts must be positive");
    for (double p : {intra_pair_prob, inter_pair_prob, reciprocation_prob, cascade_prob,
                     intermediate_cascade_prob, exogenous_rate})
        if (p < 0.0 || p > 1.0) throw ValidationError("synth spec: probability outside [0,1]");
    const double mix = mix_viral + mix_exogenous + mix_intermediate;
    if (std::abs(mix - 1.0) > 1e-9)
        throw ValidationError("synth spec: mechanism mixture weights must sum to 1");
    if (!community_sizes.empty()) {
        if (community_sizes.size() != communities)
            throw ValidationError("synth spec: community size list length mismatch");
        std::size_t total = 0;
        for (std::size_t s : community_sizes) {
            if (s == 0) throw ValidationError("synth spec: empty community");
            total += s;
        }
        if (total != users)
            throw ValidationError("synth spec: community sizes must sum to the user count");
    } else if (communities > users) {
        throw ValidationError("synth spec: more communities than users");
    }
    if (initial_adopters < 1) throw ValidationError("synth spec: initial adopter count");
    for (auto [lo, hi] : {std::pair{viral_mult_lo, viral_mult_hi},
                          std::pair{exogenous_mult_lo, exogenous_mult_hi},
                          std::pair{intermediate_mult_lo, intermediate_mult_hi}})
        if (lo < 1.0 || hi < lo) throw ValidationError("synth spec: bad growth multiplier range");
}

SynthSpec SynthSpec::link_default() {
    SynthSpec spec;
    spec.users = 5000;
    spec.hashtags = 600;
    spec.communities = 10;  // equal sizes: every community hosts every mechanism
    spec.intra_pair_prob = 0.03;
    spec.inter_pair_prob = 0.001;
    spec.reciprocation_prob = 0.55;
    spec.seed = 7;
    return spec;
}

SynthSpec SynthSpec::growth_default() {
    SynthSpec spec;
    spec.users = 5000;
    spec.hashtags = 600;
    spec.communities = 14;
    spec.community_sizes = {200, 200, 200, 200, 200, 200,            // intermediate homes
                            475, 475, 475, 475, 475, 475, 475, 475}; // viral seed grounds
    spec.intra_pair_prob = 0.02;
    spec.inter_pair_prob = 0.001;
    spec.reciprocation_prob = 0.45;
    spec.cascade_prob = 0.40;
    spec.intermediate_cascade_prob = 0.06;
    spec.seed = 11;
    return spec;
}

namespace {

std::string padded(const char* prefix, std::size_t id, std::size_t width) {
    std::string digits = std::to_string(id);
    std::string out(prefix);
    out.append(width > digits.size() ? width - digits.size() : 0, '0');
    out += digits;
    return out;
}

std::size_t digits_of(std::size_t n) { return std::to_string(n > 0 ? n - 1 : 0).size(); }

struct CommunityLayout {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> first;      // first user id of each community
    std::vector<std::size_t> of_user;
};

CommunityLayout layout_communities(const SynthSpec& spec) {
    CommunityLayout layout;
    if (!spec.community_sizes.empty()) {
        layout.sizes = spec.community_sizes;
    } else {
        const std::size_t base = spec.users / spec.communities;
        const std::size_t extra = spec.users % spec.communities;
        layout.sizes.assign(spec.communities, base);
        for (std::size_t c = 0; c < extra; ++c) ++layout.sizes[c];
    }
    layout.first.resize(layout.sizes.size());
    layout.of_user.resize(spec.users);
    std::size_t next = 0;
    for (std::size_t c = 0; c < layout.sizes.size(); ++c) {
        layout.first[c] = next;
        for (std::size_t i = 0; i < layout.sizes[c]; ++i) layout.of_user[next + i] = c;
        next += layout.sizes[c];
    }
    return layout;
}

// Communities eligible as cascade homes: viral prefers at-least-median
// sizes, intermediate at-most-median, so heterogeneous layouts send weak
// cascades to the small communities. Equal sizes make everything eligible.
std::vector<std::size_t> eligible_communities(const CommunityLayout& layout, bool small) {
    std::vector<std::size_t> sorted = layout.sizes;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t lower = sorted[(sorted.size() - 1) / 2];
    const std::size_t upper = sorted[sorted.size() / 2];
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < layout.sizes.size(); ++c) {
        if (small ? layout.sizes[c] <= lower : layout.sizes[c] >= upper) out.push_back(c);
    }
    return out;
}

class AdopterPicker {
public:
    AdopterPicker(std::size_t users, Rng& rng) : adopted_(users, 0), rng_(rng) {}

    bool adopted(UserId u) const { return adopted_[u] != 0; }
    std::size_t count() const { return count_; }

    void adopt(UserId u) {
        adopted_[u] = 1;
        ++count_;
    }

    // Uniform non-adopter inside [first, first+size); users if size == 0.
    UserId random_fresh(std::size_t first, std::size_t size) {
        const std::size_t lo = size ? first : 0;
        const std::size_t span = size ? size : adopted_.size();
        for (int attempt = 0; attempt < 100000; ++attempt) {
            auto u = static_cast<UserId>(lo + rng_.below(span));
            if (!adopted_[u]) return u;
        }
        throw ValidationError("synth: exhausted fresh adopters");
    }

    bool range_full(std::size_t first, std::size_t size) const {
        for (std::size_t u = first; u < first + size; ++u)
            if (!adopted_[u]) return false;
        return true;
    }

private:
    std::vector<char> adopted_;
    std::size_t count_ = 0;
    Rng& rng_;
};

}  // namespace

SynthOutput generate(const SynthSpec& spec, const std::filesystem::path& out_dir) {
    spec.validate();
    std::filesystem::create_directories(out_dir);
    Rng rng(spec.seed);

    const CommunityLayout layout = layout_communities(spec);
    const std::size_t n = spec.users;

    // Relationship pass: one draw per unordered pair, fixed iteration order.
    std::vector<Arc> arcs;
    std::vector<std::vector<UserId>> contacts(n);
    for (UserId u = 0; u < n; ++u) {
        for (UserId v = u + 1; v < n; ++v) {
            const double p = (layout.of_user[u] == layout.of_user[v]) ? spec.intra_pair_prob
                                                                      : spec.inter_pair_prob;
            if (!rng.bernoulli(p)) continue;
            if (rng.bernoulli(spec.reciprocation_prob)) {
                arcs.push_back({u, v, 1});
                arcs.push_back({v, u, 1});
            } else if (rng.bernoulli(0.5)) {
                arcs.push_back({u, v, 1});
            } else {
                arcs.push_back({v, u, 1});
            }
            contacts[u].push_back(v);
            contacts[v].push_back(u);
        }
    }

    // Adoption pass.
    const auto viral_homes = eligible_communities(layout, false);
    const auto inter_homes = eligible_communities(layout, true);

    GroundTruth truth;
    truth.user_community = layout.of_user;
    truth.community_sizes = layout.sizes;
    std::vector<std::vector<UserId>> adopter_lists(spec.hashtags);

    for (std::size_t h = 0; h < spec.hashtags; ++h) {
        const double roll = rng.uniform01();
        Mechanism mech = (roll < spec.mix_viral) ? Mechanism::Viral
                         : (roll < spec.mix_viral + spec.mix_exogenous) ? Mechanism::Exogenous
                                                                        : Mechanism::Intermediate;
        double lo = spec.intermediate_mult_lo, hi = spec.intermediate_mult_hi;
        if (mech == Mechanism::Viral) lo = spec.viral_mult_lo, hi = spec.viral_mult_hi;
        if (mech == Mechanism::Exogenous) lo = spec.exogenous_mult_lo, hi = spec.exogenous_mult_hi;
        auto target = static_cast<std::size_t>(
            std::llround(static_cast<double>(spec.initial_adopters) * rng.uniform(lo, hi)));
        target = std::min(target, n);

        auto& adopters = adopter_lists[h];
        AdopterPicker picker(n, rng);
        auto adopt = [&](UserId u) {
            picker.adopt(u);
            adopters.push_back(u);
        };

        if (mech == Mechanism::Exogenous) {
            for (auto idx : rng.sample_without_replacement(n, target))
                adopt(static_cast<UserId>(idx));
        } else {
            const bool intermediate = (mech == Mechanism::Intermediate);
            const auto& homes = intermediate ? inter_homes : viral_homes;
            const std::size_t home = homes[rng.below(homes.size())];
            const std::size_t home_first = layout.first[home];
            const std::size_t home_size = layout.sizes[home];
            if (intermediate) target = std::min(target, home_size);
            const double transmit =
                intermediate ? spec.intermediate_cascade_prob : spec.cascade_prob;

            std::deque<UserId> frontier;
            const std::size_t seeds = std::min<std::size_t>(3, target);
            for (std::size_t s = 0; s < seeds; ++s)
                frontier.push_back(picker.random_fresh(home_first, home_size));

            while (picker.count() < target) {
                if (!frontier.empty() && rng.bernoulli(spec.exogenous_rate)) {
                    // occasional out-of-band adopter keeps cascades honest
                    if (intermediate) {
                        if (!picker.range_full(home_first, home_size))
                            adopt(picker.random_fresh(home_first, home_size));
                        continue;
                    }
                    adopt(picker.random_fresh(0, 0));
                    continue;
                }
                if (frontier.empty()) {
                    // cascade died: re-seed inside the home community while
                    // possible, then anywhere (viral spillover)
                    if (intermediate || !picker.range_full(home_first, home_size))
                        frontier.push_back(picker.random_fresh(home_first, home_size));
                    else
                        frontier.push_back(picker.random_fresh(0, 0));
                    continue;
                }
                const UserId w = frontier.front();
                frontier.pop_front();
                if (picker.adopted(w)) continue;
                adopt(w);
                for (UserId c : contacts[w]) {
                    if (picker.adopted(c)) continue;
                    if (intermediate && (c < home_first || c >= home_first + home_size))
                        continue;  // confined to its community
                    if (rng.bernoulli(transmit)) frontier.push_back(c);
                }
            }
        }

        truth.tag_mechanism.push_back(mech);
        truth.tag_final_size.push_back(adopters.size());
    }

    // Emit files. Zero-padded names make external order match internal order.
    const std::size_t uw = digits_of(n);
    const std::size_t tw = digits_of(spec.hashtags);

    SynthOutput out;
    out.truth = std::move(truth);
    out.edges = out_dir / "edges.tsv";
    out.adoptions = out_dir / "adoptions.tsv";
    out.manifest = out_dir / "manifest.tsv";

    {
        std::ofstream f(out.edges);
        if (!f) throw Error("cannot write " + out.edges.string());
        std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
            return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
        });
        for (const Arc& a : arcs)
            f << padded("u", a.src, uw) << "\t" << padded("u", a.dst, uw) << "\n";
    }
    {
        std::ofstream f(out.adoptions);
        if (!f) throw Error("cannot write " + out.adoptions.string());
        for (std::size_t h = 0; h < spec.hashtags; ++h) {
            Timestamp t = 1;
            for (UserId u : adopter_lists[h])
                f << padded("t", h, tw) << "\t" << padded("u", u, uw) << "\t" << t++ << "\n";
        }
    }
    {
        std::ofstream f(out.manifest);
        if (!f) throw Error("cannot write " + out.manifest.string());
        for (std::size_t h = 0; h < spec.hashtags; ++h)
            f << padded("t", h, tw) << "\t" << mechanism_name(out.truth.tag_mechanism[h]) << "\t"
              << out.truth.tag_final_size[h] << "\n";
    }
    return out;
}

}  // namespace tagnet
