#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tagnet/corpus.hpp"

namespace tagnet {

enum class Mechanism { Viral, Exogenous, Intermediate };

const char* mechanism_name(Mechanism m);

// Seeded synthetic corpus with community structure and planted adoption
// mechanisms. Viral tags cascade along arcs inside (and leaking out of) a
// seed community, exogenous tags pick adopters uniformly at random, and
// intermediate tags stay inside one small community under a weak cascade.
// Viral and exogenous tags grow well past the early phase; intermediate
// tags stall below doubling.
struct SynthSpec {
    std::size_t users = 5000;
    std::size_t hashtags = 600;
    std::size_t communities = 10;
    std::vector<std::size_t> community_sizes;  // empty: near-equal split

    double intra_pair_prob = 0.03;       // relationship prob inside a community
    double inter_pair_prob = 0.001;      // relationship prob across communities
    double reciprocation_prob = 0.55;    // both arcs, else one random direction

    double mix_viral = 0.35;
    double mix_exogenous = 0.25;
    double mix_intermediate = 0.40;

    double cascade_prob = 0.40;                // viral transmission per contact
    double intermediate_cascade_prob = 0.08;
    double exogenous_rate = 0.03;              // chance a cascade step adopts at random

    std::size_t initial_adopters = 100;        // early-phase size the tasks probe
    double viral_mult_lo = 2.2, viral_mult_hi = 3.5;
    double exogenous_mult_lo = 2.2, exogenous_mult_hi = 3.5;
    double intermediate_mult_lo = 1.05, intermediate_mult_hi = 1.7;

    std::uint64_t seed = 7;

    void validate() const;

    // Acceptance presets. The link preset uses equal communities dense
    // enough to make hashtag overlap mirror connectivity; the growth preset
    // uses small/large communities so the three mechanisms separate in the
    // induced-subgraph features.
    static SynthSpec link_default();
    static SynthSpec growth_default();
};

struct GroundTruth {
    std::vector<Mechanism> tag_mechanism;
    std::vector<std::size_t> tag_final_size;
    std::vector<std::size_t> user_community;
    std::vector<std::size_t> community_sizes;
};

struct SynthOutput {
    std::filesystem::path edges;
    std::filesystem::path adoptions;
    std::filesystem::path manifest;
    GroundTruth truth;
};

// Writes edges.tsv, adoptions.tsv and manifest.tsv (tag \t mechanism \t
// final_size) into out_dir. Bit-identical output for identical (spec, seed).
SynthOutput generate(const SynthSpec& spec, const std::filesystem::path& out_dir);

}  // namespace tagnet
