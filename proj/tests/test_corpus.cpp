#include "tagnet/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "tagnet/rng.hpp"
#include "test_util.hpp"

using namespace tagnet;
using testutil::TempDir;
using testutil::write_file;

namespace {

// Externalized arc set: (src name, dst name, weight). Independent of the
// internal id assignment, so permuted inputs can be compared directly.
std::set<std::tuple<std::string, std::string, Weight>> external_arcs(
    const DirectedWeightedGraph& g, const IdMap& users) {
    std::set<std::tuple<std::string, std::string, Weight>> out;
    for (const Arc& a : g.arcs()) out.insert({users.name(a.src), users.name(a.dst), a.weight});
    return out;
}

}  // namespace

TEST_CASE("load_edges applies the weight threshold after summing") {
    TempDir tmp("edges");

    SUBCASE("threshold filters") {
        auto path = write_file(tmp.file("e.tsv"), "1\t2\t5\n2\t1\t1\n3\t4\t1\n");
        IdMap users;
        auto r = load_edges(path, 3, users);
        REQUIRE(r.arcs.size() == 1);
        CHECK(users.name(r.arcs[0].src) == "1");
        CHECK(users.name(r.arcs[0].dst) == "2");
        CHECK(r.arcs[0].weight == 5);
        // node set covers every id seen, filtered or not
        CHECK(users.size() == 4);
    }

    SUBCASE("threshold 1 keeps all") {
        auto path = write_file(tmp.file("e.tsv"), "1\t2\t5\n2\t1\t1\n3\t4\t1\n");
        IdMap users;
        auto r = load_edges(path, 1, users);
        CHECK(r.arcs.size() == 3);
    }

    SUBCASE("duplicate arcs sum weights") {
        auto path = write_file(tmp.file("e.tsv"), "1\t2\t2\n1\t2\t2\n");
        IdMap users;
        auto r = load_edges(path, 3, users);
        REQUIRE(r.arcs.size() == 1);
        CHECK(r.arcs[0].weight == 4);
    }

    SUBCASE("missing weight defaults to 1") {
        auto path = write_file(tmp.file("e.tsv"), "a\tb\n");
        IdMap users;
        auto r = load_edges(path, 1, users);
        REQUIRE(r.arcs.size() == 1);
        CHECK(r.arcs[0].weight == 1);
    }

    SUBCASE("comments and blank lines are skipped") {
        auto path = write_file(tmp.file("e.tsv"), "# header\n\na\tb\t2\n");
        IdMap users;
        auto r = load_edges(path, 1, users);
        CHECK(r.arcs.size() == 1);
    }

    SUBCASE("self-loops are skipped with a warning count") {
        auto path = write_file(tmp.file("e.tsv"), "a\ta\t4\nb\tc\t1\na\ta\n");
        IdMap users;
        auto r = load_edges(path, 1, users);
        CHECK(r.arcs.size() == 1);
        CHECK(r.self_loops_skipped == 2);
    }

    SUBCASE("malformed records raise ParseError with the line number") {
        auto path = write_file(tmp.file("e.tsv"), "a\tb\t1\nonly-one-field\n");
        IdMap users;
        CHECK_THROWS_AS(load_edges(path, 1, users), ParseError);
        try {
            IdMap u2;
            load_edges(path, 1, u2);
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }

    SUBCASE("negative weight raises ParseError") {
        auto path = write_file(tmp.file("e.tsv"), "a\tb\t-3\n");
        IdMap users;
        CHECK_THROWS_AS(load_edges(path, 1, users), ParseError);
    }

    SUBCASE("non-integer weight raises ParseError") {
        auto path = write_file(tmp.file("e.tsv"), "a\tb\theavy\n");
        IdMap users;
        CHECK_THROWS_AS(load_edges(path, 1, users), ParseError);
    }

    SUBCASE("threshold must be positive") {
        auto path = write_file(tmp.file("e.tsv"), "a\tb\n");
        IdMap users;
        CHECK_THROWS_AS(load_edges(path, 0, users), ValidationError);
    }
}

TEST_CASE("derive_view classifies arcs") {
    // arcs {(1,2),(2,1),(3,4)}
    IdMap users;
    for (const char* n : {"1", "2", "3", "4"}) users.intern(n);
    DirectedWeightedGraph g(4, {{0, 1, 1}, {1, 0, 1}, {2, 3, 1}});

    SUBCASE("social keeps reciprocated pairs as undirected edges") {
        auto view = derive_view(g, ViewKind::Social, 1);
        CHECK(view.edge_count() == 1);
        auto edges = view.edge_list();
        REQUIRE(edges.size() == 1);
        CHECK(edges[0] == std::pair<UserId, UserId>{0, 1});
    }

    SUBCASE("informational keeps unreciprocated arcs") {
        auto view = derive_view(g, ViewKind::Informational, 1);
        auto edges = view.edge_list();
        REQUIRE(edges.size() == 1);
        CHECK(edges[0] == std::pair<UserId, UserId>{2, 3});
    }

    SUBCASE("empty graph gives empty views") {
        DirectedWeightedGraph empty(4, {});
        for (auto kind : {ViewKind::Full, ViewKind::Social, ViewKind::Informational})
            CHECK(derive_view(empty, kind, 1).edge_count() == 0);
    }

    SUBCASE("view partition: every qualifying arc is social xor informational") {
        auto full = derive_view(g, ViewKind::Full, 1);
        auto social = derive_view(g, ViewKind::Social, 1);
        auto info = derive_view(g, ViewKind::Informational, 1);
        for (const auto& [u, v] : full.edge_list()) {
            const bool in_social = social.has(u, v);
            const bool in_info = info.has(u, v);
            CHECK(in_social != in_info);
        }
        CHECK(full.edge_count() == info.edge_count() + 2 * social.edge_count());
    }
}

TEST_CASE("load_adoptions builds traces and the index") {
    TempDir tmp("adopt");

    SUBCASE("dedupes to earliest usage and sorts by time") {
        auto path = write_file(tmp.file("a.tsv"), "h\t3\t10\nh\t5\t7\nh\t3\t9\n");
        IdMap users, tags;
        auto r = load_adoptions(path, users, tags);
        REQUIRE(r.traces.size() == 1);
        const auto& t = r.traces[0];
        REQUIRE(t.adopters.size() == 2);
        CHECK(users.name(t.adopters[0].user) == "5");
        CHECK(t.adopters[0].time == 7);
        CHECK(users.name(t.adopters[1].user) == "3");
        CHECK(t.adopters[1].time == 9);
    }

    SUBCASE("index is the transpose of the input") {
        auto path = write_file(tmp.file("a.tsv"), "h\t1\t5\ng\t1\t5\n");
        IdMap users, tags;
        auto r = load_adoptions(path, users, tags);
        const UserId u1 = *users.find("1");
        REQUIRE(r.index.user_tags[u1].size() == 2);
        for (TagId h : {*tags.find("h"), *tags.find("g")}) {
            REQUIRE(r.index.tag_users[h].size() == 1);
            CHECK(r.index.tag_users[h][0] == u1);
        }
    }

    SUBCASE("timestamp ties break by ascending external user id") {
        auto path = write_file(tmp.file("a.tsv"), "h\t2\t5\nh\t1\t5\n");
        IdMap users, tags;
        auto r = load_adoptions(path, users, tags);
        const auto& t = r.traces[0];
        REQUIRE(t.adopters.size() == 2);
        CHECK(users.name(t.adopters[0].user) == "1");
        CHECK(users.name(t.adopters[1].user) == "2");
    }

    SUBCASE("malformed record raises ParseError with line number") {
        auto path = write_file(tmp.file("a.tsv"), "h\t1\t5\nh\t1\n");
        IdMap users, tags;
        CHECK_THROWS_AS(load_adoptions(path, users, tags), ParseError);
    }

    SUBCASE("non-numeric timestamp raises ParseError") {
        auto path = write_file(tmp.file("a.tsv"), "h\t1\tnoon\n");
        IdMap users, tags;
        CHECK_THROWS_AS(load_adoptions(path, users, tags), ParseError);
    }
}

TEST_CASE("corpus_stats") {
    SUBCASE("means are incidences over set sizes") {
        auto fx = testutil::make_index({{"h1", {"u1", "u2"}}, {"h2", {"u1"}}});
        auto stats = corpus_stats(fx.index, {});
        CHECK(stats.user_count == 2);
        CHECK(stats.hashtag_count == 2);
        CHECK(stats.mean_users_per_hashtag == doctest::Approx(1.5));
        CHECK(stats.mean_hashtags_per_user == doctest::Approx(1.5));
    }

    SUBCASE("empty corpus reports zeros") {
        AffiliationIndex empty;
        auto stats = corpus_stats(empty, {});
        CHECK(stats.user_count == 0);
        CHECK(stats.hashtag_count == 0);
        CHECK(stats.mean_users_per_hashtag == 0.0);
        CHECK(stats.mean_hashtags_per_user == 0.0);
    }

    SUBCASE("single incidence gives unit means") {
        auto fx = testutil::make_index({{"h", {"u"}}});
        auto stats = corpus_stats(fx.index, {});
        CHECK(stats.mean_users_per_hashtag == doctest::Approx(1.0));
        CHECK(stats.mean_hashtags_per_user == doctest::Approx(1.0));
    }
}

TEST_CASE("corpus load shares one user id space") {
    TempDir tmp("corpus");
    write_file(tmp.file("e.tsv"), "x\ty\t2\nz\tx\t1\n");
    write_file(tmp.file("a.tsv"), "h\tx\t1\nh\tw\t2\ng\tw\t3\n");
    auto corpus = Corpus::load(tmp.file("e.tsv"), tmp.file("a.tsv"), 1);
    // users from both files: w, x (adoptions) plus y, z (edges)
    CHECK(corpus.users.size() == 4);
    CHECK(corpus.graph.node_count() == 4);
    CHECK(corpus.index.user_tags.size() == 4);
    const UserId y = *corpus.users.find("y");
    CHECK(corpus.index.user_tags[y].empty());
}

TEST_CASE("ingestion is order-independent up to external ids") {
    TempDir tmp("perm");
    const std::vector<std::string> edge_lines = {"a\tb\t2", "c\ta\t1", "b\tc\t4", "a\tb\t1"};
    const std::vector<std::string> adoption_lines = {"h\ta\t3", "g\tb\t1", "h\tb\t3",
                                                     "h\tc\t2", "g\ta\t9"};

    auto join = [](std::vector<std::string> lines) {
        std::string out;
        for (const auto& l : lines) out += l + "\n";
        return out;
    };

    write_file(tmp.file("e1.tsv"), join(edge_lines));
    write_file(tmp.file("a1.tsv"), join(adoption_lines));
    auto c1 = Corpus::load(tmp.file("e1.tsv"), tmp.file("a1.tsv"), 2);

    auto edges_perm = edge_lines;
    auto adopt_perm = adoption_lines;
    Rng rng(99);
    rng.shuffle(edges_perm);
    rng.shuffle(adopt_perm);
    write_file(tmp.file("e2.tsv"), join(edges_perm));
    write_file(tmp.file("a2.tsv"), join(adopt_perm));
    auto c2 = Corpus::load(tmp.file("e2.tsv"), tmp.file("a2.tsv"), 2);

    CHECK(external_arcs(c1.graph, c1.users) == external_arcs(c2.graph, c2.users));

    auto external_traces = [](const Corpus& c) {
        std::map<std::string, std::vector<std::pair<std::string, Timestamp>>> out;
        for (const auto& t : c.traces) {
            auto& seq = out[c.tags.name(t.tag)];
            for (const auto& a : t.adopters) seq.emplace_back(c.users.name(a.user), a.time);
        }
        return out;
    };
    CHECK(external_traces(c1) == external_traces(c2));
}

TEST_CASE("transpose property holds on random corpora") {
    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        const std::size_t nusers = 2 + rng.below(30);
        const std::size_t ntags = 1 + rng.below(15);
        std::vector<std::pair<std::string, std::vector<std::string>>> spec;
        for (std::size_t h = 0; h < ntags; ++h) {
            std::vector<std::string> members;
            for (std::size_t u = 0; u < nusers; ++u)
                if (rng.bernoulli(0.3)) members.push_back("u" + std::to_string(u));
            if (!members.empty()) spec.push_back({"t" + std::to_string(h), members});
        }
        if (spec.empty()) continue;
        auto fx = testutil::make_index(spec);
        const auto& idx = fx.index;
        for (UserId u = 0; u < idx.user_count(); ++u) {
            CHECK(std::is_sorted(idx.user_tags[u].begin(), idx.user_tags[u].end()));
            for (TagId h : idx.user_tags[u]) {
                const auto& members = idx.tag_users[h];
                CHECK(std::binary_search(members.begin(), members.end(), u));
            }
        }
        for (TagId h = 0; h < idx.tag_count(); ++h) {
            CHECK(std::is_sorted(idx.tag_users[h].begin(), idx.tag_users[h].end()));
            for (UserId u : idx.tag_users[h]) {
                const auto& tags = idx.user_tags[u];
                CHECK(std::binary_search(tags.begin(), tags.end(), h));
            }
        }
    }
}

TEST_CASE("raising the threshold never adds arcs") {
    TempDir tmp("mono");
    std::string content;
    Rng rng(13);
    for (int i = 0; i < 60; ++i) {
        content += "n" + std::to_string(rng.below(12)) + "\tn" + std::to_string(rng.below(12)) +
                   "\t" + std::to_string(1 + rng.below(6)) + "\n";
    }
    auto path = write_file(tmp.file("e.tsv"), content);

    std::set<std::pair<UserId, UserId>> previous_full, previous_social;
    bool first = true;
    for (Weight t : {1, 2, 3, 5, 8}) {
        IdMap users;
        auto r = load_edges(path, t, users);
        DirectedWeightedGraph g(users.size(), r.arcs);
        auto full = derive_view(g, ViewKind::Full, 1).edge_list();
        auto social = derive_view(g, ViewKind::Social, 1).edge_list();
        std::set<std::pair<UserId, UserId>> full_set(full.begin(), full.end());
        std::set<std::pair<UserId, UserId>> social_set(social.begin(), social.end());
        if (!first) {
            CHECK(std::includes(previous_full.begin(), previous_full.end(), full_set.begin(),
                                full_set.end()));
            CHECK(std::includes(previous_social.begin(), previous_social.end(),
                                social_set.begin(), social_set.end()));
        }
        previous_full = std::move(full_set);
        previous_social = std::move(social_set);
        first = false;
    }
}
