#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "ttov/stopwords.hpp"
#include "ttov/textproc.hpp"
#include "test_util.hpp"

using namespace ttov;

TEST_CASE("tokenize splits on non-word characters and lowercases") {
    CHECK(tokenize("good movie .") == std::vector<std::string>{"good", "movie"});
    CHECK(tokenize("E2F family members (1-5)") ==
          std::vector<std::string>{"e2f", "family", "members", "1", "5"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("   \t\n ").empty());
}

TEST_CASE("tokenize keeps apostrophes inside a run only") {
    CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
    CHECK(tokenize("it 's here") == std::vector<std::string>{"it", "s", "here"});
    CHECK(tokenize("dogs' bone") == std::vector<std::string>{"dogs", "bone"});
    CHECK(tokenize("'quoted'") == std::vector<std::string>{"quoted"});
}

TEST_CASE("tokenize can preserve case") {
    CHECK(tokenize("E2F Family", /*lowercase=*/false) ==
          std::vector<std::string>{"E2F", "Family"});
}

TEST_CASE("tokenize treats non-ASCII bytes as word characters") {
    CHECK(tokenize("caf\xc3\xa9 au lait") ==
          std::vector<std::string>{"caf\xc3\xa9", "au", "lait"});
}

TEST_CASE("remove_stopwords filters the default list in order") {
    const auto& stop = default_stopwords();
    CHECK(remove_stopwords({"it", "s", "still", "not", "a", "good", "movie"}, stop) ==
          std::vector<std::string>{"good", "movie"});
    CHECK(remove_stopwords({}, stop).empty());
    CHECK(remove_stopwords({"gene", "expression"}, stop) ==
          std::vector<std::string>{"gene", "expression"});
}

TEST_CASE("default stopword list is pinned") {
    const auto& stop = default_stopwords();
    CHECK(stop.size() == 404);
    CHECK(stopword_list_version == "en-1");
    for (const char* w : {"the", "of", "a", "it", "not", "still", "s", "1", "n't"}) {
        CHECK(stop.count(w) == 1);
    }
    for (const char* w : {"good", "movie", "gene", "20th", "century"}) {
        CHECK(stop.count(w) == 0);
    }
}

TEST_CASE("ngrams forms contiguous windows") {
    CHECK(ngrams({"good", "movie"}, 2) == std::vector<std::string>{"good movie"});
    CHECK(ngrams({"good", "movie"}, 3).empty());
    CHECK(ngrams({"a", "b", "c"}, 2) == std::vector<std::string>{"a b", "b c"});
    CHECK(ngrams({"a", "b", "c"}, 1) == std::vector<std::string>{"a", "b", "c"});
    CHECK_THROWS_AS(ngrams({"a"}, 0), usage_error);
}

TEST_CASE("vectorize counts n-grams and caches the norm") {
    text_config cfg;
    vocabulary vocab;

    SECTION("unigram counts") {
        const auto vec = vectorize("good movie .", 1, vocab, cfg);
        REQUIRE(vec.entries.size() == 2);
        CHECK(vec.total_count() == 2);
        CHECK(vec.norm() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SECTION("all stopwords give the zero vector") {
        const auto vec = vectorize("the of and", 1, vocab, cfg);
        CHECK(vec.zero());
        CHECK(vec.norm() == 0.0);
    }
    SECTION("repeated tokens accumulate") {
        const auto vec = vectorize("aa aa bb", 1, vocab, cfg);
        REQUIRE(vec.entries.size() == 2);
        std::vector<std::uint32_t> counts;
        for (const auto& [id, count] : vec.entries) counts.push_back(count);
        std::sort(counts.begin(), counts.end());
        CHECK(counts == std::vector<std::uint32_t>{1, 2});
        CHECK(vec.norm() == Catch::Approx(std::sqrt(5.0)).epsilon(1e-12));
    }
}

TEST_CASE("vectorize is deterministic and conserves counts") {
    text_config cfg;
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        const std::string text = ttest::random_sentence(rng, 20, 0, 30);
        for (const int order : {1, 2, 3}) {
            vocabulary va;
            vocabulary vb;
            const auto a = vectorize(text, order, va, cfg);
            const auto b = vectorize(text, order, vb, cfg);
            CHECK(a.entries == b.entries);
            CHECK(a.norm2 == b.norm2);

            const auto grams =
                ngrams(remove_stopwords(tokenize(text, cfg.lowercase), cfg.stopwords), order);
            CHECK(a.total_count() == grams.size());

            double norm2 = 0.0;
            for (const auto& [id, count] : a.entries) {
                CHECK(count > 0);
                norm2 += static_cast<double>(count) * count;
            }
            if (norm2 > 0.0) {
                CHECK(std::abs(a.norm() * a.norm() - norm2) / norm2 < 1e-9);
            }
            for (std::size_t i = 1; i < a.entries.size(); ++i) {
                CHECK(a.entries[i - 1].first < a.entries[i].first);
            }
        }
    }
}

TEST_CASE("unigram vectors ignore token order") {
    text_config cfg;
    std::mt19937 rng(11);
    for (int round = 0; round < 30; ++round) {
        auto tokens = remove_stopwords(
            tokenize(ttest::random_sentence(rng, 10, 1, 15), cfg.lowercase), cfg.stopwords);
        auto shuffled = tokens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::string a;
        std::string b;
        for (const auto& t : tokens) a += t + " ";
        for (const auto& t : shuffled) b += t + " ";
        vocabulary vocab;
        const auto va = vectorize(a, 1, vocab, cfg);
        const auto vb = vectorize(b, 1, vocab, cfg);
        CHECK(va.entries == vb.entries);
    }
}

TEST_CASE("vocabulary assigns dense ids and respects freezing") {
    vocabulary vocab;
    const auto a = vocab.intern("alpha");
    const auto b = vocab.intern("beta");
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == 0);
    CHECK(*b == 1);
    CHECK(vocab.intern("alpha") == a);
    CHECK(vocab.size() == 2);

    vocab.freeze();
    CHECK_FALSE(vocab.intern("gamma").has_value());
    CHECK(vocab.size() == 2);
    CHECK(vocab.lookup("beta") == b);
    CHECK_FALSE(vocab.lookup("gamma").has_value());

    text_config cfg;
    const auto vec = vectorize("alpha gamma beta", 1, vocab, cfg);
    CHECK(vec.entries.size() == 2);  // gamma dropped after freeze
}
