#ifndef TTOV_SPLITKIT_HPP
#define TTOV_SPLITKIT_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ttov/corpus.hpp"
#include "ttov/error.hpp"

namespace ttov {

enum class split_mode { random, document_unique };

// A k-fold assignment. Entries follow corpus order; every instance belongs
// to exactly one fold, and in document_unique mode all instances sharing a
// document id share a fold.
struct split_plan {
    int k = 0;
    split_mode mode = split_mode::random;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, int>> entries;  // (instance_id, fold)

    int fold_of(const std::string& id) const {
        for (const auto& [entry_id, fold] : entries) {
            if (entry_id == id) return fold;
        }
        throw usage_error("instance '" + id + "' is not in the split plan");
    }
};

namespace detail {

// Hand-rolled Fisher-Yates so plans are identical across standard library
// implementations (std::shuffle is not portable across stdlibs).
template <typename T>
inline void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace detail

// Seeded shuffle followed by round-robin assignment: fold sizes differ by
// at most one, and the same seed always yields the same plan.
inline split_plan random_kfold(const corpus& source, int k, std::uint64_t seed) {
    const std::size_t n = source.instances.size();
    if (k < 2) throw usage_error("fold count must be >= 2");
    if (static_cast<std::size_t>(k) > n) {
        throw usage_error("fold count " + std::to_string(k) + " exceeds corpus size " +
                          std::to_string(n));
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    detail::seeded_shuffle(order, rng);

    std::vector<int> fold(n);
    for (std::size_t i = 0; i < n; ++i) fold[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k));

    split_plan plan;
    plan.k = k;
    plan.mode = split_mode::random;
    plan.seed = seed;
    plan.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        plan.entries.emplace_back(source.instances[i].instance_id, fold[i]);
    }
    return plan;
}

// Document-unique folds: instances are grouped by document id, groups are
// sorted by size descending (ties by id), and each group goes to the
// currently smallest fold (ties to the lowest fold index). The seed only
// matters with shuffle_groups, which randomizes the order of equal-sized
// groups before the greedy pass.
inline split_plan grouped_kfold(const corpus& source, int k, std::uint64_t seed = 0,
                                bool shuffle_groups = false) {
    if (k < 2) throw usage_error("fold count must be >= 2");
    std::map<std::string, std::vector<std::size_t>> by_document;
    for (std::size_t i = 0; i < source.instances.size(); ++i) {
        by_document[source.instances[i].document_id].push_back(i);
    }
    if (by_document.size() < static_cast<std::size_t>(k)) {
        throw usage_error("fold count " + std::to_string(k) + " exceeds the " +
                          std::to_string(by_document.size()) + " distinct document ids");
    }

    struct group {
        std::string document_id;
        std::vector<std::size_t> members;
    };
    std::vector<group> groups;
    groups.reserve(by_document.size());
    for (auto& [doc, members] : by_document) groups.push_back({doc, std::move(members)});

    if (shuffle_groups) {
        std::mt19937_64 rng(seed);
        detail::seeded_shuffle(groups, rng);
        std::stable_sort(groups.begin(), groups.end(), [](const group& a, const group& b) {
            return a.members.size() > b.members.size();
        });
    } else {
        std::sort(groups.begin(), groups.end(), [](const group& a, const group& b) {
            if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
            return a.document_id < b.document_id;
        });
    }

    std::vector<std::size_t> fold_sizes(static_cast<std::size_t>(k), 0);
    std::vector<int> fold(source.instances.size(), 0);
    for (const group& g : groups) {
        const std::size_t target = static_cast<std::size_t>(
            std::min_element(fold_sizes.begin(), fold_sizes.end()) - fold_sizes.begin());
        for (const std::size_t idx : g.members) fold[idx] = static_cast<int>(target);
        fold_sizes[target] += g.members.size();
    }

    split_plan plan;
    plan.k = k;
    plan.mode = split_mode::document_unique;
    plan.seed = seed;
    plan.entries.reserve(source.instances.size());
    for (std::size_t i = 0; i < source.instances.size(); ++i) {
        plan.entries.emplace_back(source.instances[i].instance_id, fold[i]);
    }
    return plan;
}

// Materializes one fold: test = the fold's members, train = everything
// else, both in corpus order. Together they partition the corpus.
inline std::pair<corpus, corpus> emit_folds(const corpus& source, const split_plan& plan,
                                            int fold_index) {
    if (fold_index < 0 || fold_index >= plan.k) {
        throw usage_error("fold index " + std::to_string(fold_index) + " out of range [0," +
                          std::to_string(plan.k) + ")");
    }
    if (plan.entries.size() != source.instances.size()) {
        throw usage_error("split plan does not match the corpus size");
    }
    corpus train;
    train.name = source.name + ".fold" + std::to_string(fold_index) + ".train";
    train.role = corpus_role::train;
    corpus test;
    test.name = source.name + ".fold" + std::to_string(fold_index) + ".test";
    test.role = corpus_role::test;
    for (std::size_t i = 0; i < source.instances.size(); ++i) {
        const auto& [id, fold] = plan.entries[i];
        if (id != source.instances[i].instance_id) {
            throw usage_error("split plan entry '" + id + "' does not match corpus order");
        }
        (fold == fold_index ? test : train).instances.push_back(source.instances[i]);
    }
    train.validate();
    test.validate();
    return {std::move(train), std::move(test)};
}

// --- split plan TSV: instance_id, fold ---

inline void write_split_tsv(std::ostream& out, const split_plan& plan) {
    out << "#instance_id\tfold\n";
    for (const auto& [id, fold] : plan.entries) out << id << '\t' << fold << '\n';
}

inline split_plan read_split_tsv(std::istream& in, int k, const std::string& source = "<plan>") {
    split_plan plan;
    plan.k = k;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        detail::strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_tabs(line);
        if (fields.size() != 2) {
            throw parse_error(source, lineno, "expected 2 columns: instance_id, fold");
        }
        int fold = 0;
        try {
            fold = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw parse_error(source, lineno, "non-numeric fold index");
        }
        if (fold < 0 || fold >= k) {
            throw parse_error(source, lineno, "fold index outside [0," + std::to_string(k) + ")");
        }
        plan.entries.emplace_back(std::move(fields[0]), fold);
    }
    return plan;
}

}  // namespace ttov

#endif  // TTOV_SPLITKIT_HPP
