#ifndef TTOV_SIMSEARCH_HPP
#define TTOV_SIMSEARCH_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ttov/corpus.hpp"
#include "ttov/error.hpp"
#include "ttov/textproc.hpp"

namespace ttov {

// Scores are percentages in [0, 100].
using score_t = double;

namespace detail {

// Dot product over the sorted-entry intersection, accumulated in ascending
// term-id order. Every similarity path in this header accumulates in the
// same order, so indexed and naive search agree bit for bit.
inline double sparse_dot(const sparse_ngram_vector& a, const sparse_ngram_vector& b) {
    double dot = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() && ib != b.entries.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += static_cast<double>(ia->second) * static_cast<double>(ib->second);
            ++ia;
            ++ib;
        }
    }
    return dot;
}

inline score_t cosine_from_parts(double dot, double norm2_a, double norm2_b) {
    if (norm2_a == 0.0 || norm2_b == 0.0) return 0.0;
    const double s = 100.0 * dot / std::sqrt(norm2_a * norm2_b);
    return std::clamp(s, 0.0, 100.0);
}

}  // namespace detail

// Cosine similarity as a percentage. Identical count multisets score exactly
// 100 because the denominator is computed as sqrt(norm2_a * norm2_b) from
// the exact integer sums of squares. A zero vector on either side scores 0.
inline score_t cosine(const sparse_ngram_vector& a, const sparse_ngram_vector& b) {
    if (a.order != b.order) {
        throw usage_error("cosine: n-gram order mismatch (" + std::to_string(a.order) + " vs " +
                          std::to_string(b.order) + ")");
    }
    return detail::cosine_from_parts(detail::sparse_dot(a, b), a.norm2, b.norm2);
}

// Best train-side match for one test vector: the exact maximum score and,
// when some train instance shares at least one term, the argmax ordinal
// (ties broken toward the lowest ordinal).
struct match_result {
    score_t score = 0.0;
    std::optional<std::size_t> train_ordinal;
};

// Inverted index over the train-side vectors of one n-gram order. Immutable
// after construction; queries are pure reads and safe to run in parallel.
class train_index {
public:
    train_index(int order, std::vector<sparse_ngram_vector> train_vectors,
                std::vector<std::string> train_ids)
        : order_(order), norms2_(), ids_(std::move(train_ids)) {
        if (train_vectors.empty()) throw data_error("empty train corpus: nothing to index");
        norms2_.reserve(train_vectors.size());
        std::uint32_t max_term = 0;
        for (const auto& vec : train_vectors) {
            if (!vec.entries.empty()) max_term = std::max(max_term, vec.entries.back().first);
        }
        postings_.resize(static_cast<std::size_t>(max_term) + 1);
        for (std::size_t ordinal = 0; ordinal < train_vectors.size(); ++ordinal) {
            const auto& vec = train_vectors[ordinal];
            if (vec.order != order_) throw usage_error("train_index: vector order mismatch");
            norms2_.push_back(vec.norm2);
            for (const auto& [term, count] : vec.entries) {
                postings_[term].emplace_back(static_cast<std::uint32_t>(ordinal), count);
            }
        }
    }

    int order() const { return order_; }
    std::size_t size() const { return norms2_.size(); }
    const std::string& id_of(std::size_t ordinal) const { return ids_[ordinal]; }

    match_result best_match(const sparse_ngram_vector& query) const {
        std::vector<double> acc;
        std::vector<std::uint32_t> touched;
        return best_match(query, acc, touched);
    }

    // Scratch-buffer variant for tight query loops. `acc` is resized once to
    // the index size and reset via the touched list between calls.
    match_result best_match(const sparse_ngram_vector& query, std::vector<double>& acc,
                            std::vector<std::uint32_t>& touched) const {
        if (query.order != order_) throw usage_error("best_match: query order mismatch");
        acc.resize(norms2_.size(), 0.0);
        touched.clear();
        for (const auto& [term, count] : query.entries) {
            if (term >= postings_.size()) continue;
            const double q = static_cast<double>(count);
            for (const auto& [ordinal, train_count] : postings_[term]) {
                if (acc[ordinal] == 0.0) touched.push_back(ordinal);
                acc[ordinal] += q * static_cast<double>(train_count);
            }
        }
        // `touched` is scanned in ascending ordinal order with strict
        // improvement, so score ties keep the lowest train ordinal.
        std::sort(touched.begin(), touched.end());
        match_result best;
        for (const std::uint32_t ordinal : touched) {
            const score_t s = detail::cosine_from_parts(acc[ordinal], query.norm2, norms2_[ordinal]);
            acc[ordinal] = 0.0;
            if (s > best.score) {
                best.score = s;
                best.train_ordinal = ordinal;
            }
        }
        return best;
    }

private:
    int order_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> postings_;
    std::vector<double> norms2_;
    std::vector<std::string> ids_;
};

// Convenience wrapper returning the train instance id instead of an ordinal.
inline std::pair<score_t, std::optional<std::string>> best_match(
    const sparse_ngram_vector& query, const train_index& index) {
    const match_result m = index.best_match(query);
    if (!m.train_ordinal) return {m.score, std::nullopt};
    return {m.score, index.id_of(*m.train_ordinal)};
}

// Per-test-instance best match for each n-gram order.
struct similarity_record {
    struct best {
        score_t score = 0.0;
        std::optional<std::string> train_id;
    };

    std::string test_instance_id;
    std::map<int, best> by_order;

    score_t score_for(int order) const {
        auto it = by_order.find(order);
        if (it == by_order.end()) {
            throw usage_error("no similarity score for order " + std::to_string(order));
        }
        return it->second.score;
    }
};

// Per-order average best score across the test set.
struct overlap_summary {
    std::string dataset;
    std::map<int, score_t> average_by_order;
};

enum class search_engine { indexed, naive };

struct compare_result {
    overlap_summary summary;
    std::vector<similarity_record> records;
};

namespace detail {

template <typename Fn>
inline void parallel_for(std::size_t n, int threads, Fn&& fn) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

// The overlap computation: for every test instance find the most similar
// train instance per n-gram order, then average the best scores. The
// indexed and naive engines produce identical results; naive exists as a
// cross-check and for tiny inputs.
inline compare_result compare(const corpus& testset, const corpus& trainset,
                              const std::vector<int>& orders, const text_config& cfg = {},
                              search_engine engine = search_engine::indexed, int threads = 0,
                              std::string dataset_name = "") {
    if (trainset.instances.empty()) throw data_error("empty train corpus");
    if (testset.instances.empty()) throw data_error("empty test corpus");
    if (orders.empty()) throw usage_error("no n-gram orders requested");

    compare_result result;
    result.summary.dataset =
        dataset_name.empty() ? testset.name : std::move(dataset_name);
    result.records.resize(testset.instances.size());
    for (std::size_t i = 0; i < testset.instances.size(); ++i) {
        result.records[i].test_instance_id = testset.instances[i].instance_id;
    }

    for (const int order : orders) {
        // Joint vocabulary over train and test: cosine is computed in one
        // shared term space.
        vocabulary vocab;
        std::vector<sparse_ngram_vector> train_vecs;
        train_vecs.reserve(trainset.instances.size());
        for (const instance& ins : trainset.instances) {
            train_vecs.push_back(vectorize(ins.text, order, vocab, cfg));
        }
        std::vector<sparse_ngram_vector> test_vecs;
        test_vecs.reserve(testset.instances.size());
        for (const instance& ins : testset.instances) {
            test_vecs.push_back(vectorize(ins.text, order, vocab, cfg));
        }
        vocab.freeze();

        std::vector<match_result> matches(test_vecs.size());
        if (engine == search_engine::indexed) {
            std::vector<std::string> ids;
            ids.reserve(trainset.instances.size());
            for (const instance& ins : trainset.instances) ids.push_back(ins.instance_id);
            const train_index index(order, train_vecs, std::move(ids));
            detail::parallel_for(test_vecs.size(), threads, [&](std::size_t i) {
                thread_local std::vector<double> acc;
                thread_local std::vector<std::uint32_t> touched;
                matches[i] = index.best_match(test_vecs[i], acc, touched);
            });
        } else {
            detail::parallel_for(test_vecs.size(), threads, [&](std::size_t i) {
                match_result best;
                for (std::size_t j = 0; j < train_vecs.size(); ++j) {
                    const score_t s = cosine(test_vecs[i], train_vecs[j]);
                    if (s > best.score) {
                        best.score = s;
                        best.train_ordinal = j;
                    }
                }
                if (best.score == 0.0) best.train_ordinal.reset();
                matches[i] = best;
            });
        }

        // Accumulate in test-instance order so the average is reproducible
        // regardless of thread count.
        double total = 0.0;
        for (std::size_t i = 0; i < matches.size(); ++i) {
            similarity_record::best b;
            b.score = matches[i].score;
            if (matches[i].train_ordinal) {
                b.train_id = trainset.instances[*matches[i].train_ordinal].instance_id;
            }
            total += b.score;
            result.records[i].by_order[order] = std::move(b);
        }
        result.summary.average_by_order[order] =
            total / static_cast<double>(matches.size());
    }
    return result;
}

// Exact-match annotation overlap: how many test entity occurrences have a
// train entity with the same surface string (lowercased when the config says
// so). Duplicates are counted per occurrence. Flags follow test corpus
// order: instances in order, entities in order.
struct annotation_overlap {
    std::size_t matched = 0;
    std::size_t total = 0;
    std::vector<bool> flags;
};

inline annotation_overlap exact_annotation_overlap(const corpus& test, const corpus& train,
                                                   const text_config& cfg = {}) {
    const auto normalize = [&](const std::string& s) {
        return cfg.lowercase ? ascii_lowercase(s) : s;
    };
    std::unordered_set<std::string> train_surfaces;
    for (const instance& ins : train.instances) {
        for (const entity_span& span : ins.entities) {
            train_surfaces.insert(normalize(span.surface));
        }
    }
    annotation_overlap result;
    for (const instance& ins : test.instances) {
        for (const entity_span& span : ins.entities) {
            const bool hit = train_surfaces.count(normalize(span.surface)) != 0;
            result.flags.push_back(hit);
            result.matched += hit ? 1 : 0;
            ++result.total;
        }
    }
    return result;
}

// --- similarity-record TSV: the join key between overlap, stratify and
// --- evaluate. Columns: test_id, order, best_score, best_train_id (empty
// --- when no positive match exists).

namespace detail {

// Scores round-trip through text exactly: 17 significant digits are enough
// to reproduce any double.
inline std::string format_score(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline void write_records_tsv(std::ostream& out, const std::vector<similarity_record>& records) {
    out << "#test_id\torder\tbest_score\tbest_train_id\n";
    for (const similarity_record& rec : records) {
        for (const auto& [order, best] : rec.by_order) {
            out << rec.test_instance_id << '\t' << order << '\t'
                << detail::format_score(best.score) << '\t'
                << (best.train_id ? *best.train_id : "") << '\n';
        }
    }
}

inline std::vector<similarity_record> read_records_tsv(std::istream& in,
                                                       const std::string& source = "<records>") {
    std::vector<similarity_record> records;
    std::unordered_map<std::string, std::size_t> index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        detail::strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_tabs(line);
        if (fields.size() != 4) {
            throw parse_error(source, lineno, "expected 4 columns: test_id, order, score, train_id");
        }
        int order = 0;
        double score = 0.0;
        try {
            order = std::stoi(fields[1]);
            score = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw parse_error(source, lineno, "non-numeric order or score");
        }
        if (score < 0.0 || score > 100.0) {
            throw parse_error(source, lineno, "score outside [0,100]: " + fields[2]);
        }
        auto [it, fresh] = index.emplace(fields[0], records.size());
        if (fresh) {
            records.emplace_back();
            records.back().test_instance_id = fields[0];
        }
        similarity_record::best b;
        b.score = score;
        if (!fields[3].empty()) b.train_id = std::move(fields[3]);
        if (!records[it->second].by_order.emplace(order, std::move(b)).second) {
            throw parse_error(source, lineno,
                              "duplicate row for instance '" + fields[0] + "' at order " +
                                  fields[1]);
        }
    }
    return records;
}

inline std::vector<similarity_record> read_records_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open records file: " + path.string());
    return read_records_tsv(in, path.string());
}

}  // namespace ttov

#endif  // TTOV_SIMSEARCH_HPP
