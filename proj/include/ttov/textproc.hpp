#ifndef TTOV_TEXTPROC_HPP
#define TTOV_TEXTPROC_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ttov/error.hpp"
#include "ttov/stopwords.hpp"

namespace ttov {

// Text-processing knobs shared by the whole pipeline. Two runs with equal
// configs produce bit-identical vectors and scores.
struct text_config {
    bool lowercase = true;
    // BRAT offsets are interpreted as byte offsets by default; set to true to
    // interpret them as Unicode code-point offsets instead.
    bool char_offsets = false;
    std::vector<int> orders = {1, 2, 3};
    std::unordered_set<std::string> stopwords = default_stopwords();
};

namespace detail {

// Word bytes are ASCII alphanumerics plus every non-ASCII byte. Full Unicode
// classification is out of scope; non-ASCII code points count as word
// characters, which is adequate for the ASCII-dominant corpora this targets.
inline bool is_word_byte(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace detail

inline std::string ascii_lowercase(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(detail::ascii_lower(c));
    return out;
}

// Splits text into maximal runs of word characters. An apostrophe is kept
// inside a run when it has a word character on both sides ("don't" stays one
// token, a quote before "'ere" does not). Lowercasing is ASCII-only.
inline std::vector<std::string> tokenize(std::string_view text, bool lowercase = true) {
    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (detail::is_word_byte(static_cast<unsigned char>(c))) {
            current.push_back(lowercase ? detail::ascii_lower(c) : c);
        } else if (c == '\'' && !current.empty() && i + 1 < text.size() &&
                   detail::is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

// Order-preserving stopword filter. The stoplist is expected to hold
// lowercase tokens.
inline std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                                 const std::unordered_set<std::string>& stoplist) {
    std::erase_if(tokens, [&](const std::string& t) { return stoplist.count(t) != 0; });
    return tokens;
}

// Contiguous windows of `order` tokens joined by single spaces. Fewer tokens
// than the order yields an empty list.
inline std::vector<std::string> ngrams(const std::vector<std::string>& tokens, int order) {
    if (order < 1) throw usage_error("n-gram order must be >= 1, got " + std::to_string(order));
    std::vector<std::string> grams;
    const std::size_t n = static_cast<std::size_t>(order);
    if (tokens.size() < n) return grams;
    grams.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (std::size_t j = 1; j < n; ++j) {
            gram.push_back(' ');
            gram += tokens[i + j];
        }
        grams.push_back(std::move(gram));
    }
    return grams;
}

// Injective n-gram -> dense id mapping. Ids are assigned in interning order
// and are dense in [0, size). Once frozen, unseen terms are dropped instead
// of extending the mapping.
class vocabulary {
public:
    std::optional<std::uint32_t> intern(const std::string& term) {
        auto it = ids_.find(term);
        if (it != ids_.end()) return it->second;
        if (frozen_) return std::nullopt;
        const auto id = static_cast<std::uint32_t>(ids_.size());
        ids_.emplace(term, id);
        return id;
    }

    std::optional<std::uint32_t> lookup(const std::string& term) const {
        auto it = ids_.find(term);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }
    std::size_t size() const { return ids_.size(); }

private:
    std::unordered_map<std::string, std::uint32_t> ids_;
    bool frozen_ = false;
};

// Sparse n-gram count vector. Entries are strictly sorted by term id with
// positive counts; norm2 is the exact sum of squared counts. norm2 rather
// than the norm is what similarity math uses: sqrt(norm2_a * norm2_b) makes
// identical count multisets score exactly 100.
struct sparse_ngram_vector {
    int order = 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
    double norm2 = 0.0;

    double norm() const { return std::sqrt(norm2); }
    bool zero() const { return entries.empty(); }
    std::size_t total_count() const {
        std::size_t sum = 0;
        for (const auto& [id, count] : entries) sum += count;
        return sum;
    }
};

// Tokenize, drop stopwords, form n-grams, count. An empty n-gram list gives
// the zero vector. Unseen terms extend the vocabulary unless it is frozen.
inline sparse_ngram_vector vectorize(std::string_view text, int order, vocabulary& vocab,
                                     const text_config& cfg) {
    const auto tokens = remove_stopwords(tokenize(text, cfg.lowercase), cfg.stopwords);
    std::unordered_map<std::uint32_t, std::uint32_t> counts;
    for (const auto& gram : ngrams(tokens, order)) {
        if (auto id = vocab.intern(gram)) ++counts[*id];
    }
    sparse_ngram_vector vec;
    vec.order = order;
    vec.entries.assign(counts.begin(), counts.end());
    std::sort(vec.entries.begin(), vec.entries.end());
    for (const auto& [id, count] : vec.entries) {
        vec.norm2 += static_cast<double>(count) * static_cast<double>(count);
    }
    return vec;
}

}  // namespace ttov

#endif  // TTOV_TEXTPROC_HPP
