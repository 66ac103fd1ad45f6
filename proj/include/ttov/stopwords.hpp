#ifndef TTOV_STOPWORDS_HPP
#define TTOV_STOPWORDS_HPP

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>

namespace ttov {

// Pinned English stopword list, version "en-1". The full list is documented
// verbatim in docs/stopwords.md; changing it changes every similarity score,
// so treat any edit as a breaking change and bump the version.
//
// Contents: the classic Glasgow IR stoplist (318 words), all single ASCII
// letters and digits, the Penn-Treebank contraction fragments "ll" / "ve" /
// "n't", and common apostrophe contractions.
inline constexpr std::string_view stopword_list_version = "en-1";

namespace detail {

inline constexpr std::array<std::string_view, 404> stopword_list = {
    "0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "a", "about", "above",
    "across", "after", "afterwards", "again", "against", "ain't", "all",
    "almost", "alone", "along", "already", "also", "although", "always", "am",
    "among", "amongst", "amoungst", "amount", "an", "and", "another", "any",
    "anyhow", "anyone", "anything", "anyway", "anywhere", "are", "aren't",
    "around", "as", "at", "b", "back", "be", "became", "because", "become",
    "becomes", "becoming", "been", "before", "beforehand", "behind", "being",
    "below", "beside", "besides", "between", "beyond", "bill", "both",
    "bottom", "but", "by", "c", "call", "can", "can't", "cannot", "cant", "co",
    "con", "could", "couldn't", "couldnt", "cry", "d", "de", "describe",
    "detail", "didn't", "do", "doesn't", "don't", "done", "down", "due",
    "during", "e", "each", "eg", "eight", "either", "eleven", "else",
    "elsewhere", "empty", "enough", "etc", "even", "ever", "every", "everyone",
    "everything", "everywhere", "except", "f", "few", "fifteen", "fifty",
    "fill", "find", "fire", "first", "five", "for", "former", "formerly",
    "forty", "found", "four", "from", "front", "full", "further", "g", "get",
    "give", "go", "h", "had", "hadn't", "has", "hasn't", "hasnt", "have",
    "haven't", "he", "he'd", "he'll", "he's", "hence", "her", "here",
    "hereafter", "hereby", "herein", "hereupon", "hers", "herself", "him",
    "himself", "his", "how", "however", "hundred", "i", "i'd", "i'll", "i'm",
    "i've", "ie", "if", "in", "inc", "indeed", "interest", "into", "is",
    "isn't", "it", "it's", "its", "itself", "j", "k", "keep", "l", "last",
    "latter", "latterly", "least", "less", "let's", "ll", "ltd", "m", "made",
    "many", "may", "me", "meanwhile", "might", "mill", "mine", "more",
    "moreover", "most", "mostly", "move", "much", "must", "mustn't", "my",
    "myself", "n", "n't", "name", "namely", "neither", "never", "nevertheless",
    "next", "nine", "no", "nobody", "none", "noone", "nor", "not", "nothing",
    "now", "nowhere", "o", "of", "off", "often", "on", "once", "one", "only",
    "onto", "or", "other", "others", "otherwise", "our", "ours", "ourselves",
    "out", "over", "own", "p", "part", "per", "perhaps", "please", "put", "q",
    "r", "rather", "re", "s", "same", "see", "seem", "seemed", "seeming",
    "seems", "serious", "several", "shan't", "she", "she'd", "she'll", "she's",
    "should", "shouldn't", "show", "side", "since", "sincere", "six", "sixty",
    "so", "some", "somehow", "someone", "something", "sometime", "sometimes",
    "somewhere", "still", "such", "system", "t", "take", "ten", "than", "that",
    "that's", "the", "their", "them", "themselves", "then", "thence", "there",
    "there's", "thereafter", "thereby", "therefore", "therein", "thereupon",
    "these", "they", "they'd", "they'll", "they're", "they've", "thick",
    "thin", "third", "this", "those", "though", "three", "through",
    "throughout", "thru", "thus", "to", "together", "too", "top", "toward",
    "towards", "twelve", "twenty", "two", "u", "un", "under", "until", "up",
    "upon", "us", "v", "ve", "very", "via", "w", "was", "wasn't", "we", "we'd",
    "we'll", "we're", "we've", "well", "were", "weren't", "what", "what's",
    "whatever", "when", "whence", "whenever", "where", "where's", "whereafter",
    "whereas", "whereby", "wherein", "whereupon", "wherever", "whether",
    "which", "while", "whither", "who", "who'd", "who'll", "who's", "whoever",
    "whole", "whom", "whose", "why", "will", "with", "within", "without",
    "won't", "would", "wouldn't", "x", "y", "yet", "you", "you'd", "you'll",
    "you're", "you've", "your", "yours", "yourself", "yourselves", "z"
};

}  // namespace detail

inline const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> set = [] {
        std::unordered_set<std::string> s;
        s.reserve(detail::stopword_list.size());
        for (std::string_view w : detail::stopword_list) s.emplace(w);
        return s;
    }();
    return set;
}

}  // namespace ttov

#endif  // TTOV_STOPWORDS_HPP
