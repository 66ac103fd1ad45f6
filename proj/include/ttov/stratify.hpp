#ifndef TTOV_STRATIFY_HPP
#define TTOV_STRATIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ttov/corpus.hpp"
#include "ttov/error.hpp"
#include "ttov/simsearch.hpp"

namespace ttov {

// How to partition a test set by best-match similarity. Interval mode uses
// fixed threshold boundaries on [0,1] (scores are percentages externally,
// normalized internally); quartile mode uses equal-size rank-based chunks.
struct stratum_spec {
    enum class kind { interval, quartile };

    kind mode = kind::interval;
    std::vector<double> boundaries = {0.0, 0.25, 0.50, 0.75, 1.0};  // interval mode
    int quartile_count = 4;                                         // quartile mode

    static stratum_spec intervals(std::vector<double> bounds) {
        stratum_spec spec;
        spec.mode = kind::interval;
        spec.boundaries = std::move(bounds);
        spec.check();
        return spec;
    }

    static stratum_spec quartiles(int k) {
        stratum_spec spec;
        spec.mode = kind::quartile;
        spec.quartile_count = k;
        spec.check();
        return spec;
    }

    void check() const {
        if (mode == kind::interval) {
            if (boundaries.size() < 2) throw usage_error("interval spec needs >= 2 boundaries");
            if (boundaries.front() != 0.0 || boundaries.back() != 1.0) {
                throw usage_error("interval boundaries must start at 0 and end at 1");
            }
            for (std::size_t i = 1; i < boundaries.size(); ++i) {
                if (!(boundaries[i - 1] < boundaries[i])) {
                    throw usage_error("interval boundaries must be strictly increasing");
                }
            }
        } else if (quartile_count < 1) {
            throw usage_error("quartile count must be >= 1");
        }
    }
};

// One similarity stratum. Members are canonically ordered by (score, id) so
// reruns over permuted input produce identical strata. Scores here stay in
// percent, matching the record files.
struct stratum {
    std::string name;
    std::vector<std::string> members;
    double min_score = 0.0;   // observed; 0 when empty
    double max_score = 0.0;
    double percent_of_test = 0.0;

    bool empty() const { return members.empty(); }
};

namespace detail {

struct scored_id {
    double score;  // percent
    std::string id;

    bool operator<(const scored_id& other) const {
        if (score != other.score) return score < other.score;
        return id < other.id;
    }
};

inline std::vector<scored_id> collect_scores(const std::vector<similarity_record>& records,
                                             int order) {
    std::vector<scored_id> scored;
    scored.reserve(records.size());
    for (const similarity_record& rec : records) {
        scored.push_back({rec.score_for(order), rec.test_instance_id});
    }
    return scored;
}

inline void finalize(stratum& s, std::size_t total) {
    s.percent_of_test = total == 0 ? 0.0 : 100.0 * static_cast<double>(s.members.size()) /
                                               static_cast<double>(total);
}

}  // namespace detail

// Buckets records into fixed threshold ranges: half-open [b_i, b_{i+1})
// except the final range, which is closed. Strata are named "1I".."kI".
// Empty strata are kept and reported at 0%.
inline std::vector<stratum> assign_intervals(const std::vector<similarity_record>& records,
                                             int order, const stratum_spec& spec = {}) {
    if (spec.mode != stratum_spec::kind::interval) {
        throw usage_error("assign_intervals called with a non-interval spec");
    }
    spec.check();
    auto scored = detail::collect_scores(records, order);
    std::sort(scored.begin(), scored.end());

    const std::size_t buckets = spec.boundaries.size() - 1;
    std::vector<stratum> strata(buckets);
    for (std::size_t b = 0; b < buckets; ++b) strata[b].name = std::to_string(b + 1) + "I";

    for (const auto& [score, id] : scored) {
        const double s = score / 100.0;
        if (s < 0.0 || s > 1.0) {
            throw data_error("similarity score outside [0,100] for instance '" + id + "'");
        }
        // Upper bound over boundaries: first bucket whose right edge is
        // above s; the final bucket also takes s == 1.
        std::size_t b = buckets - 1;
        for (std::size_t i = 0; i < buckets; ++i) {
            if (s < spec.boundaries[i + 1]) {
                b = i;
                break;
            }
        }
        stratum& st = strata[b];
        if (st.members.empty()) {
            st.min_score = score;
            st.max_score = score;
        } else {
            st.max_score = score;  // input is sorted ascending
        }
        st.members.push_back(id);
    }
    for (stratum& st : strata) detail::finalize(st, scored.size());
    return strata;
}

// Rank-based equal-size strata "Q1".."Qk": a stable sort by (score, id)
// followed by contiguous chunks. When n is not divisible by k the larger
// chunks come first, so sizes differ by at most one. Q1 holds the lowest
// scores.
inline std::vector<stratum> assign_quartiles(const std::vector<similarity_record>& records,
                                             int order, int k = 4) {
    if (k < 1) throw usage_error("quartile count must be >= 1");
    const std::size_t n = records.size();
    if (n < static_cast<std::size_t>(k)) {
        throw usage_error("cannot split " + std::to_string(n) + " records into " +
                          std::to_string(k) + " quartiles");
    }
    auto scored = detail::collect_scores(records, order);
    std::sort(scored.begin(), scored.end());

    const std::size_t base = n / static_cast<std::size_t>(k);
    const std::size_t remainder = n % static_cast<std::size_t>(k);
    std::vector<stratum> strata;
    strata.reserve(static_cast<std::size_t>(k));
    std::size_t pos = 0;
    for (int q = 0; q < k; ++q) {
        const std::size_t size = base + (static_cast<std::size_t>(q) < remainder ? 1 : 0);
        stratum st;
        st.name = "Q" + std::to_string(q + 1);
        st.min_score = scored[pos].score;
        st.max_score = scored[pos + size - 1].score;
        st.members.reserve(size);
        for (std::size_t i = 0; i < size; ++i) st.members.push_back(scored[pos + i].id);
        detail::finalize(st, n);
        strata.push_back(std::move(st));
        pos += size;
    }
    return strata;
}

// Descriptive statistics of best-match similarity per class label.
struct label_stats {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n-1 denominator)
    double min = 0.0;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double max = 0.0;
    bool stddev_degenerate = false;  // true when count < 2
};

using classwise_stats_result = std::map<std::string, label_stats>;

namespace detail {

// Linear-interpolation quantile over sorted data (the convention used by
// describe-style statistics tables).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

// Per-label count/mean/std/min/quartiles/max of best-match scores at one
// n-gram order. Every record's instance must carry a label.
inline classwise_stats_result classwise_stats(const std::vector<similarity_record>& records,
                                              const corpus& test, int order) {
    std::map<std::string, std::vector<double>> by_label;
    for (const similarity_record& rec : records) {
        const instance* ins = test.find(rec.test_instance_id);
        if (!ins) {
            throw usage_error("record for unknown instance '" + rec.test_instance_id + "'");
        }
        if (!ins->label) {
            throw usage_error("instance '" + rec.test_instance_id + "' has no label");
        }
        by_label[*ins->label].push_back(rec.score_for(order));
    }
    classwise_stats_result result;
    for (auto& [label, scores] : by_label) {
        std::sort(scores.begin(), scores.end());
        label_stats stats;
        stats.count = scores.size();
        double sum = 0.0;
        for (const double s : scores) sum += s;
        stats.mean = sum / static_cast<double>(scores.size());
        if (scores.size() >= 2) {
            double ss = 0.0;
            for (const double s : scores) ss += (s - stats.mean) * (s - stats.mean);
            stats.stddev = std::sqrt(ss / static_cast<double>(scores.size() - 1));
        } else {
            stats.stddev = 0.0;
            stats.stddev_degenerate = true;
        }
        stats.min = scores.front();
        stats.q25 = detail::quantile_sorted(scores, 0.25);
        stats.q50 = detail::quantile_sorted(scores, 0.50);
        stats.q75 = detail::quantile_sorted(scores, 0.75);
        stats.max = scores.back();
        result.emplace(label, stats);
    }
    return result;
}

// --- strata TSV: stratum, instance_id, score (percent) ---

inline void write_strata_tsv(std::ostream& out, const std::vector<stratum>& strata,
                             const std::vector<similarity_record>& records, int order) {
    std::unordered_map<std::string, double> score_of;
    score_of.reserve(records.size());
    for (const similarity_record& rec : records) {
        score_of[rec.test_instance_id] = rec.score_for(order);
    }
    // The name list keeps empty strata alive across the file boundary;
    // evaluation reports still need their zero rows.
    out << "#strata";
    for (const stratum& st : strata) out << '\t' << st.name;
    out << "\n#stratum\tinstance_id\tscore\n";
    for (const stratum& st : strata) {
        for (const std::string& id : st.members) {
            out << st.name << '\t' << id << '\t' << detail::format_score(score_of.at(id)) << '\n';
        }
    }
}

// Reads strata back in file order; member order within a stratum is
// preserved as written (canonical when written by write_strata_tsv). A
// "#strata" header, when present, fixes the stratum list so empty strata
// survive the round trip.
inline std::vector<stratum> read_strata_tsv(std::istream& in,
                                            const std::string& source = "<strata>") {
    std::vector<stratum> strata;
    std::map<std::string, std::size_t> index;
    std::size_t total = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        detail::strip_cr(line);
        if (line.rfind("#strata\t", 0) == 0) {
            auto names = detail::split_tabs(line);
            for (std::size_t i = 1; i < names.size(); ++i) {
                if (names[i].empty()) {
                    throw parse_error(source, lineno, "empty stratum name in #strata header");
                }
                auto [it, fresh] = index.emplace(names[i], strata.size());
                if (fresh) {
                    strata.emplace_back();
                    strata.back().name = names[i];
                }
            }
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_tabs(line);
        if (fields.size() != 3) {
            throw parse_error(source, lineno, "expected 3 columns: stratum, instance_id, score");
        }
        double score = 0.0;
        try {
            score = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw parse_error(source, lineno, "non-numeric score");
        }
        auto [it, fresh] = index.emplace(fields[0], strata.size());
        if (fresh) {
            strata.emplace_back();
            strata.back().name = fields[0];
        }
        stratum& st = strata[it->second];
        if (st.members.empty()) {
            st.min_score = score;
            st.max_score = score;
        } else {
            st.min_score = std::min(st.min_score, score);
            st.max_score = std::max(st.max_score, score);
        }
        st.members.push_back(std::move(fields[1]));
        ++total;
    }
    for (stratum& st : strata) detail::finalize(st, total);
    return strata;
}

inline std::vector<stratum> read_strata_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open strata file: " + path.string());
    return read_strata_tsv(in, path.string());
}

}  // namespace ttov

#endif  // TTOV_STRATIFY_HPP
