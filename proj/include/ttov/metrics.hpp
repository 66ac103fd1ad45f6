#ifndef TTOV_METRICS_HPP
#define TTOV_METRICS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ttov/corpus.hpp"
#include "ttov/error.hpp"
#include "ttov/simsearch.hpp"
#include "ttov/stratify.hpp"

namespace ttov {

// Metrics for one stratum (or the full set). Percent-scale values; a
// degenerate flag marks 0/0 cells, which render as 0.0 but are
// distinguishable from a true zero.
struct stratum_metrics {
    std::string stratum;
    double percent_of_test = 0.0;

    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    bool has_accuracy = false;  // CLS only

    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t support = 0;  // instances (CLS) or gold spans (NER)

    bool degenerate_precision = false;
    bool degenerate_recall = false;
    bool degenerate_f1 = false;
    bool degenerate_accuracy = false;

    // CLS per-label confusion: gold label -> predicted label -> count.
    // Missing predictions appear under the empty-string key.
    std::map<std::string, std::map<std::string, std::size_t>> confusion;
};

enum class report_kind { classification, ner_spans, annotation_recall };

struct evaluation_report {
    std::string dataset;
    task_kind task = task_kind::cls;
    report_kind kind = report_kind::classification;
    int order = 1;       // n-gram order the stratification used
    std::string mode;    // "interval", "quartile" or "full"
    std::vector<stratum_metrics> rows;  // strata first, then the full-set "F" row
};

namespace detail {

inline void derive_prf(stratum_metrics& m) {
    if (m.tp + m.fp > 0) {
        m.precision = 100.0 * static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    } else {
        m.precision = 0.0;
        m.degenerate_precision = true;
    }
    if (m.tp + m.fn > 0) {
        m.recall = 100.0 * static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    } else {
        m.recall = 0.0;
        m.degenerate_recall = true;
    }
    if (m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    } else {
        m.f1 = 0.0;
        m.degenerate_f1 = true;
    }
}

}  // namespace detail

// Binary classification metrics w.r.t. a declared positive label. `gold`
// and `predicted` are aligned; a missing prediction counts as not-positive
// and as wrong for accuracy. `label_universe`, when given, is the set of
// admissible labels; it comes from the full test set, so label validation
// stays meaningful on stratum subsets that happen to be single-class.
inline stratum_metrics cls_metrics(const std::vector<std::string>& gold,
                                   const std::vector<std::optional<std::string>>& predicted,
                                   const std::string& positive_label,
                                   const std::set<std::string>* label_universe = nullptr) {
    if (gold.size() != predicted.size()) {
        throw usage_error("cls_metrics: gold and predicted sizes differ");
    }
    if (positive_label.empty()) throw usage_error("cls_metrics: positive label is required");

    stratum_metrics m;
    m.has_accuracy = true;
    m.support = gold.size();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (label_universe && !label_universe->count(gold[i])) {
            throw usage_error("unknown gold label '" + gold[i] + "'");
        }
        if (label_universe && predicted[i] && !label_universe->count(*predicted[i])) {
            throw usage_error("unknown predicted label '" + *predicted[i] + "'");
        }
        const bool gold_pos = gold[i] == positive_label;
        const bool pred_pos = predicted[i] && *predicted[i] == positive_label;
        if (gold_pos && pred_pos) ++m.tp;
        if (!gold_pos && pred_pos) ++m.fp;
        if (gold_pos && !pred_pos) ++m.fn;
        if (predicted[i] && *predicted[i] == gold[i]) ++correct;
        ++m.confusion[gold[i]][predicted[i] ? *predicted[i] : std::string()];
    }
    detail::derive_prf(m);
    if (!gold.empty()) {
        m.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(gold.size());
    } else {
        m.accuracy = 0.0;
        m.degenerate_accuracy = true;
    }
    return m;
}

namespace detail {

using span_key = std::tuple<std::size_t, std::size_t, std::string>;

inline std::map<span_key, std::size_t> span_multiset(const std::vector<entity_span>& spans) {
    std::map<span_key, std::size_t> counts;
    for (const entity_span& s : spans) ++counts[{s.start, s.end, s.entity_type}];
    return counts;
}

}  // namespace detail

// Entity-level NER metrics with the strict exact-match criterion: a
// predicted span is a true positive iff an unmatched gold span with the
// same (start, end, type) exists. Matching is one-to-one, so duplicate
// predictions of the same span become false positives.
inline stratum_metrics ner_metrics(const std::vector<entity_span>& gold,
                                   const std::vector<entity_span>& predicted) {
    const auto gold_counts = detail::span_multiset(gold);
    const auto pred_counts = detail::span_multiset(predicted);
    stratum_metrics m;
    m.support = gold.size();
    std::size_t matched = 0;
    for (const auto& [key, count] : pred_counts) {
        auto it = gold_counts.find(key);
        if (it != gold_counts.end()) matched += std::min(count, it->second);
    }
    m.tp = matched;
    m.fp = predicted.size() - matched;
    m.fn = gold.size() - matched;
    detail::derive_prf(m);
    return m;
}

namespace detail {

inline stratum_metrics evaluate_members(const corpus& test, const prediction_set& preds,
                                        const std::vector<std::string>& members,
                                        const std::string& positive_label,
                                        const std::set<std::string>* universe) {
    if (preds.task == task_kind::cls) {
        std::vector<std::string> gold;
        std::vector<std::optional<std::string>> predicted;
        gold.reserve(members.size());
        predicted.reserve(members.size());
        for (const std::string& id : members) {
            const instance* ins = test.find(id);
            if (!ins->label) throw usage_error("instance '" + id + "' has no gold label");
            gold.push_back(*ins->label);
            predicted.push_back(preds.label_for(id));
        }
        return cls_metrics(gold, predicted, positive_label, universe);
    }
    std::vector<entity_span> gold;
    std::vector<entity_span> predicted;
    for (const std::string& id : members) {
        const instance* ins = test.find(id);
        gold.insert(gold.end(), ins->entities.begin(), ins->entities.end());
        if (const auto* spans = preds.spans_for(id)) {
            predicted.insert(predicted.end(), spans->begin(), spans->end());
        }
    }
    return ner_metrics(gold, predicted);
}

}  // namespace detail

// Evaluates predictions inside each stratum independently, then appends a
// full-set "F" row computed over the entire test corpus. NER entities
// belong to their instance's stratum.
inline evaluation_report stratified_evaluate(const corpus& test, const prediction_set& preds,
                                             const std::vector<stratum>& strata,
                                             const std::string& positive_label = "",
                                             std::string mode = "interval", int order = 1,
                                             std::string dataset_name = "") {
    for (const stratum& st : strata) {
        for (const std::string& id : st.members) {
            if (!test.contains(id)) {
                throw usage_error("stratum '" + st.name + "' references unknown instance '" + id +
                                  "'");
            }
        }
    }

    std::set<std::string> universe;
    const std::set<std::string>* universe_ptr = nullptr;
    if (preds.task == task_kind::cls) {
        if (positive_label.empty()) {
            throw usage_error("classification evaluation requires a positive label");
        }
        for (const instance& ins : test.instances) {
            if (!ins.label) {
                throw usage_error("instance '" + ins.instance_id + "' has no gold label");
            }
            universe.insert(*ins.label);
        }
        if (!universe.count(positive_label)) {
            throw usage_error("positive label '" + positive_label +
                              "' does not occur in the gold labels");
        }
        universe_ptr = &universe;
    }

    evaluation_report report;
    report.dataset = dataset_name.empty() ? test.name : std::move(dataset_name);
    report.task = preds.task;
    report.kind = preds.task == task_kind::cls ? report_kind::classification : report_kind::ner_spans;
    report.order = order;
    report.mode = std::move(mode);

    const auto total = static_cast<double>(test.instances.size());
    for (const stratum& st : strata) {
        stratum_metrics m =
            detail::evaluate_members(test, preds, st.members, positive_label, universe_ptr);
        m.stratum = st.name;
        m.percent_of_test = total == 0.0 ? 0.0 : 100.0 * st.members.size() / total;
        report.rows.push_back(std::move(m));
    }

    std::vector<std::string> all_ids;
    all_ids.reserve(test.instances.size());
    for (const instance& ins : test.instances) all_ids.push_back(ins.instance_id);
    stratum_metrics full =
        detail::evaluate_members(test, preds, all_ids, positive_label, universe_ptr);
    full.stratum = "F";
    full.percent_of_test = 100.0;
    report.rows.push_back(std::move(full));
    return report;
}

// Recall stratified by per-entity similarity: each gold entity is scored by
// its best unigram match against the train-side entity surfaces, bucketed
// by the spec, and counted as recalled iff the predictions for its instance
// contain an exact (start, end, type) match (one-to-one). Precision is
// undefined at entity granularity, so rows carry recall only.
inline evaluation_report annotation_recall_strata(const corpus& test, const prediction_set& preds,
                                                  const corpus& train,
                                                  const stratum_spec& spec = {},
                                                  const text_config& cfg = {},
                                                  std::string dataset_name = "") {
    if (preds.task != task_kind::ner) {
        throw usage_error("annotation_recall_strata requires NER predictions");
    }

    // Index the train entity surfaces once, at unigram order.
    vocabulary vocab;
    std::vector<sparse_ngram_vector> train_vecs;
    std::vector<std::string> train_ids;
    std::unordered_set<std::string> seen;
    for (const instance& ins : train.instances) {
        for (const entity_span& span : ins.entities) {
            if (!seen.insert(span.surface).second) continue;  // best match ignores duplicates
            train_vecs.push_back(vectorize(span.surface, 1, vocab, cfg));
            train_ids.push_back(span.surface);
        }
    }
    std::optional<train_index> index;
    if (!train_vecs.empty()) index.emplace(1, std::move(train_vecs), std::move(train_ids));
    // The vocabulary stays open: test-entity tokens missing from the train
    // surfaces must still count toward the query norm, or partial matches
    // score too high. Unknown terms simply have no postings.

    // One pseudo-record per gold entity; recalled flags via one-to-one
    // exact matching inside each instance.
    std::vector<similarity_record> entity_records;
    std::unordered_map<std::string, bool> recalled;
    for (const instance& ins : test.instances) {
        auto gold_counts = detail::span_multiset(ins.entities);
        std::map<detail::span_key, std::size_t> pred_counts;
        if (const auto* spans = preds.spans_for(ins.instance_id)) {
            pred_counts = detail::span_multiset(*spans);
        }
        std::map<detail::span_key, std::size_t> matched;
        for (const auto& [key, count] : gold_counts) {
            auto it = pred_counts.find(key);
            matched[key] = it == pred_counts.end() ? 0 : std::min(count, it->second);
        }
        std::map<detail::span_key, std::size_t> used;
        for (std::size_t e = 0; e < ins.entities.size(); ++e) {
            const entity_span& span = ins.entities[e];
            const detail::span_key key{span.start, span.end, span.entity_type};
            const std::string pseudo_id = ins.instance_id + "#" + std::to_string(e);

            similarity_record rec;
            rec.test_instance_id = pseudo_id;
            similarity_record::best b;
            if (index) {
                const auto vec = vectorize(span.surface, 1, vocab, cfg);
                const match_result m = index->best_match(vec);
                b.score = m.score;
                if (m.train_ordinal) b.train_id = index->id_of(*m.train_ordinal);
            }
            rec.by_order[1] = std::move(b);
            entity_records.push_back(std::move(rec));

            recalled[pseudo_id] = used[key] < matched[key];
            ++used[key];
        }
    }

    const auto strata = spec.mode == stratum_spec::kind::interval
                            ? assign_intervals(entity_records, 1, spec)
                            : assign_quartiles(entity_records, 1, spec.quartile_count);

    evaluation_report report;
    report.dataset = dataset_name.empty() ? test.name + " (anno)" : std::move(dataset_name);
    report.task = task_kind::ner;
    report.kind = report_kind::annotation_recall;
    report.order = 1;
    report.mode = spec.mode == stratum_spec::kind::interval ? "interval" : "quartile";

    const auto recall_row = [&](const std::string& name, const std::vector<std::string>& members,
                                double percent) {
        stratum_metrics m;
        m.stratum = name;
        m.percent_of_test = percent;
        m.support = members.size();
        for (const std::string& id : members) {
            if (recalled.at(id)) ++m.tp;
        }
        m.fn = m.support - m.tp;
        m.degenerate_precision = true;
        m.degenerate_f1 = true;
        if (m.support > 0) {
            m.recall = 100.0 * static_cast<double>(m.tp) / static_cast<double>(m.support);
        } else {
            m.degenerate_recall = true;
        }
        return m;
    };

    for (const stratum& st : strata) {
        report.rows.push_back(recall_row(st.name, st.members, st.percent_of_test));
    }
    std::vector<std::string> all_ids;
    all_ids.reserve(entity_records.size());
    for (const auto& rec : entity_records) all_ids.push_back(rec.test_instance_id);
    report.rows.push_back(recall_row("F", all_ids, all_ids.empty() ? 0.0 : 100.0));
    return report;
}

}  // namespace ttov

#endif  // TTOV_METRICS_HPP
