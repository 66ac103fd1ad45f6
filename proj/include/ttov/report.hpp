#ifndef TTOV_REPORT_HPP
#define TTOV_REPORT_HPP

#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttov/error.hpp"
#include "ttov/metrics.hpp"
#include "ttov/simsearch.hpp"
#include "ttov/stratify.hpp"

namespace ttov {

enum class render_format { markdown, csv, json };

struct render_config {
    render_format format = render_format::markdown;
    int metric_decimals = 1;       // P/R/F1/A cells
    int similarity_decimals = 2;   // overlap-summary cells
    double highlight_threshold = 60.0;  // overlap cells above this are bolded

    void check() const {
        if (metric_decimals < 0 || metric_decimals > 6 || similarity_decimals < 0 ||
            similarity_decimals > 6) {
            throw usage_error("decimals must lie in [0,6]");
        }
    }
};

// Fixed-point formatting with half-away-from-zero rounding.
inline std::string format_fixed(double value, int decimals) {
    if (decimals < 0 || decimals > 6) throw usage_error("decimals must lie in [0,6]");
    double scale = 1.0;
    for (int i = 0; i < decimals; ++i) scale *= 10.0;
    const long long rounded = std::llround(std::abs(value) * scale);  // llround is half-away
    std::string digits = std::to_string(rounded);
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
        digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    std::string out;
    if (value < 0.0 && rounded != 0) out.push_back('-');
    out += digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
    if (decimals > 0) {
        out.push_back('.');
        out += digits.substr(digits.size() - static_cast<std::size_t>(decimals));
    }
    return out;
}

namespace detail {

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string order_label(int order) {
    switch (order) {
        case 1: return "uni";
        case 2: return "bi";
        case 3: return "tri";
        default: return std::to_string(order) + "-gram";
    }
}

inline std::string join_csv(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_quote(fields[i]);
    }
    out.push_back('\n');
    return out;
}

inline std::string join_markdown(const std::vector<std::string>& fields) {
    std::string out = "|";
    for (const std::string& f : fields) {
        out += " " + f + " |";
    }
    out.push_back('\n');
    return out;
}

}  // namespace detail

// --- JSON conversions (lossless round-trip for all report types) ---

inline void to_json(nlohmann::json& j, const overlap_summary& s) {
    nlohmann::json averages = nlohmann::json::array();
    for (const auto& [order, score] : s.average_by_order) {
        averages.push_back({{"order", order}, {"score", score}});
    }
    j = {{"dataset", s.dataset}, {"averages", averages}};
}

inline void from_json(const nlohmann::json& j, overlap_summary& s) {
    j.at("dataset").get_to(s.dataset);
    s.average_by_order.clear();
    for (const auto& entry : j.at("averages")) {
        s.average_by_order[entry.at("order").get<int>()] = entry.at("score").get<double>();
    }
}

inline void to_json(nlohmann::json& j, const stratum& s) {
    j = {{"name", s.name},
         {"members", s.members},
         {"min_score", s.min_score},
         {"max_score", s.max_score},
         {"percent_of_test", s.percent_of_test}};
}

inline void from_json(const nlohmann::json& j, stratum& s) {
    j.at("name").get_to(s.name);
    j.at("members").get_to(s.members);
    j.at("min_score").get_to(s.min_score);
    j.at("max_score").get_to(s.max_score);
    j.at("percent_of_test").get_to(s.percent_of_test);
}

inline void to_json(nlohmann::json& j, const stratum_metrics& m) {
    j = {{"stratum", m.stratum},
         {"percent_of_test", m.percent_of_test},
         {"precision", m.precision},
         {"recall", m.recall},
         {"f1", m.f1},
         {"accuracy", m.accuracy},
         {"has_accuracy", m.has_accuracy},
         {"tp", m.tp},
         {"fp", m.fp},
         {"fn", m.fn},
         {"support", m.support},
         {"degenerate",
          {{"precision", m.degenerate_precision},
           {"recall", m.degenerate_recall},
           {"f1", m.degenerate_f1},
           {"accuracy", m.degenerate_accuracy}}},
         {"confusion", m.confusion}};
}

inline void from_json(const nlohmann::json& j, stratum_metrics& m) {
    j.at("stratum").get_to(m.stratum);
    j.at("percent_of_test").get_to(m.percent_of_test);
    j.at("precision").get_to(m.precision);
    j.at("recall").get_to(m.recall);
    j.at("f1").get_to(m.f1);
    j.at("accuracy").get_to(m.accuracy);
    j.at("has_accuracy").get_to(m.has_accuracy);
    j.at("tp").get_to(m.tp);
    j.at("fp").get_to(m.fp);
    j.at("fn").get_to(m.fn);
    j.at("support").get_to(m.support);
    const auto& d = j.at("degenerate");
    d.at("precision").get_to(m.degenerate_precision);
    d.at("recall").get_to(m.degenerate_recall);
    d.at("f1").get_to(m.degenerate_f1);
    d.at("accuracy").get_to(m.degenerate_accuracy);
    j.at("confusion").get_to(m.confusion);
}

inline void to_json(nlohmann::json& j, const evaluation_report& r) {
    const char* kind = r.kind == report_kind::classification  ? "classification"
                       : r.kind == report_kind::ner_spans     ? "ner_spans"
                                                              : "annotation_recall";
    j = {{"version", 1},
         {"dataset", r.dataset},
         {"task", r.task == task_kind::cls ? "cls" : "ner"},
         {"kind", kind},
         {"order", r.order},
         {"mode", r.mode},
         {"rows", r.rows}};
}

inline void from_json(const nlohmann::json& j, evaluation_report& r) {
    j.at("dataset").get_to(r.dataset);
    const auto task = j.at("task").get<std::string>();
    r.task = task == "cls" ? task_kind::cls : task_kind::ner;
    const auto kind = j.at("kind").get<std::string>();
    r.kind = kind == "classification"  ? report_kind::classification
             : kind == "ner_spans"     ? report_kind::ner_spans
                                       : report_kind::annotation_recall;
    j.at("order").get_to(r.order);
    j.at("mode").get_to(r.mode);
    j.at("rows").get_to(r.rows);
}

// --- overlap-summary table (rows = datasets, columns = n-gram orders) ---

inline std::string render_overlap_table(const std::vector<overlap_summary>& summaries,
                                        const render_config& config = {}) {
    config.check();
    if (summaries.empty()) throw usage_error("render_overlap_table: no summaries");

    if (config.format == render_format::json) {
        nlohmann::json j = {{"version", 1}, {"summaries", summaries}};
        return j.dump(2) + "\n";
    }

    std::set<int> orders;
    for (const auto& s : summaries) {
        for (const auto& [order, score] : s.average_by_order) orders.insert(order);
    }

    std::vector<std::string> header{"Dataset"};
    for (const int order : orders) header.push_back(detail::order_label(order));

    std::string out;
    if (config.format == render_format::markdown) {
        out += detail::join_markdown(header);
        std::vector<std::string> rule(header.size(), "---:");
        rule[0] = "---";
        out += detail::join_markdown(rule);
    } else {
        out += detail::join_csv(header);
    }

    for (const auto& s : summaries) {
        std::vector<std::string> row{s.dataset};
        for (const int order : orders) {
            auto it = s.average_by_order.find(order);
            if (it == s.average_by_order.end()) {
                row.emplace_back();
                continue;
            }
            std::string cell = format_fixed(it->second, config.similarity_decimals);
            if (config.format == render_format::markdown &&
                it->second > config.highlight_threshold) {
                cell = "**" + cell + "**";
            }
            row.push_back(std::move(cell));
        }
        out += config.format == render_format::markdown ? detail::join_markdown(row)
                                                        : detail::join_csv(row);
    }
    return out;
}

// --- evaluation table (Tables 3-5 shape: D, SR, %, P, R, F1, A) ---

namespace detail {

inline std::vector<std::string> evaluation_row(const evaluation_report& r,
                                               const stratum_metrics& m,
                                               const render_config& config) {
    // Degenerate 0/0 cells render as plain 0.0; the JSON output carries the
    // machine-readable flags.
    std::vector<std::string> row{r.dataset, m.stratum,
                                 format_fixed(m.percent_of_test, config.metric_decimals)};
    if (r.kind == report_kind::annotation_recall) {
        row.push_back(format_fixed(m.recall, config.metric_decimals));
        return row;
    }
    row.push_back(format_fixed(m.precision, config.metric_decimals));
    row.push_back(format_fixed(m.recall, config.metric_decimals));
    row.push_back(format_fixed(m.f1, config.metric_decimals));
    row.push_back(m.has_accuracy ? format_fixed(m.accuracy, config.metric_decimals)
                                 : std::string());
    return row;
}

}  // namespace detail

inline std::string render_evaluation_table(const evaluation_report& report,
                                           const render_config& config = {}) {
    config.check();
    if (report.rows.empty()) throw usage_error("render_evaluation_table: empty report");

    if (config.format == render_format::json) {
        nlohmann::json j = report;
        return j.dump(2) + "\n";
    }

    std::vector<std::string> header =
        report.kind == report_kind::annotation_recall
            ? std::vector<std::string>{"D", "SR", "%", "Recall"}
            : std::vector<std::string>{"D", "SR", "%", "P", "R", "F1", "A"};

    std::string out;
    if (config.format == render_format::markdown) {
        out += detail::join_markdown(header);
        std::vector<std::string> rule(header.size(), "---:");
        rule[0] = "---";
        rule[1] = "---";
        out += detail::join_markdown(rule);
    } else {
        out += detail::join_csv(header);
    }
    for (const stratum_metrics& m : report.rows) {
        const auto row = detail::evaluation_row(report, m, config);
        out += config.format == render_format::markdown ? detail::join_markdown(row)
                                                        : detail::join_csv(row);
    }
    return out;
}

// JSON export for strata lists (the TSV form lives in stratify.hpp).
inline std::string render_strata_json(const std::vector<stratum>& strata) {
    nlohmann::json j = {{"version", 1}, {"strata", strata}};
    return j.dump(2) + "\n";
}

}  // namespace ttov

#endif  // TTOV_REPORT_HPP
