// ttov: measure train/test overlap, stratify test sets by similarity,
// evaluate predictions per stratum, and generate leakage-aware splits.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ttov/ttov.hpp"

namespace {

struct global_options {
    std::string config_path;
    int threads = 0;  // 0 = auto
    std::uint64_t seed = 0;
};

struct corpus_options {
    std::string path;
    std::string format = "tsv";  // tsv | brat
    std::string ann;             // BRAT annotation dir/file; defaults to `path`
};

ttov::text_config make_config(const global_options& global) {
    if (global.config_path.empty()) return {};
    return ttov::load_config(global.config_path);
}

ttov::corpus load_corpus(const corpus_options& opts, ttov::corpus_role role,
                         const ttov::text_config& cfg, const std::string& name = "") {
    if (opts.format == "tsv") {
        return ttov::load_tsv_corpus(opts.path, role, name);
    }
    ttov::brat_warnings warn;
    const std::string ann = opts.ann.empty() ? opts.path : opts.ann;
    auto corpus = ttov::load_brat_corpus(opts.path, ann, role, cfg, &warn, name);
    if (warn.ignored_lines > 0) {
        std::cerr << "warning: ignored " << warn.ignored_lines
                  << " non-entity annotation line(s) under " << ann << "\n";
    }
    return corpus;
}

void add_corpus_flags(CLI::App* cmd, corpus_options& opts, const std::string& prefix,
                      const std::string& what) {
    cmd->add_option("--" + prefix, opts.path, what)->required();
    cmd->add_option("--" + prefix + "-format", opts.format, "Corpus format (default tsv)")
        ->check(CLI::IsMember({"tsv", "brat"}));
    cmd->add_option("--" + prefix + "-ann", opts.ann,
                    "BRAT annotation dir/file (defaults to the corpus path)");
}

std::vector<int> parse_orders(const std::string& csv) {
    return ttov::detail::parse_order_list(csv);
}

ttov::render_format parse_format(const std::string& name) {
    if (name == "markdown") return ttov::render_format::markdown;
    if (name == "csv") return ttov::render_format::csv;
    return ttov::render_format::json;
}

void write_or_throw(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ttov::data_error("cannot write to " + path.string());
    out << content;
}

std::vector<double> parse_bounds(const std::string& csv) {
    std::vector<double> bounds;
    std::string item;
    std::istringstream stream(csv);
    while (std::getline(stream, item, ',')) {
        try {
            bounds.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ttov::usage_error("--bounds expects comma-separated numbers, got '" + csv + "'");
        }
    }
    return bounds;
}

// --- overlap ---

struct overlap_options {
    corpus_options train;
    corpus_options test;
    std::string view = "text";
    std::string orders;  // empty = config default (1,2,3)
    std::string out;
    std::string summary_format = "markdown";
    std::string dataset;
    std::string engine = "indexed";
    bool exact_annotations = false;
};

ttov::corpus to_view(const std::string& view, ttov::corpus source) {
    if (view != "ann") return source;
    std::size_t empty = 0;
    for (const auto& ins : source.instances) {
        if (ins.entities.empty()) ++empty;
    }
    if (empty > 0) {
        std::cerr << "warning: " << empty << " instance(s) in '" << source.name
                  << "' have no entities; their annotation view is empty text\n";
    }
    return ttov::annotation_view(source);
}

int run_overlap(const global_options& global, const overlap_options& opts) {
    const auto cfg = make_config(global);
    auto train = load_corpus(opts.train, ttov::corpus_role::train, cfg);
    auto test = load_corpus(opts.test, ttov::corpus_role::test, cfg);

    // Exact-match counting looks at the original annotations, not the view.
    std::optional<ttov::annotation_overlap> exact;
    if (opts.exact_annotations) exact = ttov::exact_annotation_overlap(test, train, cfg);

    train = to_view(opts.view, std::move(train));
    test = to_view(opts.view, std::move(test));

    const auto engine = opts.engine == "naive" ? ttov::search_engine::naive
                                               : ttov::search_engine::indexed;
    const auto orders = opts.orders.empty() ? cfg.orders : parse_orders(opts.orders);
    const auto result =
        ttov::compare(test, train, orders, cfg, engine, global.threads, opts.dataset);

    ttov::render_config render;
    render.format = parse_format(opts.summary_format);
    std::cout << ttov::render_overlap_table({result.summary}, render);
    if (exact) {
        const double pct =
            exact->total == 0 ? 0.0 : 100.0 * static_cast<double>(exact->matched) /
                                          static_cast<double>(exact->total);
        std::cout << "exact annotation matches: " << exact->matched << "/" << exact->total
                  << " (" << ttov::format_fixed(pct, 1) << "%)\n";
    }

    if (!opts.out.empty()) {
        std::ofstream out(opts.out, std::ios::binary);
        if (!out) throw ttov::data_error("cannot write to " + opts.out);
        ttov::write_records_tsv(out, result.records);
    }
    return 0;
}

// --- cv-overlap: split + per-fold compare, reporting per-fold averages,
// --- their mean, and the pooled per-instance mean.

struct cv_overlap_options {
    corpus_options corpus;
    int k = 10;
    std::string mode = "random";
    std::optional<std::uint64_t> seed;
    bool shuffle_groups = false;
    std::string view = "text";
    std::string orders;
    std::string out;
    std::string summary_format = "markdown";
};

int run_cv_overlap(const global_options& global, const cv_overlap_options& opts) {
    const auto cfg = make_config(global);
    auto source = to_view(opts.view, load_corpus(opts.corpus, ttov::corpus_role::train, cfg));
    const std::uint64_t seed = opts.seed.value_or(global.seed);
    const auto plan = opts.mode == "doc-unique"
                          ? ttov::grouped_kfold(source, opts.k, seed, opts.shuffle_groups)
                          : ttov::random_kfold(source, opts.k, seed);
    const auto orders = opts.orders.empty() ? cfg.orders : parse_orders(opts.orders);

    std::vector<ttov::overlap_summary> rows;
    std::map<int, double> fold_mean_sum;
    std::map<int, double> pooled_sum;
    std::vector<ttov::similarity_record> pooled_records;
    for (int fold = 0; fold < opts.k; ++fold) {
        const auto [train, test] = ttov::emit_folds(source, plan, fold);
        auto result = ttov::compare(test, train, orders, cfg, ttov::search_engine::indexed,
                                    global.threads, "fold " + std::to_string(fold));
        for (const auto& [order, avg] : result.summary.average_by_order) {
            fold_mean_sum[order] += avg;
            pooled_sum[order] += avg * static_cast<double>(test.instances.size());
        }
        rows.push_back(result.summary);
        pooled_records.insert(pooled_records.end(),
                              std::make_move_iterator(result.records.begin()),
                              std::make_move_iterator(result.records.end()));
    }

    ttov::overlap_summary fold_mean;
    fold_mean.dataset = "mean of folds";
    ttov::overlap_summary pooled;
    pooled.dataset = "pooled";
    for (const auto& [order, sum] : fold_mean_sum) {
        fold_mean.average_by_order[order] = sum / static_cast<double>(opts.k);
        pooled.average_by_order[order] =
            pooled_sum[order] / static_cast<double>(source.instances.size());
    }
    rows.push_back(std::move(fold_mean));
    rows.push_back(std::move(pooled));

    ttov::render_config render;
    render.format = parse_format(opts.summary_format);
    std::cout << ttov::render_overlap_table(rows, render);

    if (!opts.out.empty()) {
        std::ofstream out(opts.out, std::ios::binary);
        if (!out) throw ttov::data_error("cannot write to " + opts.out);
        ttov::write_records_tsv(out, pooled_records);
    }
    return 0;
}

// --- stratify ---

struct stratify_options {
    std::string records;
    std::string mode = "interval";
    int order = 1;
    std::string bounds = "0,0.25,0.5,0.75,1";
    int k = 4;
    std::string out;
    std::string json_out;
    corpus_options classwise_corpus;
    bool classwise = false;
};

int run_stratify(const global_options& global, const stratify_options& opts) {
    const auto cfg = make_config(global);
    const auto records = ttov::read_records_tsv(std::filesystem::path(opts.records));

    std::vector<ttov::stratum> strata;
    if (opts.mode == "interval") {
        strata = ttov::assign_intervals(records, opts.order,
                                        ttov::stratum_spec::intervals(parse_bounds(opts.bounds)));
    } else {
        strata = ttov::assign_quartiles(records, opts.order, opts.k);
    }

    for (const auto& st : strata) {
        std::cout << st.name << "\tn=" << st.members.size() << "\tpercent="
                  << ttov::format_fixed(st.percent_of_test, 1);
        if (!st.empty()) {
            std::cout << "\tmin=" << ttov::format_fixed(st.min_score, 1)
                      << "\tmax=" << ttov::format_fixed(st.max_score, 1);
        }
        std::cout << "\n";
    }

    if (!opts.out.empty()) {
        std::ofstream out(opts.out, std::ios::binary);
        if (!out) throw ttov::data_error("cannot write to " + opts.out);
        ttov::write_strata_tsv(out, strata, records, opts.order);
    }
    if (!opts.json_out.empty()) {
        write_or_throw(opts.json_out, ttov::render_strata_json(strata));
    }

    if (opts.classwise) {
        if (opts.classwise_corpus.path.empty()) {
            throw ttov::usage_error("--classwise requires --corpus");
        }
        const auto test = load_corpus(opts.classwise_corpus, ttov::corpus_role::test, cfg);
        const auto stats = ttov::classwise_stats(records, test, opts.order);
        std::cout << "label\tcount\tmean\tstd\tmin\t25%\t50%\t75%\tmax\n";
        for (const auto& [label, s] : stats) {
            std::cout << label << '\t' << s.count;
            for (const double v : {s.mean, s.stddev, s.min, s.q25, s.q50, s.q75, s.max}) {
                std::cout << '\t' << ttov::format_fixed(v, 2);
            }
            std::cout << "\n";
        }
    }
    return 0;
}

// --- evaluate ---

struct evaluate_options {
    corpus_options test;
    std::string predictions;
    std::string strata;
    std::string task = "cls";
    std::string positive_label;
    std::string out;
    std::string report_format = "markdown";
    std::string dataset;
    int order = 1;
    bool annotation_recall = false;
    corpus_options train;  // annotation-recall mode only
    std::string bounds = "0,0.25,0.5,0.75,1";
};

int run_evaluate(const global_options& global, const evaluate_options& opts) {
    const auto task = opts.task == "ner" ? ttov::task_kind::ner : ttov::task_kind::cls;
    if (task == ttov::task_kind::cls && opts.positive_label.empty()) {
        throw ttov::usage_error("classification evaluation requires --positive-label");
    }
    if (!opts.annotation_recall && opts.strata.empty()) {
        throw ttov::usage_error("--strata is required (or use --annotation-recall)");
    }
    const auto cfg = make_config(global);
    const auto test = load_corpus(opts.test, ttov::corpus_role::test, cfg);
    const auto preds = ttov::load_predictions(opts.predictions, task, test, cfg);

    ttov::evaluation_report report;
    if (opts.annotation_recall) {
        if (task != ttov::task_kind::ner) {
            throw ttov::usage_error("--annotation-recall requires --task ner");
        }
        if (opts.train.path.empty()) {
            throw ttov::usage_error("--annotation-recall requires --train");
        }
        const auto train = load_corpus(opts.train, ttov::corpus_role::train, cfg);
        report = ttov::annotation_recall_strata(
            test, preds, train, ttov::stratum_spec::intervals(parse_bounds(opts.bounds)), cfg,
            opts.dataset);
    } else {
        const auto strata = ttov::read_strata_tsv(std::filesystem::path(opts.strata));
        bool quartiles = !strata.empty();
        for (const auto& st : strata) quartiles = quartiles && st.name.starts_with("Q");
        report = ttov::stratified_evaluate(test, preds, strata, opts.positive_label,
                                           quartiles ? "quartile" : "interval", opts.order,
                                           opts.dataset);
    }

    ttov::render_config render;
    render.format = parse_format(opts.report_format);
    const auto text = ttov::render_evaluation_table(report, render);
    std::cout << text;
    if (!opts.out.empty()) write_or_throw(opts.out, text);
    return 0;
}

// --- split ---

struct split_options {
    corpus_options corpus;
    int k = 10;
    std::string mode = "random";
    std::optional<std::uint64_t> seed;
    bool shuffle_groups = false;
    std::string out;
};

int run_split(const global_options& global, const split_options& opts) {
    const auto cfg = make_config(global);
    const auto corpus = load_corpus(opts.corpus, ttov::corpus_role::train, cfg);
    const std::uint64_t seed = opts.seed.value_or(global.seed);

    const auto plan = opts.mode == "doc-unique"
                          ? ttov::grouped_kfold(corpus, opts.k, seed, opts.shuffle_groups)
                          : ttov::random_kfold(corpus, opts.k, seed);

    std::vector<std::size_t> sizes(static_cast<std::size_t>(opts.k), 0);
    for (const auto& [id, fold] : plan.entries) ++sizes[static_cast<std::size_t>(fold)];
    for (std::size_t f = 0; f < sizes.size(); ++f) {
        std::cout << "fold " << f << "\tn=" << sizes[f] << "\n";
    }

    if (!opts.out.empty()) {
        std::ofstream out(opts.out, std::ios::binary);
        if (!out) throw ttov::data_error("cannot write to " + opts.out);
        ttov::write_split_tsv(out, plan);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"train/test overlap measurement and similarity-stratified evaluation"};
    app.require_subcommand(1);

    global_options global;
    app.add_option("--config", global.config_path, "Key-value config file");
    app.add_option("--threads", global.threads, "Worker threads (0 = auto)");
    app.add_option("--seed", global.seed, "Default RNG seed");

    overlap_options overlap;
    auto* overlap_cmd = app.add_subcommand(
        "overlap", "Best-match similarity of a test set against a train set");
    add_corpus_flags(overlap_cmd, overlap.train, "train", "Train corpus path");
    add_corpus_flags(overlap_cmd, overlap.test, "test", "Test corpus path");
    overlap_cmd->add_option("--view", overlap.view, "Compare text or annotation surfaces")
        ->check(CLI::IsMember({"text", "ann"}));
    overlap_cmd->add_option("--orders", overlap.orders, "N-gram orders, e.g. 1,2,3");
    overlap_cmd->add_option("--out", overlap.out, "Write per-instance records TSV here");
    overlap_cmd
        ->add_option("--summary-format", overlap.summary_format, "markdown | csv | json")
        ->check(CLI::IsMember({"markdown", "csv", "json"}));
    overlap_cmd->add_option("--dataset", overlap.dataset, "Dataset name for the summary row");
    overlap_cmd->add_option("--engine", overlap.engine, "indexed | naive (cross-check)")
        ->check(CLI::IsMember({"indexed", "naive"}));
    overlap_cmd->add_flag("--exact-annotations", overlap.exact_annotations,
                          "Also count test entities whose surface occurs verbatim in train");

    cv_overlap_options cv;
    auto* cv_cmd = app.add_subcommand(
        "cv-overlap", "Cross-validated overlap: per-fold, fold-mean and pooled averages");
    add_corpus_flags(cv_cmd, cv.corpus, "corpus", "Corpus path");
    cv_cmd->add_option("--k", cv.k, "Fold count");
    cv_cmd->add_option("--mode", cv.mode, "random | doc-unique")
        ->check(CLI::IsMember({"random", "doc-unique"}));
    std::uint64_t cv_seed = 0;
    auto* cv_seed_opt = cv_cmd->add_option("--seed", cv_seed, "Seed for the split");
    cv_cmd->add_flag("--shuffle-groups", cv.shuffle_groups,
                     "Shuffle equal-sized documents before the greedy pass");
    cv_cmd->add_option("--view", cv.view, "Compare text or annotation surfaces")
        ->check(CLI::IsMember({"text", "ann"}));
    cv_cmd->add_option("--orders", cv.orders, "N-gram orders, e.g. 1,2,3");
    cv_cmd->add_option("--out", cv.out, "Write pooled per-instance records TSV here");
    cv_cmd->add_option("--summary-format", cv.summary_format, "markdown | csv | json")
        ->check(CLI::IsMember({"markdown", "csv", "json"}));

    stratify_options stratify;
    auto* stratify_cmd =
        app.add_subcommand("stratify", "Partition a records file into similarity strata");
    stratify_cmd->add_option("--records", stratify.records, "Records TSV from `overlap --out`")
        ->required();
    stratify_cmd->add_option("--mode", stratify.mode, "interval | quartile")
        ->check(CLI::IsMember({"interval", "quartile"}));
    stratify_cmd->add_option("--order", stratify.order, "N-gram order to stratify on");
    stratify_cmd->add_option("--bounds", stratify.bounds, "Interval boundaries on [0,1]");
    stratify_cmd->add_option("--k", stratify.k, "Quartile count");
    stratify_cmd->add_option("--out", stratify.out, "Write strata TSV here");
    stratify_cmd->add_option("--json", stratify.json_out, "Write strata JSON here");
    stratify_cmd->add_flag("--classwise", stratify.classwise,
                           "Also print per-label similarity statistics");
    stratify_cmd->add_option("--corpus", stratify.classwise_corpus.path,
                             "Labeled test corpus for --classwise");
    stratify_cmd
        ->add_option("--corpus-format", stratify.classwise_corpus.format, "tsv | brat")
        ->check(CLI::IsMember({"tsv", "brat"}));
    stratify_cmd->add_option("--corpus-ann", stratify.classwise_corpus.ann,
                             "BRAT annotations for --corpus");

    evaluate_options evaluate;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Per-stratum metrics for a prediction file");
    add_corpus_flags(evaluate_cmd, evaluate.test, "test", "Test corpus path");
    evaluate_cmd->add_option("--predictions", evaluate.predictions,
                             "CLS: TSV file; NER: directory of .ann files")
        ->required();
    evaluate_cmd->add_option("--strata", evaluate.strata, "Strata TSV from `stratify --out`");
    evaluate_cmd->add_option("--task", evaluate.task, "cls | ner")
        ->check(CLI::IsMember({"cls", "ner"}));
    evaluate_cmd->add_option("--positive-label", evaluate.positive_label,
                             "Positive class label (CLS)");
    evaluate_cmd->add_option("--out", evaluate.out, "Write the report here too");
    evaluate_cmd
        ->add_option("--report-format", evaluate.report_format, "markdown | csv | json")
        ->check(CLI::IsMember({"markdown", "csv", "json"}));
    evaluate_cmd->add_option("--dataset", evaluate.dataset, "Dataset name for the report");
    evaluate_cmd->add_option("--order", evaluate.order, "N-gram order label for the report");
    evaluate_cmd->add_flag("--annotation-recall", evaluate.annotation_recall,
                           "Recall stratified by per-entity train similarity");
    evaluate_cmd->add_option("--train", evaluate.train.path,
                             "Train corpus (--annotation-recall only)");
    evaluate_cmd->add_option("--train-format", evaluate.train.format, "tsv | brat")
        ->check(CLI::IsMember({"tsv", "brat"}));
    evaluate_cmd->add_option("--train-ann", evaluate.train.ann, "BRAT annotations for --train");
    evaluate_cmd->add_option("--bounds", evaluate.bounds,
                             "Interval boundaries (--annotation-recall only)");

    split_options split;
    auto* split_cmd = app.add_subcommand("split", "Generate a k-fold split plan");
    add_corpus_flags(split_cmd, split.corpus, "corpus", "Corpus path");
    split_cmd->add_option("--k", split.k, "Fold count");
    split_cmd->add_option("--mode", split.mode, "random | doc-unique")
        ->check(CLI::IsMember({"random", "doc-unique"}));
    std::uint64_t split_seed = 0;
    auto* seed_opt = split_cmd->add_option("--seed", split_seed, "Seed for this split");
    split_cmd->add_flag("--shuffle-groups", split.shuffle_groups,
                        "Shuffle equal-sized documents before the greedy pass");
    split_cmd->add_option("--out", split.out, "Write the plan TSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(overlap_cmd)) return run_overlap(global, overlap);
        if (app.got_subcommand(stratify_cmd)) return run_stratify(global, stratify);
        if (app.got_subcommand(evaluate_cmd)) return run_evaluate(global, evaluate);
        if (app.got_subcommand(cv_cmd)) {
            if (cv_seed_opt->count() > 0) cv.seed = cv_seed;
            return run_cv_overlap(global, cv);
        }
        if (seed_opt->count() > 0) split.seed = split_seed;
        return run_split(global, split);
    } catch (const ttov::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ttov::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
