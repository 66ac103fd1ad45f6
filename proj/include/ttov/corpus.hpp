#ifndef TTOV_CORPUS_HPP
#define TTOV_CORPUS_HPP

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ttov/error.hpp"
#include "ttov/textproc.hpp"

namespace ttov {

// Typed character span into an instance's text. Offsets are byte offsets
// into the UTF-8 text; `end` is exclusive. When a corpus is loaded in
// code-point offset mode the offsets are converted to bytes at parse time.
struct entity_span {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string entity_type;
    std::string surface;

    friend bool operator==(const entity_span&, const entity_span&) = default;
};

// One train/test unit: a sentence, passage or document.
struct instance {
    std::string instance_id;
    std::string document_id;  // defaults to instance_id when the source has none
    std::string text;
    std::optional<std::string> label;
    std::vector<entity_span> entities;
};

enum class corpus_role { train, test };

struct corpus {
    std::string name;
    corpus_role role = corpus_role::train;
    std::vector<instance> instances;

    const instance* find(std::string_view id) const {
        auto it = index_.find(std::string(id));
        return it == index_.end() ? nullptr : &instances[it->second];
    }

    bool contains(std::string_view id) const { return find(id) != nullptr; }

    // Rebuilds the id lookup and enforces the model invariants: unique
    // instance ids, spans inside the text, surfaces equal to their slice.
    void validate() {
        index_.clear();
        index_.reserve(instances.size());
        for (std::size_t i = 0; i < instances.size(); ++i) {
            instance& ins = instances[i];
            if (ins.document_id.empty()) ins.document_id = ins.instance_id;
            if (!index_.emplace(ins.instance_id, i).second) {
                throw data_error("duplicate instance id '" + ins.instance_id + "' in corpus '" +
                                 name + "'");
            }
            for (const entity_span& span : ins.entities) {
                if (span.start >= span.end || span.end > ins.text.size()) {
                    throw data_error("entity span [" + std::to_string(span.start) + "," +
                                     std::to_string(span.end) + ") out of range in instance '" +
                                     ins.instance_id + "'");
                }
                if (ins.text.compare(span.start, span.end - span.start, span.surface) != 0) {
                    throw data_error("entity surface mismatch in instance '" + ins.instance_id +
                                     "': expected '" +
                                     ins.text.substr(span.start, span.end - span.start) +
                                     "', got '" + span.surface + "'");
                }
            }
        }
    }

private:
    std::unordered_map<std::string, std::size_t> index_;
};

enum class task_kind { cls, ner };

// Externally produced model outputs, keyed by test instance id. Instances
// with no entry count as "no prediction".
struct prediction_set {
    task_kind task = task_kind::cls;
    std::unordered_map<std::string, std::string> labels;                  // CLS
    std::unordered_map<std::string, std::vector<entity_span>> spans;      // NER

    std::optional<std::string> label_for(const std::string& id) const {
        auto it = labels.find(id);
        if (it == labels.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<entity_span>* spans_for(const std::string& id) const {
        auto it = spans.find(id);
        return it == spans.end() ? nullptr : &it->second;
    }
};

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// Strips one trailing '\r' so CRLF input parses like LF input.
inline void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Maps a code-point offset to a byte offset, or npos when out of range.
inline std::size_t codepoint_to_byte(const std::string& text, std::size_t cp_offset) {
    std::size_t byte = 0;
    std::size_t cp = 0;
    while (cp < cp_offset) {
        if (byte >= text.size()) return std::string::npos;
        const auto lead = static_cast<unsigned char>(text[byte]);
        std::size_t len = 1;
        if (lead >= 0xF0) len = 4;
        else if (lead >= 0xE0) len = 3;
        else if (lead >= 0xC0) len = 2;
        byte += len;
        ++cp;
    }
    return byte <= text.size() ? byte : std::string::npos;
}

}  // namespace detail

// Parses a TSV corpus: instance_id, text, [label], [document_id]. Lines
// starting with '#' are comments. Empty label/document_id cells mean absent.
inline corpus load_tsv_corpus(const std::filesystem::path& path, corpus_role role,
                              std::string name = "") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open corpus file: " + path.string());
    corpus out;
    out.name = name.empty() ? path.stem().string() : std::move(name);
    out.role = role;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        detail::strip_cr(line);
        if (!line.empty() && line[0] == '#') continue;
        auto fields = detail::split_tabs(line);
        if (fields.size() < 2 || fields.size() > 4) {
            throw parse_error(path.string(), lineno,
                              "expected 2-4 tab-separated columns, got " +
                                  std::to_string(fields.size()));
        }
        instance ins;
        ins.instance_id = std::move(fields[0]);
        ins.text = std::move(fields[1]);
        if (fields.size() >= 3 && !fields[2].empty()) ins.label = std::move(fields[2]);
        if (fields.size() == 4 && !fields[3].empty()) ins.document_id = std::move(fields[3]);
        if (ins.instance_id.empty()) {
            throw parse_error(path.string(), lineno, "empty instance id");
        }
        out.instances.push_back(std::move(ins));
    }
    out.validate();
    return out;
}

// Counters reported by the BRAT loader: standoff lines it deliberately
// skipped (relations, events, attributes, discontinuous spans).
struct brat_warnings {
    std::size_t ignored_lines = 0;
};

namespace detail {

// One "T<id>\t<TYPE> <start> <end>\t<surface>" line. Returns nullopt for
// lines the loader skips (non-T annotations and discontinuous spans), which
// are tallied in `warn`.
inline std::optional<entity_span> parse_brat_t_line(const std::string& line,
                                                    const std::string& file, std::size_t lineno,
                                                    const std::string& text, bool char_offsets,
                                                    brat_warnings& warn) {
    if (line.empty()) return std::nullopt;
    if (line[0] != 'T') {
        ++warn.ignored_lines;
        return std::nullopt;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 3) {
        throw parse_error(file, lineno, "malformed annotation line: expected 3 tab fields");
    }
    const std::string& ann_id = fields[0];
    const std::string& middle = fields[1];
    if (middle.find(';') != std::string::npos) {
        ++warn.ignored_lines;  // discontinuous span, unsupported
        return std::nullopt;
    }
    const std::size_t sp1 = middle.find(' ');
    const std::size_t sp2 = middle.rfind(' ');
    if (sp1 == std::string::npos || sp2 == sp1) {
        throw parse_error(file, lineno, "malformed span in annotation " + ann_id);
    }
    entity_span span;
    span.entity_type = middle.substr(0, sp1);
    try {
        span.start = std::stoull(middle.substr(sp1 + 1, sp2 - sp1 - 1));
        span.end = std::stoull(middle.substr(sp2 + 1));
    } catch (const std::exception&) {
        throw parse_error(file, lineno, "non-numeric offsets in annotation " + ann_id);
    }
    span.surface = fields[2];
    if (char_offsets) {
        const std::size_t b_start = codepoint_to_byte(text, span.start);
        const std::size_t b_end = codepoint_to_byte(text, span.end);
        if (b_start == std::string::npos || b_end == std::string::npos) {
            throw parse_error(file, lineno,
                              "annotation " + ann_id + " offsets outside text (code points)");
        }
        span.start = b_start;
        span.end = b_end;
    }
    if (span.start >= span.end || span.end > text.size()) {
        throw parse_error(file, lineno, "annotation " + ann_id + " offsets outside text");
    }
    if (text.compare(span.start, span.end - span.start, span.surface) != 0) {
        throw parse_error(file, lineno,
                          "annotation " + ann_id + " surface does not match text slice: '" +
                              span.surface + "' vs '" +
                              text.substr(span.start, span.end - span.start) + "'");
    }
    return span;
}

inline std::vector<entity_span> parse_brat_ann(const std::filesystem::path& ann_path,
                                               const std::string& text, bool char_offsets,
                                               brat_warnings& warn) {
    std::ifstream in(ann_path, std::ios::binary);
    if (!in) throw data_error("cannot open annotation file: " + ann_path.string());
    std::vector<entity_span> spans;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (auto span = parse_brat_t_line(line, ann_path.string(), lineno, text, char_offsets, warn)) {
            spans.push_back(std::move(*span));
        }
    }
    return spans;
}

}  // namespace detail

// Loads a BRAT standoff corpus. `text_path`/`ann_path` are either one
// ".txt"/".ann" pair or two directories holding matching pairs (same file
// stem). The stem becomes the instance id and, absent other information,
// the document id. Non-T annotation lines are skipped and counted in `warn`.
inline corpus load_brat_corpus(const std::filesystem::path& text_path,
                               const std::filesystem::path& ann_path, corpus_role role,
                               const text_config& cfg = {}, brat_warnings* warn = nullptr,
                               std::string name = "") {
    namespace fs = std::filesystem;
    brat_warnings local;
    brat_warnings& w = warn ? *warn : local;
    corpus out;
    out.role = role;

    std::vector<std::pair<fs::path, fs::path>> pairs;
    if (fs::is_directory(text_path)) {
        if (!fs::is_directory(ann_path)) {
            throw data_error("annotation path is not a directory: " + ann_path.string());
        }
        for (const auto& entry : fs::directory_iterator(text_path)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
            pairs.emplace_back(entry.path(), ann_path / (entry.path().stem().string() + ".ann"));
        }
        std::sort(pairs.begin(), pairs.end());  // directory order is not deterministic
        out.name = name.empty() ? text_path.filename().string() : name;
    } else {
        if (!fs::exists(text_path)) throw data_error("cannot open file: " + text_path.string());
        pairs.emplace_back(text_path, ann_path);
        out.name = name.empty() ? text_path.stem().string() : name;
    }
    if (pairs.empty()) throw data_error("no .txt files found under " + text_path.string());

    for (const auto& [txt, ann] : pairs) {
        if (!fs::exists(ann)) {
            throw data_error("missing annotation file for " + txt.string() + ": " + ann.string());
        }
        instance ins;
        ins.instance_id = txt.stem().string();
        ins.text = detail::read_file(txt);
        ins.entities = detail::parse_brat_ann(ann, ins.text, cfg.char_offsets, w);
        out.instances.push_back(std::move(ins));
    }
    out.validate();
    return out;
}

// Serializes an instance's entities back to standoff T-lines (one per
// entity, ids T1..Tn). Reparsing the result yields an identical entity set.
inline std::string to_brat_ann(const instance& ins, bool char_offsets = false) {
    std::string out;
    std::size_t next = 1;
    for (const entity_span& span : ins.entities) {
        std::size_t start = span.start;
        std::size_t end = span.end;
        if (char_offsets) {
            start = 0;
            end = 0;
            for (std::size_t b = 0; b < span.end; ++b) {
                const auto c = static_cast<unsigned char>(ins.text[b]);
                const bool lead = (c & 0xC0) != 0x80;
                if (lead) {
                    if (b < span.start) ++start;
                    ++end;
                }
            }
        }
        out += "T" + std::to_string(next++) + "\t" + span.entity_type + " " +
               std::to_string(start) + " " + std::to_string(end) + "\t" + span.surface + "\n";
    }
    return out;
}

// Loads model predictions and validates every id against the test corpus.
// CLS: "instance_id\tlabel" TSV. NER: a directory of <instance_id>.ann files
// (instances without a file predict zero spans).
inline prediction_set load_predictions(const std::filesystem::path& path, task_kind task,
                                       const corpus& test, const text_config& cfg = {}) {
    prediction_set preds;
    preds.task = task;
    std::vector<std::string> unknown;

    if (task == task_kind::cls) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw data_error("cannot open predictions file: " + path.string());
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            detail::strip_cr(line);
            if (line.empty() || line[0] == '#') continue;
            auto fields = detail::split_tabs(line);
            if (fields.size() != 2) {
                throw parse_error(path.string(), lineno, "expected 'instance_id<TAB>label'");
            }
            if (!test.contains(fields[0])) {
                unknown.push_back(fields[0]);
                continue;
            }
            if (!preds.labels.emplace(fields[0], std::move(fields[1])).second) {
                throw parse_error(path.string(), lineno,
                                  "duplicate prediction for instance '" + fields[0] + "'");
            }
        }
    } else {
        namespace fs = std::filesystem;
        if (!fs::is_directory(path)) {
            throw data_error("NER predictions path must be a directory of .ann files: " +
                             path.string());
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".ann") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        brat_warnings warn;
        for (const auto& file : files) {
            const std::string id = file.stem().string();
            const instance* ins = test.find(id);
            if (!ins) {
                unknown.push_back(id);
                continue;
            }
            preds.spans[id] = detail::parse_brat_ann(file, ins->text, cfg.char_offsets, warn);
        }
    }

    if (!unknown.empty()) {
        std::sort(unknown.begin(), unknown.end());
        std::string msg = "predictions refer to unknown instance ids:";
        for (const auto& id : unknown) msg += " " + id;
        throw data_error(msg);
    }
    return preds;
}

// Derived corpus whose text is the instance's entity surfaces joined by
// single spaces, in document order. Entities are re-anchored into the new
// text, so applying the view twice is a no-op.
inline corpus annotation_view(const corpus& source) {
    corpus out;
    out.name = source.name + ".ann";
    out.role = source.role;
    out.instances.reserve(source.instances.size());
    for (const instance& ins : source.instances) {
        instance view;
        view.instance_id = ins.instance_id;
        view.document_id = ins.document_id;
        view.label = ins.label;
        std::vector<entity_span> ordered = ins.entities;
        std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
            return std::pair(a.start, a.end) < std::pair(b.start, b.end);
        });
        for (entity_span& span : ordered) {
            if (!view.text.empty()) view.text.push_back(' ');
            const std::size_t start = view.text.size();
            view.text += span.surface;
            span.start = start;
            span.end = view.text.size();
        }
        view.entities = std::move(ordered);
        out.instances.push_back(std::move(view));
    }
    out.validate();
    return out;
}

}  // namespace ttov

#endif  // TTOV_CORPUS_HPP
