#include "artclust/data.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "artclust/rng.hpp"

namespace artclust {

namespace {

// --- delimited text -------------------------------------------------------

std::vector<std::string> split_delimited(const std::string& line, char delim) {
    std::vector<std::string> fields;
    if (delim == ',') {
        // RFC-style quoting: fields may be wrapped in double quotes, with ""
        // as an escaped quote
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        cur += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    cur += c;
                }
            } else if (c == '"' && cur.empty()) {
                quoted = true;
            } else if (c == delim) {
                fields.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(std::move(cur));
    } else {
        std::string cur;
        for (char c : line) {
            if (c == delim) {
                fields.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(std::move(cur));
    }
    return fields;
}

char detect_delimiter(const std::string& path) {
    const auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == "csv" ? ',' : '\t';
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

// --- UTF-8 ----------------------------------------------------------------

// Decode one codepoint starting at `i`; advances `i` past it. Invalid bytes
// are passed through as single-byte tokens.
char32_t next_codepoint(const std::string& s, std::size_t& i) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if ((b0 & 0x80) == 0x00) {
        len = 1;
        cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    }
    if (i + len > s.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            len = 1;
            cp = b0;
            break;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    i += len;
    return cp;
}

// Marks that modify the preceding segment: combining diacritics plus the
// modifier letters (length, aspiration, palatalization, ...). Stress marks
// U+02C8 and U+02CC are excluded; they do not belong to the previous segment.
bool attaches_to_previous(char32_t cp) {
    if (cp >= 0x0300 && cp <= 0x036F) return true;   // combining diacritics
    if (cp >= 0x1AB0 && cp <= 0x1AFF) return true;   // combining extended
    if (cp >= 0x1DC0 && cp <= 0x1DFF) return true;   // combining supplement
    if (cp >= 0x20D0 && cp <= 0x20FF) return true;   // combining for symbols
    if (cp >= 0xFE20 && cp <= 0xFE2F) return true;   // combining half marks
    if (cp >= 0x02B0 && cp <= 0x02FF)                // spacing modifier letters
        return cp != 0x02C8 && cp != 0x02CC;
    return false;
}

}  // namespace

SegmentedForm tokenize_fallback(const std::string& utf8) {
    SegmentedForm form;
    std::size_t i = 0;
    while (i < utf8.size()) {
        const std::size_t start = i;
        const char32_t cp = next_codepoint(utf8, i);
        const std::string bytes = utf8.substr(start, i - start);
        if (attaches_to_previous(cp) && !form.segments.empty())
            form.segments.back() += bytes;
        else
            form.segments.push_back(bytes);
    }
    return form;
}

// --- cell selections --------------------------------------------------------

CellSelection CellSelection::latin() {
    return {"latin",
            {"imperf-ind.3sg", "inf", "imp.2sg", "prs-ind.1sg", "prs-ind.2sg",
             "prs-ind.3sg", "prs-ind.3pl", "prs-sbjv.3sg", "ger"}};
}

CellSelection CellSelection::portuguese() {
    return {"portuguese",
            {"prs.ind.1sg", "prs.ind.3sg", "prs.ind.1pl", "prs.ind.2pl",
             "prs.ind.3pl", "pst.impf.ind.3sg", "pst.pfv.ind.1sg",
             "pst.perf.ind.3sg", "fut.ind.3sg", "prs.sbjv.3sg", "prs.sbjv.2pl",
             "pst.ptcp"}};
}

CellSelection CellSelection::estonian() {
    return {"estonian",
            {"inf", "imp.prs.2pl", "imp.prs.pers", "ger", "ptcp.pst.pers",
             "ind.prs.1sg", "cond.prs.pers", "imp.prs.2sg", "sup",
             "ptcp.prs.pers", "quot.prs.pers", "ind.pst.ipfv.1sg",
             "ind.prs.impers", "ind.pst.ipfv.impers"}};
}

CellSelection CellSelection::custom(std::vector<std::string> cells) {
    if (cells.empty()) throw ConfigError("cell selection is empty");
    return {"custom", std::move(cells)};
}

CellSelection CellSelection::for_language(const std::string& name) {
    if (name == "latin") return latin();
    if (name == "portuguese") return portuguese();
    if (name == "estonian") return estonian();
    throw ConfigError("unknown language '" + name +
                      "' (expected latin, portuguese or estonian)");
}

CellSelection CellSelection::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open cell list: " + path);
    std::vector<std::string> cells;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
        line.erase(0, start);
        if (!line.empty()) cells.push_back(line);
    }
    if (cells.empty()) throw ConfigError("cell list is empty: " + path);
    return custom(std::move(cells));
}

// --- loading ----------------------------------------------------------------

DatasetFormat dataset_format_from_string(const std::string& name) {
    if (name == "paralex") return DatasetFormat::paralex;
    if (name == "rvid") return DatasetFormat::rvid;
    if (name == "simple_tsv") return DatasetFormat::simple_tsv;
    throw ConfigError("unknown dataset format '" + name +
                      "' (expected paralex, rvid or simple_tsv)");
}

ColumnMap ColumnMap::defaults_for(DatasetFormat format) {
    switch (format) {
        case DatasetFormat::paralex:
            return {"lexeme", "cell", "phon_form", "inflection_class"};
        case DatasetFormat::rvid:
            return {"Lexeme_ID", "Cell_ID", "Form", "Inflection_Class"};
        case DatasetFormat::simple_tsv:
        default:
            return {"lexeme", "cell", "form", "class"};
    }
}

std::vector<ParadigmRow> load_dataset(const std::string& path,
                                      const LoadOptions& options, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset: " + path);

    const char delim = options.delimiter ? options.delimiter : detect_delimiter(path);
    ColumnMap cols = ColumnMap::defaults_for(options.format);
    if (!options.columns.lexeme.empty()) cols.lexeme = options.columns.lexeme;
    if (!options.columns.cell.empty()) cols.cell = options.columns.cell;
    if (!options.columns.form.empty()) cols.form = options.columns.form;
    if (!options.columns.class_label.empty()) cols.class_label = options.columns.class_label;

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty dataset file: " + path);
    const auto header = split_delimited(strip_cr(line), delim);

    auto column_index = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw DataError("dataset is missing required column '" + name + "' in " + path);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t idx_lexeme = column_index(cols.lexeme);
    const std::size_t idx_cell = column_index(cols.cell);
    const std::size_t idx_form = column_index(cols.form);
    const std::size_t idx_class = column_index(cols.class_label);

    LoadStats local;
    std::vector<ParadigmRow> rows;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_delimited(line, delim);
        const std::size_t needed =
            std::max({idx_lexeme, idx_cell, idx_form, idx_class});
        if (fields.size() <= needed)
            throw DataError("short row in " + path + ": " + line);
        ++local.rows_read;

        const std::string& raw_form = fields[idx_form];
        if (raw_form == options.defective_placeholder) {
            ++local.defective_removed;
            continue;
        }

        ParadigmRow row;
        row.lexeme_id = fields[idx_lexeme];
        row.cell_id = fields[idx_cell];
        row.class_label = fields[idx_class];
        if (raw_form.find(options.segment_delimiter) != std::string::npos) {
            std::string tok;
            std::size_t pos = 0;
            const std::string& d = options.segment_delimiter;
            std::size_t next;
            while ((next = raw_form.find(d, pos)) != std::string::npos) {
                if (next > pos) row.form.segments.push_back(raw_form.substr(pos, next - pos));
                pos = next + d.size();
            }
            if (pos < raw_form.size()) row.form.segments.push_back(raw_form.substr(pos));
        } else {
            row.form = tokenize_fallback(raw_form);
            ++local.fallback_tokenized;
        }
        if (!row.form.segments.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("dataset has no usable rows: " + path);
    if (stats) *stats = local;
    return rows;
}

std::vector<ParadigmSample> select_and_assemble(std::span<const ParadigmRow> rows,
                                                const CellSelection& selection,
                                                AssembleStats* stats) {
    if (selection.cells.empty()) throw ConfigError("cell selection is empty");
    const std::set<std::string> wanted(selection.cells.begin(), selection.cells.end());

    // group rows by lexeme in first-appearance order; first form wins per cell
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, SegmentedForm>> forms;
    std::map<std::string, std::string> labels;
    AssembleStats local;
    for (const ParadigmRow& row : rows) {
        if (!wanted.count(row.cell_id)) continue;
        auto [it, inserted] = forms.try_emplace(row.lexeme_id);
        if (inserted) {
            order.push_back(row.lexeme_id);
            labels[row.lexeme_id] = row.class_label;
        }
        if (!it->second.emplace(row.cell_id, row.form).second) ++local.duplicate_forms;
    }

    std::vector<ParadigmSample> samples;
    local.lexemes_seen = order.size();
    for (const std::string& lex : order) {
        const auto& cell_forms = forms[lex];
        if (cell_forms.size() < selection.cells.size()) {
            ++local.dropped_incomplete;
            continue;
        }
        ParadigmSample sample;
        sample.lexeme_id = lex;
        sample.class_label = labels[lex];
        for (const std::string& cell : selection.cells)
            sample.forms.emplace_back(cell, cell_forms.at(cell));
        samples.push_back(std::move(sample));
    }
    if (samples.empty())
        throw DataError("no lexeme has all " + std::to_string(selection.cells.size()) +
                        " selected cells");
    if (stats) *stats = local;
    return samples;
}

// --- synthetic data ---------------------------------------------------------

namespace {

const std::vector<std::string> kThemeVowels = {"a", "e", "i", "o", "u", "y",
                                               "æ", "ø", "ɑ", "ɛ", "ɪ", "ʊ"};
const std::vector<std::string> kStemConsonants = {"b", "d", "g", "k", "l", "m",
                                                  "n", "p", "r", "s", "t", "v"};
const std::vector<std::string> kCellMarkers = {"f", "h", "j", "c", "q", "w", "x",
                                               "z", "š", "ž", "ð", "θ", "ŋ", "ɸ"};

std::string padded_number(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

}  // namespace

SyntheticDataset synthetic_dataset(const SyntheticSpec& spec) {
    if (spec.n_classes < 1) throw ConfigError("synthetic: need at least one class");
    if (spec.n_lexemes < spec.n_classes)
        throw ConfigError("synthetic: need at least one lexeme per class");
    if (spec.n_cells < 1) throw ConfigError("synthetic: need at least one cell");
    if (spec.stem_length < 1) throw ConfigError("synthetic: stem length must be >= 1");
    if (spec.noise < 0.0 || spec.noise > 1.0)
        throw ConfigError("synthetic: noise must lie in [0, 1]");
    if (spec.n_classes > static_cast<int>(kThemeVowels.size()))
        throw ConfigError("synthetic: alphabet too small for " +
                          std::to_string(spec.n_classes) + " distinct class endings");

    SyntheticDataset data;
    const int cell_width = static_cast<int>(std::to_string(spec.n_cells).size());
    const int class_width = static_cast<int>(std::to_string(spec.n_classes).size());
    const int lex_width = static_cast<int>(std::to_string(spec.n_lexemes).size());

    for (int c = 0; c < spec.n_cells; ++c)
        data.cells.push_back("cell_" + padded_number(c + 1, cell_width));
    for (int k = 0; k < spec.n_classes; ++k)
        data.class_names.push_back("class_" + padded_number(k + 1, class_width));

    auto marker = [&](int c) {
        if (c < static_cast<int>(kCellMarkers.size())) return kCellMarkers[c];
        return "f" + std::to_string(c);
    };
    data.endings.assign(spec.n_classes, std::vector<SegmentedForm>(spec.n_cells));
    for (int k = 0; k < spec.n_classes; ++k)
        for (int c = 0; c < spec.n_cells; ++c)
            data.endings[k][c].segments = {kThemeVowels[k], marker(c), kThemeVowels[k]};

    Rng rng(spec.seed);
    for (int l = 0; l < spec.n_lexemes; ++l) {
        const int k = l % spec.n_classes;
        std::vector<std::string> stem;
        for (int s = 0; s < spec.stem_length; ++s)
            stem.push_back(kStemConsonants[rng.below(kStemConsonants.size())]);

        ParadigmSample sample;
        sample.lexeme_id = "lex_" + padded_number(l + 1, lex_width);
        sample.class_label = data.class_names[static_cast<std::size_t>(k)];
        for (int c = 0; c < spec.n_cells; ++c) {
            int source_class = k;
            if (spec.n_classes > 1 && spec.noise > 0.0 && rng.unit() < spec.noise) {
                const auto other = rng.below(static_cast<std::uint64_t>(spec.n_classes - 1));
                source_class = static_cast<int>(other) + (static_cast<int>(other) >= k ? 1 : 0);
            }
            SegmentedForm form;
            form.segments = stem;
            const auto& ending = data.endings[source_class][c].segments;
            form.segments.insert(form.segments.end(), ending.begin(), ending.end());
            sample.forms.emplace_back(data.cells[static_cast<std::size_t>(c)], std::move(form));
        }
        data.samples.push_back(std::move(sample));
    }
    return data;
}

std::vector<std::vector<std::string>> SyntheticDataset::ending_ngrams(
    int k, int c, const EncodingConfig& cfg) const {
    const auto& ending = endings.at(k).at(c).segments;
    std::vector<std::string> tail = ending;
    if (cfg.boundary_padding) tail.push_back(cfg.boundary_symbol);
    std::vector<std::vector<std::string>> out;
    const std::size_t n = static_cast<std::size_t>(cfg.n);
    if (tail.size() < n) return out;
    for (std::size_t i = 0; i + n <= tail.size(); ++i)
        out.emplace_back(tail.begin() + static_cast<std::ptrdiff_t>(i),
                         tail.begin() + static_cast<std::ptrdiff_t>(i + n));
    return out;
}

void dump_samples(std::span<const ParadigmSample> samples, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "lexeme\tcell\tform\tclass\n";
    for (const ParadigmSample& s : samples) {
        for (const auto& [cell, form] : s.forms) {
            out << s.lexeme_id << '\t' << cell << '\t';
            for (std::size_t i = 0; i < form.segments.size(); ++i) {
                if (i) out << ' ';
                out << form.segments[i];
            }
            out << '\t' << s.class_label << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace artclust
