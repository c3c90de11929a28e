#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artclust/encoding.hpp"
#include "artclust/errors.hpp"

namespace artclust {

/// One line of a long-format paradigm lexicon.
struct ParadigmRow {
    std::string lexeme_id;
    std::string cell_id;
    SegmentedForm form;
    std::string class_label;
};

/// One lexeme with a form for every selected cell, in selection order.
struct ParadigmSample {
    std::string lexeme_id;
    std::vector<std::pair<std::string, SegmentedForm>> forms;
    std::string class_label;

    const SegmentedForm* find_form(const std::string& cell) const {
        for (const auto& [c, f] : forms)
            if (c == cell) return &f;
        return nullptr;
    }
};

/// Ordered list of paradigm cells that represent a language's inflectional
/// system. The built-ins carry the published selections for the three
/// studied languages.
struct CellSelection {
    std::string language;
    std::vector<std::string> cells;

    static CellSelection latin();
    static CellSelection portuguese();
    static CellSelection estonian();
    static CellSelection custom(std::vector<std::string> cells);
    /// "latin" | "portuguese" | "estonian"; anything else is a ConfigError.
    static CellSelection for_language(const std::string& name);
    /// One cell id per line; '#' starts a comment.
    static CellSelection from_file(const std::string& path);
};

enum class DatasetFormat { paralex, rvid, simple_tsv };

DatasetFormat dataset_format_from_string(const std::string& name);

/// Header names for the required columns; defaults differ per format and any
/// of them can be overridden.
struct ColumnMap {
    std::string lexeme;
    std::string cell;
    std::string form;
    std::string class_label;

    static ColumnMap defaults_for(DatasetFormat format);
};

struct LoadOptions {
    DatasetFormat format = DatasetFormat::simple_tsv;
    /// Empty fields fall back to the format's defaults.
    ColumnMap columns;
    /// 0 = autodetect from the file extension (.csv -> comma, else tab).
    char delimiter = 0;
    std::string segment_delimiter = " ";
    std::string defective_placeholder = "Ø";
};

struct LoadStats {
    std::size_t rows_read = 0;
    std::size_t defective_removed = 0;
    std::size_t fallback_tokenized = 0;
};

/// Read a long-format lexicon. Rows whose form equals the defective
/// placeholder are dropped. Forms containing the segment delimiter are split
/// on it; everything else goes through the fallback tokenizer (one token per
/// character, combining marks and modifier letters attached to their base).
std::vector<ParadigmRow> load_dataset(const std::string& path,
                                      const LoadOptions& options = {},
                                      LoadStats* stats = nullptr);

struct AssembleStats {
    std::size_t lexemes_seen = 0;
    std::size_t dropped_incomplete = 0;
    std::size_t duplicate_forms = 0;
};

/// Group rows into one sample per lexeme over the selected cells. Lexemes
/// missing any selected cell are dropped; duplicate (lexeme, cell) forms are
/// resolved by keeping the first occurrence in file order. Output preserves
/// first-appearance order. Throws DataError when nothing survives.
std::vector<ParadigmSample> select_and_assemble(std::span<const ParadigmRow> rows,
                                                const CellSelection& selection,
                                                AssembleStats* stats = nullptr);

/// Character-level tokenizer used when forms are not pre-segmented: each
/// codepoint becomes a token, with combining marks and modifier letters
/// (length marks, palatalization, aspiration, ...) merged into the
/// preceding token.
SegmentedForm tokenize_fallback(const std::string& utf8);

struct SyntheticSpec {
    int n_classes = 5;
    int n_lexemes = 500;
    int n_cells = 6;
    int stem_length = 4;
    std::uint64_t seed = 1;
    double noise = 0.0;  ///< per-cell probability of borrowing another class's ending
};

/// Generated lexicon with known ground truth: every class marks each cell
/// with a class-specific ending over an alphabet disjoint from the stems, so
/// the ending windows are recoverable from cluster templates.
struct SyntheticDataset {
    std::vector<ParadigmSample> samples;
    std::vector<std::string> cells;
    std::vector<std::string> class_names;
    /// endings[k][c] = the ending of class k in cell c
    std::vector<std::vector<SegmentedForm>> endings;

    CellSelection selection() const { return CellSelection::custom(cells); }
    /// The length-n windows of class k's ending in cell c that involve no
    /// stem material (ending tokens plus the right boundary).
    std::vector<std::vector<std::string>> ending_ngrams(int k, int c,
                                                        const EncodingConfig& cfg) const;
};

/// Deterministic per seed. Throws ConfigError when the parameters cannot
/// yield distinct endings per class.
SyntheticDataset synthetic_dataset(const SyntheticSpec& spec);

/// Canonical dataset dump: simple_tsv schema (lexeme, cell, form, class),
/// forms space-segmented, rows grouped by sample in cell order.
void dump_samples(std::span<const ParadigmSample> samples, const std::string& path);

}  // namespace artclust
