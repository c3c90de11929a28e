#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "artclust/bitvector.hpp"
#include "artclust/errors.hpp"

namespace artclust {

struct ParadigmSample;  // data.hpp

/// One word form as a sequence of phoneme tokens (diacritics already merged
/// into their base by the loader).
struct SegmentedForm {
    std::vector<std::string> segments;

    bool empty() const { return segments.empty(); }
    bool operator==(const SegmentedForm&) const = default;
};

enum class NgramMode { concat, set };

struct EncodingConfig {
    int n = 3;                        ///< window length
    bool boundary_padding = true;     ///< flank forms with one boundary symbol per side
    std::string boundary_symbol = "#";
    NgramMode mode = NgramMode::concat;

    bool operator==(const EncodingConfig&) const = default;
};

/// Column ordering for a feature space. `observation` follows the cell list
/// and then first observation among the samples; `sorted` is a canonical
/// order that depends only on the set of observed features, so it is
/// unaffected by sample order.
enum class ColumnOrder { observation, sorted };

/// A feature column: a window of phoneme tokens, bound to a paradigm cell in
/// concat mode (cell is empty in set mode).
struct FeatureColumn {
    std::string cell;
    std::vector<std::string> gram;

    bool operator==(const FeatureColumn&) const = default;
};

/// All n-gram windows of a form, in order of first occurrence, duplicates
/// collapsed. With padding the token sequence is flanked by one boundary
/// symbol per side before sliding the window; without padding, sequences
/// shorter than n yield no windows.
std::vector<std::vector<std::string>> extract_ngrams(const SegmentedForm& form,
                                                     const EncodingConfig& config);

/// Ordered mapping from observed features to vector columns. Immutable once
/// built; encode() is pure, so encoding different samples against one space
/// can run on any number of threads.
class FeatureSpace {
public:
    FeatureSpace() = default;

    std::size_t width() const { return columns_.size(); }
    std::span<const FeatureColumn> columns() const { return columns_; }
    const FeatureColumn& column(std::size_t i) const { return columns_.at(i); }
    const EncodingConfig& config() const { return config_; }

    /// Column index for (cell, gram), or -1 when the feature is not in the
    /// space. Pass an empty cell in set mode.
    int find(const std::string& cell, const std::vector<std::string>& gram) const;

    // Text table: one line per column. Escaping rules in the README.
    void save(std::ostream& out) const;
    static FeatureSpace load(std::istream& in);
    void save_file(const std::string& path) const;
    static FeatureSpace load_file(const std::string& path);

private:
    friend FeatureSpace build_feature_space(std::span<const ParadigmSample>,
                                            std::span<const std::string>,
                                            const EncodingConfig&, ColumnOrder);
    void push_column(FeatureColumn col);

    EncodingConfig config_;
    std::vector<FeatureColumn> columns_;
    std::unordered_map<std::string, int> index_;
};

/// Build the feature space from training samples. cell_order fixes the
/// primary column order in concat mode and the cell scan order in set mode.
/// Only observed features become columns, so every column is active for at
/// least one training sample. Throws DataError on an empty sample list and
/// ConfigError when the boundary symbol collides with a phoneme token.
FeatureSpace build_feature_space(std::span<const ParadigmSample> samples,
                                 std::span<const std::string> cell_order,
                                 const EncodingConfig& config,
                                 ColumnOrder order = ColumnOrder::observation);

/// Project a sample onto a feature space: bit i is set iff the sample
/// exhibits column i. Features absent from the space are dropped, so a
/// sample sharing nothing with the space yields an all-zero vector (callers
/// must reject those before clustering).
BitVector encode(const ParadigmSample& sample, const FeatureSpace& space);

}  // namespace artclust
