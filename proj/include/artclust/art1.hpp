#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "artclust/bitvector.hpp"
#include "artclust/errors.hpp"

namespace artclust {

struct Art1Config {
    double vigilance = 0.0;       ///< match threshold in [0, 1]; low merges, high splits
    double learning_param = 2.0;  ///< bottom-up scaling, must be > 1
};

struct TraceStep {
    std::size_t category;
    double activation;
    double match;
};

/// Record of one hypothesis search: every category tested (in descending
/// activation order, ties by ascending id) with its activation and match,
/// plus where the sample ended up.
struct AssignmentTrace {
    std::size_t chosen_category = 0;
    std::vector<TraceStep> tested;
    bool created_new = false;
};

struct MatchResult {
    BitVector overlap;  ///< bitwise AND of input and template
    double match;       ///< |overlap| / |x|
};

/// Overlap between an input and a category template and the matched fraction
/// of the input's set bits. Throws ZeroInputError when |x| = 0 (the fraction
/// would be undefined) and DimensionError on width mismatch.
MatchResult match_score(const BitVector& x, const BitVector& tmpl);

/// Incremental clustering network over fixed-width binary vectors.
///
/// Categories are created on demand, never removed. Each category holds a
/// binary template (the intersection of every sample it has absorbed) and a
/// real-valued bottom-up weight row that is always the template scaled by
/// L / (L - 1 + |template|). Because the row is uniform over the template's
/// support, activations are computed as that scale times the popcount of the
/// input/template intersection; only the scale per category is stored.
///
/// A network instance is mutated by one logical thread during training.
/// infer_one is const and safe to call concurrently on a frozen network.
class Art1Network {
public:
    /// width = 0 leaves the width open; it is adopted from the first sample.
    explicit Art1Network(Art1Config config, std::size_t width = 0);

    std::size_t width() const { return width_; }
    std::size_t n_categories() const { return templates_.size(); }
    const Art1Config& config() const { return config_; }

    /// Bottom-up response of every category to x. Empty network: empty list.
    std::vector<double> activation(const BitVector& x) const;

    /// One training presentation. Candidates are tested in order of
    /// descending activation (ties: lowest id); the first whose match reaches
    /// the vigilance absorbs the sample (template := overlap, scale refreshed).
    /// If none passes, a new category is appended with template = x.
    /// Exactly one category's weights change.
    std::pair<std::size_t, AssignmentTrace> learn_one(const BitVector& x);

    /// learn_one over the samples in order; returns the category id each
    /// sample received at the moment it was presented. Deterministic for a
    /// fixed order.
    std::vector<std::size_t> fit(std::span<const BitVector> samples);

    /// Frozen assignment: same search as learn_one but no weight updates and
    /// no category creation. If no category passes the vigilance, the one
    /// with the highest match wins (ties: lowest id).
    std::pair<std::size_t, AssignmentTrace> infer_one(const BitVector& x) const;

    /// Category templates in id order.
    const std::vector<BitVector>& templates() const { return templates_; }

    /// Materialized bottom-up weight row of category j.
    std::vector<double> bottom_up(std::size_t j) const;

    double bottom_up_scale(std::size_t j) const { return bu_scale_.at(j); }

    // Snapshot: versioned little-endian binary stream; bottom-up scales are
    // implied by the templates and rebuilt on load. Layout documented in the
    // README.
    void save(std::ostream& out) const;
    static Art1Network load(std::istream& in);
    void save_file(const std::string& path) const;
    static Art1Network load_file(const std::string& path);

private:
    struct Candidate {
        std::size_t category;
        std::size_t overlap;
        double activation;
    };
    // all categories scored against x, sorted (activation desc, id asc)
    std::vector<Candidate> ranked_candidates(const BitVector& x) const;
    void check_input(const BitVector& x, std::size_t norm) const;

    Art1Config config_;
    std::size_t width_;
    std::vector<BitVector> templates_;
    std::vector<double> bu_scale_;
};

}  // namespace artclust
