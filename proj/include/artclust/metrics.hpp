#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "artclust/errors.hpp"

namespace artclust {

/// A flat clustering: one opaque label per sample, aligned with the sample
/// order. Metrics are invariant under relabeling.
struct Clustering {
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
    int n_clusters() const;

    static Clustering from_labels(std::vector<int> labels);
    static Clustering from_sizes(std::span<const std::size_t> category_ids);
    /// Dense ids by first appearance.
    static Clustering from_strings(std::span<const std::string> labels);

    /// Canonical form: relabeled to dense ids in first-appearance order. Two
    /// clusterings describe the same partition iff their canonical label
    /// vectors are equal.
    std::vector<int> canonical() const;
};

bool same_partition(const Clustering& a, const Clustering& b);

/// Cross-tabulation of two clusterings of the same samples.
struct ContingencyTable {
    std::vector<std::vector<std::int64_t>> counts;  ///< [cluster of a][cluster of b]
    std::vector<std::int64_t> row_sums;
    std::vector<std::int64_t> col_sums;
    std::int64_t total = 0;

    static ContingencyTable from(const Clustering& a, const Clustering& b);
};

/// Chance-adjusted pair-counting agreement: 1 for identical partitions, 0 in
/// expectation for independent random labelings, negative for worse than
/// chance. When the index denominator degenerates (both partitions
/// all-singletons or both one single cluster), returns 1 for identical
/// partitions and 0 otherwise.
double adjusted_rand_index(const Clustering& a, const Clustering& b);

/// Chance-adjusted mutual information with the arithmetic-mean entropy
/// normalizer and the exact hypergeometric expected-MI term. Degenerate
/// normalizer: 1 if the partitions are identical, else 0.
double adjusted_mutual_information(const Clustering& a, const Clustering& b);

}  // namespace artclust
