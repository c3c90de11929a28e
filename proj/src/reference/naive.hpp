#pragma once

#include <cstdint>
#include <vector>

// Deliberately plain, serial implementations used as ground truth by the test
// suites and as the comparison side of the benchmark. Nothing here shares code
// with the optimized library: templates are byte vectors, searches are linear
// scans, and the metric formulas are evaluated term by term.

namespace artclust::ref {

struct NaiveArt1Result {
    std::vector<std::size_t> assignments;
    std::vector<std::vector<std::uint8_t>> templates;
};

/// One-pass incremental clustering of binary byte vectors with a vigilance
/// threshold: each sample is tried against categories in order of decreasing
/// bottom-up response; the first one whose template overlaps at least
/// `vigilance` of the sample's set bits absorbs it (template := intersection),
/// otherwise a fresh category is created from the sample itself.
NaiveArt1Result naive_art1_fit(const std::vector<std::vector<std::uint8_t>>& samples,
                               double vigilance, double learning_param);

/// Adjusted Rand index by explicit enumeration of all element pairs.
double naive_ari(const std::vector<int>& a, const std::vector<int>& b);

/// Adjusted mutual information evaluated directly: plug-in MI and entropies,
/// and the expected-MI sum over the hypergeometric null with exact factorials.
/// Only valid for small n (factorials are held in doubles).
double naive_ami(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace artclust::ref
